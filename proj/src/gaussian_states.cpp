#include "gausscrit/gaussian_states.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>
#include <fmt/format.h>

#include "gausscrit/errors.hpp"

namespace gausscrit {
namespace {

void check_squeezing(double r) {
    if (!std::isfinite(r) || r < 0.0 || r > kMaxSqueezing) {
        throw ValidationError(fmt::format("squeezing r must lie in [0, {}], got {}", kMaxSqueezing, r));
    }
}

void check_purity(double p) {
    if (!std::isfinite(p) || p < kMinPurity || p > 1.0) {
        throw ValidationError(fmt::format("purity p must lie in [{}, 1], got {}", kMinPurity, p));
    }
}

}  // namespace

double reduce_angle(double phi) {
    if (!std::isfinite(phi)) {
        throw ValidationError("squeezing angle phi must be finite");
    }
    double reduced = std::fmod(phi, std::numbers::pi);
    if (reduced < 0.0) {
        reduced += std::numbers::pi;
    }
    // fmod of a tiny negative angle can round back up to exactly pi.
    return reduced >= std::numbers::pi ? 0.0 : reduced;
}

StateParams::StateParams(double r, double phi, double p) : r_(r), phi_(reduce_angle(phi)), p_(p) {
    check_squeezing(r);
    check_purity(p);
}

CovarianceMatrix covariance_two_mode(double r, double phi) {
    check_squeezing(r);
    const double angle = 2.0 * reduce_angle(phi);
    const double ch = std::cosh(2.0 * r);
    const double sh = std::sinh(2.0 * r);
    const double c = std::cos(angle);
    const double s = std::sin(angle);

    Matrix4 m;
    // clang-format off
    m << ch,       0.0,     -sh * c,  -sh * s,
         0.0,      ch,      -sh * s,   sh * c,
        -sh * c,  -sh * s,   ch,       0.0,
        -sh * s,   sh * c,   0.0,      ch;
    // clang-format on
    return CovarianceMatrix(m);
}

CovarianceMatrix covariance_homogeneous(const StateParams& params) {
    const Matrix4 pure = covariance_two_mode(params.r(), params.phi()).matrix();
    return CovarianceMatrix(pure / std::sqrt(params.p()));
}

CovarianceMatrix covariance_factorized(const StateParams& params) {
    const double ch = std::cosh(2.0 * params.r());
    const double sh = std::sinh(2.0 * params.r());
    const double c = std::cos(2.0 * params.phi());
    const double s = std::sin(2.0 * params.phi());
    const double scale = 1.0 / std::sqrt(params.p());

    const double qq = (ch - c * sh) * scale;
    const double qp = -s * sh * scale;
    const double pp = (ch + c * sh) * scale;

    Matrix4 m = Matrix4::Zero();
    m(0, 0) = m(2, 2) = qq;
    m(0, 1) = m(1, 0) = m(2, 3) = m(3, 2) = qp;
    m(1, 1) = m(3, 3) = pp;
    return CovarianceMatrix(m);
}

double purity_of(const CovarianceMatrix& gamma) {
    const double det = gamma.determinant();
    if (!(det > 0.0)) {
        throw ValidationError(fmt::format("covariance determinant {} is not positive", det));
    }
    return 1.0 / std::sqrt(det);
}

WignerFunction::WignerFunction(const CovarianceMatrix& gamma) {
    Eigen::FullPivLU<Matrix4> lu(gamma.matrix());
    const double det = gamma.determinant();
    if (!lu.isInvertible() || !(det > 0.0)) {
        throw ValidationError("Wigner function needs a positive-definite covariance");
    }
    inverse_ = lu.inverse();
    norm_ = 1.0 / (std::numbers::pi * std::numbers::pi * std::sqrt(det));
}

double WignerFunction::operator()(const Eigen::Vector4d& r) const {
    return norm_ * std::exp(-r.dot(inverse_ * r));
}

double wigner_density(const CovarianceMatrix& gamma, const PhaseVector& r) {
    return WignerFunction(gamma)(r);
}

AxesParams params_to_axes(double r, double p) {
    check_squeezing(r);
    check_purity(p);
    const double scale = std::pow(p, -0.25);
    return {std::exp(r) * scale, std::exp(-r) * scale};
}

SqueezingPurity axes_to_params(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > 0.0)) {
        throw ValidationError(fmt::format("axes must be finite and positive, got a={} b={}", a, b));
    }
    if (a < b) {
        throw ValidationError(fmt::format("semi-major axis a={} is smaller than semi-minor b={}", a, b));
    }
    if (a * b < 1.0) {
        throw ValidationError(fmt::format("a*b={} < 1 corresponds to purity above one", a * b));
    }
    const SqueezingPurity out{0.5 * std::log(a / b), 1.0 / (a * a * b * b)};
    check_squeezing(out.r);
    check_purity(out.p);
    return out;
}

}  // namespace gausscrit
