#include "gausscrit/symplectic.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/LU>
#include <fmt/format.h>

#include "gausscrit/errors.hpp"

namespace gausscrit {
namespace {

double max_asymmetry(const Matrix4& m) {
    return (m - m.transpose()).cwiseAbs().maxCoeff();
}

void require_finite(const Matrix4& m, const char* what) {
    if (!m.allFinite()) {
        throw ValidationError(fmt::format("{} has non-finite entries", what));
    }
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(const Matrix4& m) {
    require_finite(m, "covariance matrix");
    const double defect = max_asymmetry(m);
    if (defect > kSymmetryTolerance) {
        throw AsymmetryError(
            fmt::format("covariance matrix is not symmetric (max |g - g^T| = {:.3g})", defect));
    }
    m_ = 0.5 * (m + m.transpose());
}

double CovarianceMatrix::determinant() const {
    using MatrixL = Eigen::Matrix<long double, 4, 4>;
    return static_cast<double>(Eigen::PartialPivLU<MatrixL>(m_.cast<long double>()).determinant());
}

SymplecticTransform SymplecticTransform::inverse() const {
    return SymplecticTransform(m_.inverse());
}

const Matrix4& symplectic_form() {
    static const Matrix4 omega = [] {
        Matrix4 o = Matrix4::Zero();
        o(0, 1) = 1.0;
        o(1, 0) = -1.0;
        o(2, 3) = 1.0;
        o(3, 2) = -1.0;
        return o;
    }();
    return omega;
}

SymplecticTransform build_partition_transform(PartitionAngle theta) {
    const double t = theta.radians;
    if (!std::isfinite(t)) {
        throw ValidationError("partition angle must be finite");
    }
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double c2 = std::cos(2.0 * t);
    const double s2 = std::sin(2.0 * t);

    Matrix4 m;
    // clang-format off
    m <<  c,        0.0,     0.0,     s,
          0.0,      c,      -s,       0.0,
          s * s2,   s * c2,  c * c2, -c * s2,
         -s * c2,   s * s2,  c * s2,  c * c2;
    // clang-format on
    return SymplecticTransform(m);
}

CovarianceMatrix apply_congruence(const SymplecticTransform& t, const CovarianceMatrix& gamma) {
    require_finite(t.matrix(), "transform");
    const Matrix4 out = t.matrix() * gamma.matrix() * t.matrix().transpose();
    require_finite(out, "transformed covariance");
    // T g T^T is symmetric up to rounding of the product; symmetrize before
    // the constructor's tolerance check so large entries do not trip it.
    return CovarianceMatrix(0.5 * (out + out.transpose()));
}

bool is_symplectic(const SymplecticTransform& t, double tol) {
    if (!(tol > 0.0)) {
        throw ValidationError("tolerance must be positive");
    }
    const Matrix4& o = symplectic_form();
    const Matrix4 defect = t.matrix() * o * t.matrix().transpose() - o;
    return defect.allFinite() && defect.cwiseAbs().maxCoeff() <= tol;
}

double physicality_margin(const CovarianceMatrix& gamma) {
    const Eigen::Matrix4cd h =
        gamma.matrix().cast<std::complex<double>>() +
        std::complex<double>(0.0, 1.0) * symplectic_form().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool is_physical_covariance(const Matrix4& gamma, double tol) {
    require_finite(gamma, "covariance matrix");
    const double defect = max_asymmetry(gamma);
    if (defect > tol) {
        throw AsymmetryError(
            fmt::format("covariance matrix is not symmetric (max |g - g^T| = {:.3g})", defect));
    }
    return is_physical_covariance(CovarianceMatrix(0.5 * (gamma + gamma.transpose())), tol);
}

bool is_physical_covariance(const CovarianceMatrix& gamma, double tol) {
    return physicality_margin(gamma) >= -tol;
}

}  // namespace gausscrit
