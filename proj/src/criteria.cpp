#include "gausscrit/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/LU>
#include <fmt/format.h>

#include "gausscrit/errors.hpp"

namespace gausscrit {
namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

void check_entropy_domain(double x, const char* name) {
    if (std::isnan(x) || x < 1.0) {
        throw std::domain_error(fmt::format("{}(x) requires x >= 1, got {}", name, x));
    }
}

// y log2(y) with the 0 log 0 = 0 limit.
double xlog2x(double y) {
    return y == 0.0 ? 0.0 : y * std::log2(y);
}

}  // namespace

double entropy_f(double x) {
    check_entropy_domain(x, "entropy_f");
    if (std::isinf(x)) {
        return x;
    }
    const double h = 0.5 * (x - 1.0);
    if (x < 3.0) {
        // (1 + h) log2(1 + h) via log1p keeps full precision as x -> 1.
        return (1.0 + h) * std::log1p(h) * kInvLn2 - xlog2x(h);
    }
    // For large x both products grow like x log x and their difference is
    // only log x; regroup as log2(h) + (1 + h) log2(1 + 1/h).
    return std::log2(h) + (1.0 + h) * std::log1p(1.0 / h) * kInvLn2;
}

double entropy_g(double x) {
    check_entropy_domain(x, "entropy_g");
    if (std::isinf(x)) {
        return 0.0;
    }
    if (x < 4.0) {
        return entropy_f(x) - std::log2(0.5 * x) - kInvLn2;
    }
    // The direct difference cancels for large x. With u = 1/x,
    //   g = -(1 / (2 ln 2)) * sum_{k>=1} u^(2k) / (k (2k + 1)),
    // and u^2 <= 1/16 so each term is at least 16x smaller than the last.
    const double u2 = 1.0 / (x * x);
    double sum = 0.0;
    double power = u2;
    for (int k = 1; k < 40; ++k) {
        const double term = power / (k * (2.0 * k + 1.0));
        sum += term;
        if (term <= 1e-18 * sum) {
            break;
        }
        power *= u2;
    }
    return -0.5 * kInvLn2 * sum;
}

double discord_sigma(const StateParams& params) {
    return std::cosh(2.0 * params.r()) / std::sqrt(params.p());
}

double discord(const StateParams& params) {
    const double sigma = discord_sigma(params);
    const double inv_sqrt_p = 1.0 / std::sqrt(params.p());
    const double mixed = (sigma + 1.0 / params.p()) / (sigma + 1.0);
    // All three arguments are >= 1 for valid parameters; entropy_f throws
    // rather than silently producing NaN if that ever fails.
    const double d = entropy_f(sigma) - 2.0 * entropy_f(inv_sqrt_p) + entropy_f(mixed);
    // Rounding can leave a negative residue of order 1e-15 at r = 0.
    return std::max(0.0, d);
}

double discord_asymptotic(double b) {
    if (!std::isfinite(b) || !(b > 0.0)) {
        throw ValidationError(fmt::format("semi-minor axis b must be positive and finite, got {}", b));
    }
    const double two_b2 = 2.0 * b * b;
    return entropy_g(1.0 + two_b2) + std::log1p(1.0 / two_b2) * kInvLn2;
}

double correlator_zz(const StateParams& params) {
    return params.p();
}

double correlator_xx(const StateParams& params) {
    const double sh = std::sinh(2.0 * params.r());
    const double c = std::cos(2.0 * params.phi());
    const double s = std::sin(2.0 * params.phi());
    // arcsin(c tanh 2r) == atan2(c sinh 2r, sqrt(1 + s^2 sinh^2 2r)).
    return -2.0 / std::numbers::pi * std::atan2(c * sh, std::hypot(1.0, s * sh));
}

double bell_expectation(const StateParams& params) {
    return 2.0 * std::hypot(correlator_zz(params), correlator_xx(params));
}

SeparabilityVerdict is_separable_closed(const StateParams& params) {
    const double margin = std::exp(-2.0 * params.r()) - std::sqrt(params.p());
    return {margin >= 0.0, margin};
}

SeparabilityVerdict is_separable_axes(const AxesParams& axes) {
    if (!(axes.a > 0.0) || !(axes.b > 0.0) || !std::isfinite(axes.a) || !std::isfinite(axes.b)) {
        throw ValidationError(fmt::format("ellipse axes must be positive and finite, got a={} b={}", axes.a, axes.b));
    }
    const double margin = (axes.b - 1.0) * (axes.b + 1.0) / (axes.a * axes.b);
    return {margin >= 0.0, margin};
}

SeparabilityVerdict is_separable_theta(const StateParams& params, PartitionAngle theta) {
    if (!std::isfinite(theta.radians)) {
        throw ValidationError("partition angle must be finite");
    }
    const double sp = std::sqrt(params.p());
    const double lhs = (1.0 / sp - sp) * (1.0 / sp - sp);
    const double cross = 2.0 * std::sinh(2.0 * params.r()) * std::sin(2.0 * theta.radians);
    const double margin = lhs - cross * cross;
    return {margin >= 0.0, margin};
}

SeparabilityVerdict simon_separability(const CovarianceMatrix& gamma) {
    const Matrix2 a = gamma.block_a();
    const Matrix2 b = gamma.block_b();
    const Matrix2 c = gamma.block_c();
    Matrix2 j;
    j << 0.0, 1.0, -1.0, 0.0;

    const double det_a = a.determinant();
    const double det_b = b.determinant();
    const double det_c = c.determinant();
    const double trace = (a * j * c * j * b * j * c.transpose() * j).trace();

    const double lhs = det_a * det_b + (std::abs(det_c) - 1.0) * (std::abs(det_c) - 1.0) - trace;
    const double margin = lhs - (det_a + det_b);
    if (!std::isfinite(margin)) {
        throw ValidationError("separability margin is not finite");
    }
    return {margin >= -kSimonTolerance, margin};
}

CriteriaReport evaluate(const StateParams& params) {
    const auto sep = is_separable_closed(params);
    const double bell = bell_expectation(params);
    return CriteriaReport{
        .params = params,
        .axes = params_to_axes(params.r(), params.p()),
        .discord = discord(params),
        .bell = bell,
        .bell_violated = bell > 2.0,
        .sep_margin = sep.margin,
        .separable = sep.separable,
    };
}

}  // namespace gausscrit
