#include "gausscrit/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "gausscrit/criteria.hpp"
#include "gausscrit/errors.hpp"
#include "gausscrit/quadrature.hpp"
#include "parallel.hpp"

namespace gausscrit {
namespace {

// Comparison rule for the convergence check; strictly coarser for every
// admissible order (8 -> 6, 64 -> 48).
int reduced_order(int order) {
    return (3 * order) / 4;
}

// Bivariate density exp(-u^2/A - v^2/B) / (pi sqrt(A B)) in the principal
// frame u = (q1 + q2)/sqrt2, v = (q1 - q2)/sqrt2 of the (q1, q2) marginal.
struct PrincipalMarginal {
    double var_u;  // A
    double var_v;  // B

    double density(double u, double v) const {
        return std::exp(-u * u / var_u - v * v / var_v) / (std::numbers::pi * std::sqrt(var_u * var_v));
    }
    double sigma_u() const { return std::sqrt(0.5 * var_u); }
    double sigma_v() const { return std::sqrt(0.5 * var_v); }
};

PrincipalMarginal principal_marginal(const CovarianceMatrix& gamma) {
    // Integrating W over p1, p2 leaves a Gaussian in (q1, q2) with the same
    // exponent convention and the (q1, q2) sub-block of gamma.
    const double m11 = gamma(0, 0);
    const double m22 = gamma(2, 2);
    const double m12 = gamma(0, 2);
    if (std::abs(m11 - m22) > 1e-12 * std::max(1.0, std::abs(m11))) {
        throw ValidationError("quadrant integration expects equal q1 and q2 variances");
    }
    return {m11 + m12, m11 - m12};
}

// Integral over the wedge {t > 0, |s| < t} of density(map(t, s)). The inner
// window is clipped to extent*sigma_inner and the outer range is split where
// the clipping starts, so a narrow inner Gaussian inside a wide outer one is
// resolved on both panels.
template <typename Map>
double wedge_integral(const GaussLegendreRule& rule, double sigma_outer, double sigma_inner, double extent,
                      Map&& density_at) {
    const double inner_cap = extent * sigma_inner;
    const double outer_max = extent * sigma_outer;

    auto outer_integrand = [&](double t) {
        const double half = std::min(t, inner_cap);
        return integrate(rule, -half, half, [&](double s) { return density_at(t, s); });
    };

    if (inner_cap < outer_max) {
        return integrate(rule, 0.0, inner_cap, outer_integrand) +
               integrate(rule, inner_cap, outer_max, outer_integrand);
    }
    return integrate(rule, 0.0, outer_max, outer_integrand);
}

double quadrant_sum(const PrincipalMarginal& m, const GaussLegendreRule& rule, double extent) {
    const double su = m.sigma_u();
    const double sv = m.sigma_v();

    // q1 > 0, q2 > 0  <=>  u > |v|
    const double pp = wedge_integral(rule, su, sv, extent, [&](double t, double s) { return m.density(t, s); });
    // q1 < 0, q2 < 0  <=>  u < -|v|
    const double mm = wedge_integral(rule, su, sv, extent, [&](double t, double s) { return m.density(-t, s); });
    // q1 > 0, q2 < 0  <=>  v > |u|
    const double pm = wedge_integral(rule, sv, su, extent, [&](double t, double s) { return m.density(s, t); });
    // q1 < 0, q2 > 0  <=>  v < -|u|
    const double mp = wedge_integral(rule, sv, su, extent, [&](double t, double s) { return m.density(s, -t); });

    return (pp + mm) - (pm + mp);
}

double normalization_at_order(const WignerFunction& w, const Eigen::Matrix4d& axes,
                              const std::array<double, 4>& half_widths, const GaussLegendreRule& rule) {
    const std::size_t n = rule.order();
    // Pre-scale nodes and weights per principal axis.
    std::array<std::vector<double>, 4> x;
    std::array<std::vector<double>, 4> wt;
    for (int k = 0; k < 4; ++k) {
        x[k].resize(n);
        wt[k].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[k][i] = half_widths[k] * rule.nodes[i];
            wt[k][i] = half_widths[k] * rule.weights[i];
        }
    }
    double total = 0.0;
    for (std::size_t i0 = 0; i0 < n; ++i0) {
        double s1 = 0.0;
        for (std::size_t i1 = 0; i1 < n; ++i1) {
            double s2 = 0.0;
            for (std::size_t i2 = 0; i2 < n; ++i2) {
                double s3 = 0.0;
                for (std::size_t i3 = 0; i3 < n; ++i3) {
                    const Eigen::Vector4d y(x[0][i0], x[1][i1], x[2][i2], x[3][i3]);
                    s3 += wt[3][i3] * w(axes * y);
                }
                s2 += wt[2][i2] * s3;
            }
            s1 += wt[1][i1] * s2;
        }
        total += wt[0][i0] * s1;
    }
    return total;
}

double uniform(std::mt19937_64& gen, double lo, double hi) {
    const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

}  // namespace

void validate(const QuadratureSpec& spec) {
    if (spec.order < 8) {
        throw ValidationError(fmt::format("quadrature order must be >= 8, got {}", spec.order));
    }
    if (!std::isfinite(spec.extent_sigmas) || spec.extent_sigmas < 6.0) {
        throw ValidationError(fmt::format("quadrature extent must be >= 6 sigmas, got {}", spec.extent_sigmas));
    }
}

double quad_correlator_xx(const StateParams& params, const QuadratureSpec& spec) {
    validate(spec);
    const PrincipalMarginal marginal = principal_marginal(covariance_homogeneous(params));

    const double fine = quadrant_sum(marginal, gauss_legendre(spec.order), spec.extent_sigmas);
    const double coarse = quadrant_sum(marginal, gauss_legendre(reduced_order(spec.order)), spec.extent_sigmas);
    const double delta = std::abs(fine - coarse);
    if (delta > kConvergenceTolerance) {
        throw NonConvergenceError(
            fmt::format("xx quadrature did not converge at r={} phi={} p={}: orders {} and {} differ by {:.3g}",
                        params.r(), params.phi(), params.p(), spec.order, reduced_order(spec.order), delta),
            delta);
    }
    return fine;
}

double zz_from_wigner(const CovarianceMatrix& gamma) {
    const WignerFunction w(gamma);
    return std::numbers::pi * std::numbers::pi * w(Eigen::Vector4d::Zero());
}

double wigner_normalization(const CovarianceMatrix& gamma, const QuadratureSpec& spec) {
    validate(spec);
    const WignerFunction w(gamma);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(gamma.matrix());
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
        throw ValidationError("normalization needs a positive-definite covariance");
    }
    // W ~ exp(-y_k^2 / lambda_k) along each principal axis: sigma_k = sqrt(lambda_k / 2).
    std::array<double, 4> half_widths{};
    for (int k = 0; k < 4; ++k) {
        half_widths[k] = spec.extent_sigmas * std::sqrt(0.5 * eig.eigenvalues()(k));
    }
    const Eigen::Matrix4d axes = eig.eigenvectors();

    const double fine = normalization_at_order(w, axes, half_widths, gauss_legendre(spec.order));
    const double coarse = normalization_at_order(w, axes, half_widths, gauss_legendre(reduced_order(spec.order)));
    const double delta = std::abs(fine - coarse);
    if (delta > kConvergenceTolerance) {
        throw NonConvergenceError(
            fmt::format("normalization quadrature did not converge: orders {} and {} differ by {:.3g}", spec.order,
                        reduced_order(spec.order), delta),
            delta);
    }
    return fine;
}

std::vector<OracleSample> draw_samples(std::uint64_t seed, int count) {
    if (count < 0) {
        throw ValidationError("sample count must be non-negative");
    }
    std::mt19937_64 gen(seed);
    std::vector<OracleSample> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        OracleSample s{};
        s.r = uniform(gen, 0.0, 3.0);
        s.phi = uniform(gen, 0.0, std::numbers::pi);
        s.p = uniform(gen, 0.05, 1.0);
        s.theta = uniform(gen, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
        out.push_back(s);
    }
    return out;
}

VerifyReport run_verification(const VerifyConfig& config) {
    if (config.samples < 1) {
        throw ValidationError("verification needs at least one sample");
    }
    if (!(config.tol > 0.0)) {
        throw ValidationError("verification tolerance must be positive");
    }
    validate(config.spec);

    const auto samples = draw_samples(config.seed, config.samples);

    struct Row {
        double xx = 0.0;
        double zz = 0.0;
        std::optional<double> norm;
        bool theta_agrees = true;
        std::optional<std::string> error;
    };
    std::vector<Row> rows(samples.size());

    // Normalization is a 4D integral; run it on the first few samples with
    // moderate squeezing only.
    std::vector<bool> wants_norm(samples.size(), false);
    int budget = config.normalization_checks;
    for (std::size_t i = 0; i < samples.size() && budget > 0; ++i) {
        if (samples[i].r <= 2.0) {
            wants_norm[i] = true;
            --budget;
        }
    }

    detail::parallel_for(samples.size(), config.threads, [&](std::size_t i) {
        const OracleSample& s = samples[i];
        const StateParams params(s.r, s.phi, s.p);
        Row& row = rows[i];
        try {
            row.xx = std::abs(quad_correlator_xx(params, config.spec) - correlator_xx(params));
            const auto gamma = covariance_homogeneous(params);
            row.zz = std::abs(zz_from_wigner(gamma) - purity_of(gamma));
            if (wants_norm[i]) {
                row.norm = std::abs(wigner_normalization(gamma, {48, config.spec.extent_sigmas}) - 1.0);
            }
            const auto rotated = apply_congruence(build_partition_transform({s.theta}), covariance_factorized(params));
            row.theta_agrees =
                simon_separability(rotated).separable == is_separable_theta(params, {s.theta}).separable;
        } catch (const NonConvergenceError& e) {
            row.error = e.what();
        }
    });

    VerifyReport report;
    report.seed = config.seed;
    report.samples = config.samples;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        const OracleSample& s = samples[i];
        if (row.error) {
            report.failures.push_back({*row.error, s, std::numeric_limits<double>::infinity()});
            continue;
        }
        report.max_xx_deviation = std::max(report.max_xx_deviation, row.xx);
        report.max_zz_deviation = std::max(report.max_zz_deviation, row.zz);
        if (row.xx > config.tol) {
            report.failures.push_back({"xx quadrature vs closed form", s, row.xx});
        }
        if (row.zz > config.tol) {
            report.failures.push_back({"zz from Wigner vs purity", s, row.zz});
        }
        if (row.norm) {
            ++report.normalization_checked;
            report.max_normalization_deviation = std::max(report.max_normalization_deviation, *row.norm);
            if (*row.norm > config.tol) {
                report.failures.push_back({"Wigner normalization", s, *row.norm});
            }
        }
        ++report.theta_checked;
        if (!row.theta_agrees) {
            ++report.theta_mismatches;
            report.failures.push_back({"block-determinant vs partition-angle separability", s, 1.0});
        }
    }
    return report;
}

}  // namespace gausscrit
