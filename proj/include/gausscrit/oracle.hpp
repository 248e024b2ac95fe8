#pragma once

// Brute-force phase-space checks of the closed forms. Everything here works
// from the covariance matrix and the Gaussian Wigner function only; nothing
// calls into the closed-form criteria except the verification driver, which
// compares the two.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gausscrit/gaussian_states.hpp"

namespace gausscrit {

struct QuadratureSpec {
    int order = 64;             // Gauss-Legendre nodes per axis (>= 8)
    double extent_sigmas = 10;  // half-width of each axis in standard deviations (>= 6)
};

// Largest allowed disagreement between the requested order and 3/4 of it.
inline constexpr double kConvergenceTolerance = 1e-6;

void validate(const QuadratureSpec& spec);

// <sigma_x^1 sigma_x^2> = integral of sign(q1) sign(q2) against the (q1, q2)
// marginal of the physical-partition Wigner function. The plane is split into
// its four sign quadrants, each integrated separately in the principal frame
// of the marginal. Throws NonConvergenceError if order and 3/4 order differ by
// more than kConvergenceTolerance.
double quad_correlator_xx(const StateParams& params, const QuadratureSpec& spec = {});

// pi^2 W(0), the phase-space average of the Weyl symbol of sigma_z^1 sigma_z^2.
double zz_from_wigner(const CovarianceMatrix& gamma);

// Integral of W over R^4 by tensor-product Gauss-Legendre in the principal
// frame of gamma. Should be 1.
double wigner_normalization(const CovarianceMatrix& gamma, const QuadratureSpec& spec = {48, 10.0});

// Deterministic parameter sampler (mt19937_64 with a fixed
// 53-bit mantissa mapping, so streams are identical across platforms).
struct OracleSample {
    double r;
    double phi;
    double p;
    double theta;
};
std::vector<OracleSample> draw_samples(std::uint64_t seed, int count);

struct VerifyConfig {
    int samples = 100;
    std::uint64_t seed = 42;
    double tol = 1e-6;
    QuadratureSpec spec{};
    int normalization_checks = 8;
    int threads = 0;  // 0 = hardware concurrency
};

struct VerifyFailure {
    std::string check;
    OracleSample sample;
    double deviation;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    int samples = 0;
    double max_xx_deviation = 0.0;
    double max_zz_deviation = 0.0;
    double max_normalization_deviation = 0.0;
    int normalization_checked = 0;
    int theta_checked = 0;
    int theta_mismatches = 0;
    std::vector<VerifyFailure> failures;

    bool passed() const noexcept { return failures.empty(); }
};

VerifyReport run_verification(const VerifyConfig& config);

}  // namespace gausscrit
