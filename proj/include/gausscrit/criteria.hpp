#pragma once

// Closed-form quantumness criteria for Gaussian homogeneous states:
// Gaussian quantum discord, the pseudo-spin Bell operator and Peres-Horodecki
// separability (closed form, partition family and the general block form).

#include "gausscrit/gaussian_states.hpp"

namespace gausscrit {

// Absolute slack on the general block-determinant separability margin.
inline constexpr double kSimonTolerance = 1e-9;

struct SeparabilityVerdict {
    bool separable = true;
    double margin = 0.0;
};

struct CriteriaReport {
    StateParams params;
    AxesParams axes;
    double discord = 0.0;  // bits
    double bell = 0.0;
    bool bell_violated = false;
    double sep_margin = 0.0;  // exp(-2r) - sqrt(p)
    bool separable = true;
};

// Von Neumann entropy of a one-mode Gaussian with symplectic eigenvalue x, in
// bits. f(1) = 0. Throws std::domain_error for x < 1.
double entropy_f(double x);

// f(x) minus its large-x asymptote log2(x/2) + 1/ln 2. Bounded in (1 - 1/ln 2, 0).
double entropy_g(double x);

// sigma = cosh(2r) / sqrt(p).
double discord_sigma(const StateParams& params);

// D = f(sigma) - 2 f(p^{-1/2}) + f((sigma + 1/p) / (sigma + 1)), in bits.
// Independent of phi.
double discord(const StateParams& params);

// Large-squeezing, low-purity limit of the discord as a function of the
// semi-minor axis only: g(1 + 2b^2) + log2(1 + 1/(2b^2)).
double discord_asymptotic(double b);

// <sigma_z sigma_z> = p.
double correlator_zz(const StateParams& params);

// <sigma_x sigma_x> = -(2/pi) arcsin[cos(2phi) tanh(2r)], evaluated as the
// equivalent arctangent so no clamping is needed near |argument| = 1.
double correlator_xx(const StateParams& params);

// 2 sqrt(<zz>^2 + <xx>^2). Violates local realism iff > 2.
double bell_expectation(const StateParams& params);

// exp(-2r) >= sqrt(p); equality counts as separable.
SeparabilityVerdict is_separable_closed(const StateParams& params);

// The same criterion in ellipse-axes form, b >= 1. The margin
// (b^2 - 1) / (a b) equals exp(-2r) - sqrt(p) but is exact on b = 1.
SeparabilityVerdict is_separable_axes(const AxesParams& axes);

// Separability of the same state in the partition labelled by theta:
// (1/sqrt(p) - sqrt(p))^2 >= 4 sinh^2(2r) sin^2(2theta).
SeparabilityVerdict is_separable_theta(const StateParams& params, PartitionAngle theta);

// General two-mode criterion on an arbitrary covariance:
//   det A det B + (|det C| - 1)^2 - Tr[A J C J B J C^T J] >= det A + det B
// with A, B the diagonal blocks and C the upper-right block. Separable iff
// margin >= -kSimonTolerance.
SeparabilityVerdict simon_separability(const CovarianceMatrix& gamma);

CriteriaReport evaluate(const StateParams& params);

}  // namespace gausscrit
