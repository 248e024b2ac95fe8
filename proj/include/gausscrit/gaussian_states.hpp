#pragma once

#include "gausscrit/symplectic.hpp"

namespace gausscrit {

// Domain limits enforced at every API boundary. Keeps cosh(2r)/sqrt(p) below
// ~1e17 so all derived quantities stay representable.
inline constexpr double kMaxSqueezing = 20.0;
inline constexpr double kMinPurity = 1e-12;

// Squeezing amplitude r, squeezing angle phi and purity p of a Gaussian
// homogeneous state. phi is stored reduced to [0, pi) since only 2*phi enters
// any covariance.
class StateParams {
public:
    // Throws ValidationError for r outside [0, 20], p outside [1e-12, 1] or
    // non-finite values.
    StateParams(double r, double phi, double p);

    double r() const noexcept { return r_; }
    double phi() const noexcept { return phi_; }
    double p() const noexcept { return p_; }

private:
    double r_;
    double phi_;
    double p_;
};

// Semi-axes of the one-mode Wigner ellipse in the factorized frame.
struct AxesParams {
    double a = 1.0;
    double b = 1.0;
};

// Reduce an angle to [0, pi).
double reduce_angle(double phi);

// Pure two-mode squeezed state: diagonal blocks cosh(2r) I, off-diagonal
// blocks -sinh(2r) [[cos2phi, sin2phi], [sin2phi, -cos2phi]].
CovarianceMatrix covariance_two_mode(double r, double phi);

// Two-mode squeezed state degraded by linear decoherence: gamma_2MSS / sqrt(p).
CovarianceMatrix covariance_homogeneous(const StateParams& params);

// The same state in the partition where it factorizes into two identical
// one-mode squeezed blocks.
CovarianceMatrix covariance_factorized(const StateParams& params);

// 1 / sqrt(det gamma). Throws ValidationError if det gamma <= 0.
double purity_of(const CovarianceMatrix& gamma);

// Zero-mean Gaussian Wigner function exp(-R^T gamma^{-1} R) / (pi^2 sqrt(det gamma)).
// Caches the inverse so repeated evaluation (quadrature) is cheap.
class WignerFunction {
public:
    explicit WignerFunction(const CovarianceMatrix& gamma);

    double operator()(const Eigen::Vector4d& r) const;
    double operator()(const PhaseVector& r) const { return (*this)(r.to_eigen()); }

    double peak() const noexcept { return norm_; }

private:
    Matrix4 inverse_;
    double norm_;
};

double wigner_density(const CovarianceMatrix& gamma, const PhaseVector& r);

AxesParams params_to_axes(double r, double p);

struct SqueezingPurity {
    double r = 0.0;
    double p = 1.0;
};

// Inverse of params_to_axes. Throws ValidationError when a < b or a*b < 1,
// or when the resulting (r, p) fall outside the supported domain.
SqueezingPurity axes_to_params(double a, double b);

}  // namespace gausscrit
