#pragma once

// Dense 4x4 linear algebra over the two-mode phase space (q1, p1, q2, p2).
//
// Covariances follow gamma_ab = <{R_a, R_b}> with no 1/2 factor, so the vacuum
// is the identity and a state is physical iff gamma + i*Omega is positive
// semidefinite.

#include <Eigen/Core>

namespace gausscrit {

using Matrix2 = Eigen::Matrix2d;
using Matrix4 = Eigen::Matrix4d;

inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr double kSymplecticTolerance = 1e-12;

struct PhaseVector {
    double q1 = 0.0;
    double p1 = 0.0;
    double q2 = 0.0;
    double p2 = 0.0;

    Eigen::Vector4d to_eigen() const { return {q1, p1, q2, p2}; }
};

// Real symmetric 4x4 covariance. Construction rejects non-finite entries and
// asymmetry beyond kSymmetryTolerance, then symmetrizes exactly.
class CovarianceMatrix {
public:
    explicit CovarianceMatrix(const Matrix4& m);

    static CovarianceMatrix identity() { return CovarianceMatrix(Matrix4::Identity()); }

    const Matrix4& matrix() const noexcept { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

    // 2x2 sub-blocks in the (mode 1, mode 2) partition.
    Matrix2 block_a() const { return m_.topLeftCorner<2, 2>(); }
    Matrix2 block_b() const { return m_.bottomRightCorner<2, 2>(); }
    Matrix2 block_c() const { return m_.topRightCorner<2, 2>(); }

    // Partial-pivot LU in extended precision. A 4x4 cofactor expansion loses
    // about eps * cosh(2r)^4 to cancellation on squeezed states.
    double determinant() const;

private:
    Matrix4 m_;
};

// Linear canonical map R -> T R. Not validated on construction; use
// is_symplectic() when the origin of the matrix is untrusted.
class SymplecticTransform {
public:
    explicit SymplecticTransform(const Matrix4& m) : m_(m) {}

    const Matrix4& matrix() const noexcept { return m_; }
    SymplecticTransform inverse() const;

private:
    Matrix4 m_;
};

// Partition angle in radians; 0 is the factorized partition, -pi/4 the
// physical (two-mode squeezed) one.
struct PartitionAngle {
    double radians = 0.0;
};

// Omega = diag(J, J) with J = [[0, 1], [-1, 0]].
const Matrix4& symplectic_form();

// The partition family S(theta) carrying the factorized frame onto the frame
// labelled by theta.
SymplecticTransform build_partition_transform(PartitionAngle theta);

// T gamma T^T. Throws ValidationError on non-finite input.
CovarianceMatrix apply_congruence(const SymplecticTransform& t, const CovarianceMatrix& gamma);

bool is_symplectic(const SymplecticTransform& t, double tol = kSymplecticTolerance);

// Smallest eigenvalue of the Hermitian matrix gamma + i*Omega.
double physicality_margin(const CovarianceMatrix& gamma);

// True iff every eigenvalue of gamma + i*Omega is >= -tol. Throws
// AsymmetryError if the raw matrix is not symmetric within tol.
bool is_physical_covariance(const Matrix4& gamma, double tol = kSymmetryTolerance);
bool is_physical_covariance(const CovarianceMatrix& gamma, double tol = kSymmetryTolerance);

}  // namespace gausscrit
