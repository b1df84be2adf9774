#pragma once

// Shared dense linear algebra helpers on top of Eigen.

#include <complex>
#include <random>

#include <Eigen/Dense>

namespace mk {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

using Rng = std::mt19937_64;

/// Default relative singular-value threshold used by every rank decision.
inline constexpr double kRankThreshold = 1e-7;

/// Singular values of `a` at or below `rel_tol * sigma_max` count as zero.
int numerical_rank(const RealMatrix& a, double rel_tol = kRankThreshold);

/// Orthonormal basis (as columns) of ker(a), same threshold semantics as numerical_rank.
/// `a` has `cols` columns; an empty `a` yields the identity.
RealMatrix null_space(const RealMatrix& a, int cols, double rel_tol = kRankThreshold);

/// Classical adjoint by cofactors; well defined for singular input.
RealMatrix adjugate(const RealMatrix& a);

/// Angle mapped into (-pi, pi].
double wrap_angle(double angle);

RealMatrix random_orthogonal(int n, Rng& rng);
ComplexMatrix random_unitary(int n, Rng& rng);
ComplexMatrix random_special_unitary(int n, Rng& rng);

/// exp of a square complex matrix.
ComplexMatrix matrix_exp(const ComplexMatrix& a);

/// Max-abs entry of u*u - I.
double unitarity_defect(const ComplexMatrix& u);

}  // namespace mk
