#pragma once

// Poisson geometry on coordinate cotangent spaces R^{2N} = T*R^N.
//
// Points are laid out (x^1..x^N, y_1..y_N). The bracket convention is chosen so
// that X_H = {H, .} reproduces x' = dH/dy, y' = -dH/dx:
//
//   {f, g} = sum_i ( df/dy_i dg/dx^i - df/dx^i dg/dy_i ).

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "maslovkit/linalg.hpp"

namespace mk::poisson {

struct ScalarField {
  int arity = 0;  // 2N
  std::function<double(const RealVector&)> value;
  std::function<RealVector(const RealVector&)> analytic_gradient;  // optional
  std::string label;

  double operator()(const RealVector& p) const { return value(p); }
};

inline constexpr double kDefaultRelStep = 1e-5;

/// Analytic gradient when advertised, otherwise central_difference_gradient.
RealVector gradient(const ScalarField& f, const RealVector& p, double rel_step = kDefaultRelStep);

/// Central differences with step rel_step * max(1, |p_i|) per coordinate.
RealVector central_difference_gradient(const ScalarField& f, const RealVector& p,
                                       double rel_step = kDefaultRelStep);

/// Hamiltonian vector of a function from its gradient: (dH/dy, -dH/dx).
RealVector hamiltonian_vector(const RealVector& grad);

double canonical_bracket(const ScalarField& f, const ScalarField& g, const RealVector& p);
double canonical_bracket(const RealVector& grad_f, const RealVector& grad_g);

/// Common zero set of finitely many constraint functions.
struct ConstraintSet {
  std::vector<ScalarField> constraints;

  bool empty() const { return constraints.empty(); }
  std::size_t size() const { return constraints.size(); }
  RealVector residuals(const RealVector& p) const;
  double max_residual(const RealVector& p) const;
  /// Rows are constraint gradients.
  RealMatrix jacobian(const RealVector& p) const;
  /// M_ab = {C_a, C_b}.
  RealMatrix bracket_matrix(const RealVector& p) const;
};

inline constexpr double kOnShellTol = 1e-8;

/// {f,g}_D = {f,g} - {f,C_a} (M^-1)_ab {C_b,g}. Throws OffManifold when p violates a
/// constraint by more than `on_shell_tol`, ConstraintDegeneracy when M is singular.
double dirac_bracket(const ScalarField& f, const ScalarField& g, const RealVector& p,
                     const ConstraintSet& constraints, double on_shell_tol = kOnShellTol);

/// Precomputed Dirac projector at a point, for evaluating many brackets at once.
class DiracStructure {
 public:
  DiracStructure(const RealVector& p, const ConstraintSet& constraints,
                 double on_shell_tol = kOnShellTol);
  double bracket(const RealVector& grad_f, const RealVector& grad_g) const;
  /// Dirac-corrected Hamiltonian vector of a function with the given gradient.
  RealVector vector_field(const RealVector& grad_h) const;

 private:
  RealMatrix constraint_grads_;  // rows
  RealMatrix m_inverse_;
};

struct InvolutionReport {
  RealMatrix max_abs;  // (i,j) = max over points of |{f_i, f_j}|
  double overall_max = 0.0;
};

InvolutionReport involution_matrix(const std::vector<ScalarField>& fns,
                                   const std::vector<RealVector>& points,
                                   const ConstraintSet& constraints = {},
                                   double rel_step = kDefaultRelStep);

/// Rank of the gradients of `fns` restricted to the tangent space of the
/// constraint set at p, with the directions in `quotient` (columns) factored out.
int independence_rank(const std::vector<ScalarField>& fns, const RealVector& p,
                      const ConstraintSet& constraints = {}, const RealMatrix& quotient = {},
                      double rel_tol = kRankThreshold, double on_shell_tol = kOnShellTol);

/// Coordinates (columns) of the covectors `covectors` (columns, length d) restricted to
/// ker(constraint_jacobian) with the span of `quotient` (columns) factored out, in an
/// orthonormal basis of that subspace.
RealMatrix restricted_covectors(const RealMatrix& covectors, const RealMatrix& constraint_jacobian,
                                const RealMatrix& quotient = {});

/// Singular values of the projected gradient matrix, largest first; exposes how
/// clear-cut an independence_rank decision is.
RealVector projected_gradient_singular_values(const std::vector<ScalarField>& fns,
                                              const RealVector& p,
                                              const ConstraintSet& constraints = {},
                                              const RealMatrix& quotient = {});

struct Trajectory {
  std::vector<double> times;
  std::vector<RealVector> states;
  std::vector<double> energy_error;         // |H(p_t) - H(p_0)|
  std::vector<double> constraint_residual;  // max_a |C_a(p_t)|

  double max_energy_error() const;
  double max_constraint_residual() const;
};

struct FlowOptions {
  /// Absolute bound on |H(p_t) - H(p_0)|; a step exceeding it aborts with EnergyDrift.
  double energy_drift_bound = 1e-4;
  int projection_iterations = 8;
  double projection_tol = 1e-13;
  double rel_step = kDefaultRelStep;
};

/// Fixed-step classical RK4 on X_H (Dirac-corrected when constraints are given),
/// followed by Gauss-Newton projection back onto the constraint set after every step.
Trajectory hamiltonian_flow(const ScalarField& hamiltonian, const RealVector& p0, double duration,
                            int steps, const ConstraintSet& constraints = {},
                            const FlowOptions& options = {});

/// Phase velocity of the (Dirac-corrected) Hamiltonian flow.
RealVector flow_vector(const ScalarField& hamiltonian, const RealVector& p,
                       const ConstraintSet& constraints = {}, double rel_step = kDefaultRelStep);

/// Diagnostic only: is the Hessian in the fibre variables positive definite at p?
bool fiber_hessian_positive_definite(const ScalarField& hamiltonian, const RealVector& p,
                                     double rel_step = 1e-4);

}  // namespace mk::poisson
