#include "maslovkit/poisson.hpp"

#include <algorithm>
#include <cmath>

#include "maslovkit/error.hpp"

namespace mk::poisson {
namespace {

void require_arity(const ScalarField& f, const RealVector& p) {
  if (f.arity != 0 && f.arity != p.size())
    throw Error(ErrorCode::DimensionMismatch, "field '" + f.label + "' arity differs from point");
  if (p.size() % 2 != 0) throw Error(ErrorCode::DimensionMismatch, "phase-space point of odd length");
}

void require_on_shell(const RealVector& p, const ConstraintSet& c, double tol) {
  if (c.empty()) return;
  const double r = c.max_residual(p);
  if (!(r <= tol))
    throw Error(ErrorCode::OffManifold, "constraint residual " + std::to_string(r));
}

RealMatrix invert_bracket_matrix(const RealMatrix& m) {
  Eigen::FullPivLU<RealMatrix> lu(m);
  if (!lu.isInvertible() || numerical_rank(m, 1e-10) < m.rows())
    throw Error(ErrorCode::ConstraintDegeneracy, "constraint bracket matrix is singular");
  return lu.inverse();
}

}  // namespace

RealVector central_difference_gradient(const ScalarField& f, const RealVector& p, double rel_step) {
  require_arity(f, p);
  RealVector g(p.size());
  RealVector q = p;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double h = rel_step * std::max(1.0, std::abs(p(i)));
    q(i) = p(i) + h;
    const double fp = f.value(q);
    q(i) = p(i) - h;
    const double fm = f.value(q);
    q(i) = p(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  if (!g.allFinite()) throw Error(ErrorCode::NonFinite, "gradient of '" + f.label + "'");
  return g;
}

RealVector gradient(const ScalarField& f, const RealVector& p, double rel_step) {
  if (f.analytic_gradient) {
    require_arity(f, p);
    RealVector g = f.analytic_gradient(p);
    if (!g.allFinite()) throw Error(ErrorCode::NonFinite, "gradient of '" + f.label + "'");
    return g;
  }
  return central_difference_gradient(f, p, rel_step);
}

RealVector hamiltonian_vector(const RealVector& grad) {
  const Eigen::Index n = grad.size() / 2;
  RealVector v(grad.size());
  v.head(n) = grad.tail(n);
  v.tail(n) = -grad.head(n);
  return v;
}

double canonical_bracket(const RealVector& gf, const RealVector& gg) {
  if (gf.size() != gg.size()) throw Error(ErrorCode::DimensionMismatch, "gradient lengths differ");
  const Eigen::Index n = gf.size() / 2;
  return gf.tail(n).dot(gg.head(n)) - gf.head(n).dot(gg.tail(n));
}

double canonical_bracket(const ScalarField& f, const ScalarField& g, const RealVector& p) {
  return canonical_bracket(gradient(f, p), gradient(g, p));
}

RealVector ConstraintSet::residuals(const RealVector& p) const {
  RealVector r(static_cast<Eigen::Index>(constraints.size()));
  for (std::size_t a = 0; a < constraints.size(); ++a)
    r(static_cast<Eigen::Index>(a)) = constraints[a].value(p);
  return r;
}

double ConstraintSet::max_residual(const RealVector& p) const {
  if (constraints.empty()) return 0.0;
  return residuals(p).cwiseAbs().maxCoeff();
}

RealMatrix ConstraintSet::jacobian(const RealVector& p) const {
  RealMatrix j(static_cast<Eigen::Index>(constraints.size()), p.size());
  for (std::size_t a = 0; a < constraints.size(); ++a)
    j.row(static_cast<Eigen::Index>(a)) = gradient(constraints[a], p).transpose();
  return j;
}

RealMatrix ConstraintSet::bracket_matrix(const RealVector& p) const {
  const RealMatrix j = jacobian(p);
  const auto m = static_cast<Eigen::Index>(constraints.size());
  RealMatrix b(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index c = 0; c < m; ++c)
      b(a, c) = canonical_bracket(RealVector(j.row(a).transpose()), RealVector(j.row(c).transpose()));
  return b;
}

DiracStructure::DiracStructure(const RealVector& p, const ConstraintSet& constraints,
                               double on_shell_tol) {
  require_on_shell(p, constraints, on_shell_tol);
  if (constraints.empty()) return;
  constraint_grads_ = constraints.jacobian(p);
  m_inverse_ = invert_bracket_matrix(constraints.bracket_matrix(p));
}

double DiracStructure::bracket(const RealVector& gf, const RealVector& gg) const {
  double b = canonical_bracket(gf, gg);
  const Eigen::Index m = constraint_grads_.rows();
  if (m == 0) return b;
  RealVector f_c(m), c_g(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const RealVector ca = constraint_grads_.row(a).transpose();
    f_c(a) = canonical_bracket(gf, ca);
    c_g(a) = canonical_bracket(ca, gg);
  }
  return b - f_c.dot(m_inverse_ * c_g);
}

RealVector DiracStructure::vector_field(const RealVector& gh) const {
  RealVector v = hamiltonian_vector(gh);
  const Eigen::Index m = constraint_grads_.rows();
  if (m == 0) return v;
  RealVector h_c(m);
  for (Eigen::Index a = 0; a < m; ++a)
    h_c(a) = canonical_bracket(gh, RealVector(constraint_grads_.row(a).transpose()));
  const RealVector coeff = m_inverse_.transpose() * h_c;  // sum_a {H,C_a} Minv_ab
  for (Eigen::Index b = 0; b < m; ++b)
    v -= coeff(b) * hamiltonian_vector(constraint_grads_.row(b).transpose());
  return v;
}

double dirac_bracket(const ScalarField& f, const ScalarField& g, const RealVector& p,
                     const ConstraintSet& constraints, double on_shell_tol) {
  const DiracStructure d(p, constraints, on_shell_tol);
  return d.bracket(gradient(f, p), gradient(g, p));
}

InvolutionReport involution_matrix(const std::vector<ScalarField>& fns,
                                   const std::vector<RealVector>& points,
                                   const ConstraintSet& constraints, double rel_step) {
  const auto n = static_cast<Eigen::Index>(fns.size());
  InvolutionReport report{RealMatrix::Zero(n, n), 0.0};
  for (const auto& p : points) {
    const DiracStructure d(p, constraints);
    std::vector<RealVector> grads;
    grads.reserve(fns.size());
    for (const auto& f : fns) grads.push_back(gradient(f, p, rel_step));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double v = std::abs(d.bracket(grads[static_cast<std::size_t>(i)],
                                            grads[static_cast<std::size_t>(j)]));
        report.max_abs(i, j) = std::max(report.max_abs(i, j), v);
        report.max_abs(j, i) = report.max_abs(i, j);
      }
  }
  report.overall_max = n > 0 ? report.max_abs.maxCoeff() : 0.0;
  return report;
}

RealMatrix restricted_covectors(const RealMatrix& covectors, const RealMatrix& constraint_jacobian,
                                const RealMatrix& quotient) {
  const auto dim = static_cast<int>(covectors.rows());
  if (constraint_jacobian.size() > 0 && constraint_jacobian.cols() != dim)
    throw Error(ErrorCode::DimensionMismatch, "constraint jacobian has wrong width");
  RealMatrix tangent = null_space(constraint_jacobian.size() > 0 ? constraint_jacobian : RealMatrix(0, dim), dim);
  if (quotient.size() > 0) {
    if (quotient.rows() != dim)
      throw Error(ErrorCode::DimensionMismatch, "quotient directions have wrong length");
    // Remove the quotient directions (as seen inside the tangent space).
    const RealMatrix in_tangent = tangent.transpose() * quotient;
    const RealMatrix keep = null_space(in_tangent.transpose(), static_cast<int>(tangent.cols()));
    tangent = tangent * keep;
  }
  return tangent.transpose() * covectors;
}

namespace {

RealMatrix projected_gradients(const std::vector<ScalarField>& fns, const RealVector& p,
                               const ConstraintSet& constraints, const RealMatrix& quotient,
                               double on_shell_tol) {
  require_on_shell(p, constraints, on_shell_tol);
  RealMatrix g(p.size(), static_cast<Eigen::Index>(fns.size()));
  for (std::size_t k = 0; k < fns.size(); ++k) g.col(static_cast<Eigen::Index>(k)) = gradient(fns[k], p);
  const RealMatrix jac = constraints.empty() ? RealMatrix(0, p.size()) : constraints.jacobian(p);
  return restricted_covectors(g, jac, quotient);
}

}  // namespace

int independence_rank(const std::vector<ScalarField>& fns, const RealVector& p,
                      const ConstraintSet& constraints, const RealMatrix& quotient, double rel_tol,
                      double on_shell_tol) {
  if (fns.empty()) return 0;
  return numerical_rank(projected_gradients(fns, p, constraints, quotient, on_shell_tol), rel_tol);
}

RealVector projected_gradient_singular_values(const std::vector<ScalarField>& fns,
                                              const RealVector& p,
                                              const ConstraintSet& constraints,
                                              const RealMatrix& quotient) {
  if (fns.empty()) return RealVector();
  const RealMatrix g = projected_gradients(fns, p, constraints, quotient, kOnShellTol);
  return Eigen::JacobiSVD<RealMatrix>(g).singularValues();
}

double Trajectory::max_energy_error() const {
  return energy_error.empty() ? 0.0 : *std::max_element(energy_error.begin(), energy_error.end());
}

double Trajectory::max_constraint_residual() const {
  return constraint_residual.empty()
             ? 0.0
             : *std::max_element(constraint_residual.begin(), constraint_residual.end());
}

RealVector flow_vector(const ScalarField& hamiltonian, const RealVector& p,
                       const ConstraintSet& constraints, double rel_step) {
  const RealVector g = gradient(hamiltonian, p, rel_step);
  if (constraints.empty()) return hamiltonian_vector(g);
  // Intermediate RK stages leave the manifold slightly; evaluate the Dirac field there.
  const DiracStructure d(p, constraints, std::numeric_limits<double>::infinity());
  return d.vector_field(g);
}

namespace {

void project_onto(RealVector& p, const ConstraintSet& c, const FlowOptions& opt) {
  for (int it = 0; it < opt.projection_iterations; ++it) {
    const RealVector r = c.residuals(p);
    if (r.cwiseAbs().maxCoeff() < opt.projection_tol) return;
    const RealMatrix j = c.jacobian(p);
    const RealMatrix jjt = j * j.transpose();
    p -= j.transpose() * jjt.ldlt().solve(r);
  }
}

}  // namespace

Trajectory hamiltonian_flow(const ScalarField& hamiltonian, const RealVector& p0, double duration,
                            int steps, const ConstraintSet& constraints, const FlowOptions& options) {
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "flow needs at least one step");
  require_on_shell(p0, constraints, kOnShellTol);
  const double dt = duration / steps;
  const double h0 = hamiltonian.value(p0);

  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(p0);
  traj.energy_error.push_back(0.0);
  traj.constraint_residual.push_back(constraints.max_residual(p0));

  auto field = [&](const RealVector& p) {
    return flow_vector(hamiltonian, p, constraints, options.rel_step);
  };

  RealVector p = p0;
  for (int s = 1; s <= steps; ++s) {
    const RealVector k1 = field(p);
    const RealVector k2 = field(p + 0.5 * dt * k1);
    const RealVector k3 = field(p + 0.5 * dt * k2);
    const RealVector k4 = field(p + dt * k3);
    p += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!constraints.empty()) project_onto(p, constraints, options);
    if (!p.allFinite()) throw Error(ErrorCode::NonFinite, "state at step " + std::to_string(s));

    const double drift = std::abs(hamiltonian.value(p) - h0);
    if (drift > options.energy_drift_bound)
      throw Error(ErrorCode::EnergyDrift,
                  "drift " + std::to_string(drift) + " at step " + std::to_string(s));
    traj.times.push_back(s * dt);
    traj.states.push_back(p);
    traj.energy_error.push_back(drift);
    traj.constraint_residual.push_back(constraints.max_residual(p));
  }
  return traj;
}

bool fiber_hessian_positive_definite(const ScalarField& hamiltonian, const RealVector& p,
                                     double rel_step) {
  const Eigen::Index n = p.size() / 2;
  RealMatrix hess(n, n);
  auto f = [&](Eigen::Index i, double di, Eigen::Index j, double dj) {
    RealVector q = p;
    q(n + i) += di;
    q(n + j) += dj;
    return hamiltonian.value(q);
  };
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double hi = rel_step * std::max(1.0, std::abs(p(n + i)));
      const double hj = rel_step * std::max(1.0, std::abs(p(n + j)));
      hess(i, j) = (f(i, hi, j, hj) - f(i, hi, j, -hj) - f(i, -hi, j, hj) + f(i, -hi, j, -hj)) /
                   (4.0 * hi * hj);
    }
  const RealMatrix sym = 0.5 * (hess + hess.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym);
  return es.eigenvalues().minCoeff() > 0.0;
}

}  // namespace mk::poisson
