#pragma once

// Commuting integrals of projectively equivalent model metrics on the n-torus
// T^n = (R/Z)^n and the Lagrangian geometry of their Liouville tori.
//
// Model data: periodic eigenvalue functions lambda_i(x_i), strictly separated
// (max lambda_i < min lambda_{i+1}) and positive. Then
//
//   g    = sum Pi_i dx_i^2,         Pi_i  = prod_{j!=i} |lambda_i - lambda_j|
//   gbar = sum rho_i Pi_i dx_i^2,   1/rho_i = lambda_i * lambda_1 ... lambda_n
//   J_tau(x, y) = sum mu_i(tau) y_i^2 / Pi_i,   mu_i(tau) = prod_{j!=i} (lambda_j - tau)

#include <optional>
#include <string>
#include <vector>

#include "maslovkit/linalg.hpp"
#include "maslovkit/maslov.hpp"
#include "maslovkit/poisson.hpp"

namespace mk::projtori {

/// c0 + sum_k (a_k cos 2 pi k x + b_k sin 2 pi k x), period 1.
struct TrigPolynomial {
  double constant = 0.0;
  std::vector<double> cos_coeffs;  // k = 1, 2, ...
  std::vector<double> sin_coeffs;

  double operator()(double x) const;
  double derivative(double x) const;
  bool is_constant() const;

  static TrigPolynomial constant_value(double c) { return TrigPolynomial{c, {}, {}}; }
};

class SeparatedEigenFunctions {
 public:
  /// Validates separation and positivity on a `grid`-point sample of each coordinate
  /// (refined by the critical points). Throws InvalidArgument on violation.
  explicit SeparatedEigenFunctions(std::vector<TrigPolynomial> lambda, int grid = 1024);

  int n() const { return static_cast<int>(lambda_.size()); }
  const TrigPolynomial& lambda(int i) const { return lambda_.at(static_cast<std::size_t>(i)); }
  double lo(int i) const { return lo_.at(static_cast<std::size_t>(i)); }
  double hi(int i) const { return hi_.at(static_cast<std::size_t>(i)); }
  /// Values of lambda_i at its critical points (for a constant lambda_i, the constant).
  const std::vector<double>& critical_values(int i) const {
    return critical_.at(static_cast<std::size_t>(i));
  }

  RealVector values(const RealVector& x) const;
  RealVector derivatives(const RealVector& x) const;

 private:
  std::vector<TrigPolynomial> lambda_;
  std::vector<double> lo_, hi_;
  std::vector<std::vector<double>> critical_;
};

class ModelMetricPair {
 public:
  explicit ModelMetricPair(SeparatedEigenFunctions eig) : eig_(std::move(eig)) {}

  const SeparatedEigenFunctions& eig() const { return eig_; }
  int n() const { return eig_.n(); }

  RealVector pi(const RealVector& x) const;
  RealVector rho(const RealVector& x) const;
  RealMatrix g(const RealVector& x) const;
  RealMatrix gbar(const RealVector& x) const;

 private:
  SeparatedEigenFunctions eig_;
};

/// (det gbar / det g)^{1/(n+1)} gbar^{-1} g for arbitrary metric matrices.
RealMatrix tensor_G(const RealMatrix& g, const RealMatrix& gbar);
RealMatrix tensor_G(const ModelMetricPair& m, const RealVector& x);

/// adj(G - tau).
RealMatrix S_tau(const ModelMetricPair& m, const RealVector& x, double tau);
/// <g S_tau v, v>.
double I_tau(const ModelMetricPair& m, const RealVector& x, const RealVector& v, double tau);
/// Pullback of I_tau through g^{-1}, computed from the tensors.
double J_tau_tensor(const ModelMetricPair& m, const RealVector& x, const RealVector& y, double tau);
/// sum mu_i y_i^2 / Pi_i.
double J_tau_coordinate(const ModelMetricPair& m, const RealVector& x, const RealVector& y,
                        double tau);
/// Coordinate value; throws ConsistencyFailure if the tensor pipeline disagrees by
/// more than 1e-9 relative to the size of the terms.
double J_tau(const ModelMetricPair& m, const RealVector& x, const RealVector& y, double tau);

/// mu_i(tau) = prod_{j!=i} (t_j - tau).
double mu(const RealVector& t, int i, double tau);

/// Phase velocity (x', y') of X_{J_tau} in closed form. The y' component is
/// -lambda_i' dJ/dlambda_i with
///   dJ/dlambda_i = sum_{j!=i} (y_j^2/Pi_j) (dmu_j/dlambda_i - mu_j/(lambda_i - lambda_j))
///                  - (mu_i y_i^2/Pi_i) sum_{k!=i} 1/(lambda_i - lambda_k),
/// which has no pole at tau = lambda_i.
RealVector vector_field_XJ(const ModelMetricPair& m, const RealVector& state, double tau);

/// J_tau as a phase-space field on R^{2n}; the analytic gradient comes from
/// vector_field_XJ unless `analytic` is false.
poisson::ScalarField J_field(const ModelMetricPair& m, double tau, bool analytic = true);
/// 1/2 sum y_i^2 / Pi_i, the geodesic Hamiltonian of g.
poisson::ScalarField geodesic_hamiltonian(const ModelMetricPair& m);

struct PartitionCoefficients {
  std::vector<double> a;
  /// roots_i in [t_i, t_{i+1}] for every i, decided from the inputs alone.
  bool interlacing = false;
};

/// a_i with sum_i a_i mu_i(tau) = sigma(tau) = prod (tau_k - tau), i.e. a_i = sigma(t_i) / mu_i(t_i).
/// They sum to 1 and are all >= 0 exactly when the roots interlace t. Throws
/// InvalidArgument on coincident t or a root count other than n - 1.
PartitionCoefficients partition_coefficients(const std::vector<double>& t, const std::vector<double>& roots);

/// q(tau) = leading * prod_k (roots_k - tau), degree <= n - 1.
struct FirstIntegralPolynomial {
  double leading = 0.0;
  std::vector<double> roots;  // sorted
  bool real_roots = true;
  /// Ascending-power coefficients; only set when built from coefficients with complex roots.
  std::vector<double> raw_coefficients;

  static FirstIntegralPolynomial from_roots(double leading, std::vector<double> roots);
  /// Ascending powers c_0 + c_1 tau + ... ; roots found by a companion-matrix solve.
  static FirstIntegralPolynomial from_coefficients(const std::vector<double>& coeffs);

  int degree() const { return static_cast<int>(roots.size()); }
  double operator()(double tau) const;
};

enum class ImageClass { InteriorDiffeo, Boundary, NontrivialMaslov, Outside };
std::string to_string(ImageClass c);

/// Gaps are (hi_i, lo_{i+1}), ranges [lo_i, hi_i], the image box for root i is
/// [lo_i, hi_{i+1}]. A root in a range makes the level nontrivial when q is a regular
/// value (positive leading coefficient, simple roots, none at a critical value of
/// the adjacent lambdas); otherwise the level is on the boundary.
ImageClass image_membership(const ModelMetricPair& m, const FirstIntegralPolynomial& q);

/// Covector y >= 0 with J_tau(x, y) = q(tau). Throws NoRealSolution when the roots are not
/// interlaced with lambda(x), ConsistencyFailure if the probe check fails.
RealVector liouville_torus_point(const ModelMetricPair& m, const FirstIntegralPolynomial& q,
                                 const RealVector& x);

/// det [mu_j(t_i)] at x.
double nondegeneracy_determinant(const ModelMetricPair& m, const RealVector& x,
                                 const std::vector<double>& probes);

/// n distinct probe values: lo_1 / 2 followed by the gap midpoints.
std::vector<double> default_probes(const ModelMetricPair& m);

/// Tangent plane of the Liouville torus through `state`, spanned by X_{J_t} for t in probes.
maslov::TangentFrame torus_tangent_frame(const ModelMetricPair& m, const RealVector& state,
                                         const std::vector<double>& probes);

struct CoordinateLoop {
  std::optional<maslov::LagrangianLoop> loop;
  std::vector<RealVector> states;
  bool full_circle = true;  // false when the loop folds over an arc of the coordinate circle
};

/// Lift of the i-th coordinate circle through `base` to the level J^{-1}(q). When some
/// a_i vanishes along the circle the lift folds back at the zeros of a_i, with y_i
/// changing sign, giving a closed curve on the torus over an arc.
CoordinateLoop coordinate_loop(const ModelMetricPair& m, const FirstIntegralPolynomial& q, int i,
                               int samples, const RealVector& base);

int coordinate_loop_maslov(const ModelMetricPair& m, const FirstIntegralPolynomial& q, int i,
                           int samples, const RealVector& base);

/// Crossings with the vertical Maslov cycle of the torus tangent planes along an orbit of
/// the geodesic flow through `state`.
std::vector<maslov::CrossingEvent> orbit_crossing_events(const ModelMetricPair& m,
                                                         const RealVector& state, double duration,
                                                         int steps);

}  // namespace mk::projtori
