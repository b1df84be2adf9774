#pragma once

// Momentum maps and commuting integrals upstairs of two families of homogeneous
// 7-manifolds:
//
//  * Witten-Kreck-Stolz spaces, quotients of S^5 x S^3 by a weighted circle. The
//    phase space T*(S^5 x S^3) sits in C^3 x C^3 x C^2 x C^2 and is flattened to R^20
//    in the order (Re x, Im x, Re w, Im w, Re y, Im y, Re z, Im z), positions first.
//
//  * Eschenburg biquotients SU3 / U, using the left trivialization T*SU3 = SU3 x su3.
//    Tangent vectors at (g, x) are pairs (xi, eta) with g' = g xi, x' = eta, and
//    covectors are written in the orthonormal basis of su3 for both slots (16 reals).

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maslovkit/lie.hpp"
#include "maslovkit/linalg.hpp"
#include "maslovkit/poisson.hpp"
#include "maslovkit/topo7.hpp"

namespace mk::homog {

// --- Witten-Kreck-Stolz ------------------------------------------------------

struct SphereCotangentPoint {
  ComplexVector x, y;  // C^3
  ComplexVector w, z;  // C^2

  RealVector to_real() const;
  static SphereCotangentPoint from_real(const RealVector& p);
  /// max of |x*x - 1|, |Re y*x|, |w*w - 1|, |Re z*w|.
  double constraint_residual() const;
};

struct MomentumValue {
  lie::LieElement xi;   // u3
  lie::LieElement eta;  // u2
};

using topo7::WKSPair;

/// 1/2 (x y* - y x*) + 1/2 (w z* - z w*). Throws OffManifold off T*(S^5 x S^3).
MomentumValue psi_G(const SphereCotangentPoint& p, double on_shell_tol = 1e-8);
/// k y*x + l z*w; purely imaginary on shell (asserted to 1e-9).
Complex psi_V(const WKSPair& kl, const SphereCotangentPoint& p, double on_shell_tol = 1e-8);

/// The eight scalars f_1..f_8 of a momentum value; u_b sits in the lower-right corner.
double f_function(int a, const MomentumValue& v);
/// Corner and trace functions on a single 3x3 block (a in {1,2,3,4,5}), and
/// f_9 = Re(i det xi), which is det h for xi = i h.
double f_block(int a, const ComplexMatrix& xi);
double f9(const ComplexMatrix& xi);
/// H_a = f_a o psi_G, evaluated without the on-shell check.
double h_function(int a, const SphereCotangentPoint& p);

poisson::ScalarField h_field(int a);
/// -i psi_V = k H_3 + l H_7 on shell, as a real field.
poisson::ScalarField psi_V_field(const WKSPair& kl);
/// x*x - 1, Re(y*x), w*w - 1, Re(z*w).
poisson::ConstraintSet sphere_constraints();
/// Generator of the weighted circle action z.(x,y,w,z) = (z^k x, z^k y, z^l w, z^l z) at p.
RealVector wks_circle_direction(const WKSPair& kl, const RealVector& p);

/// x = (2/3, 1/3, 2/3), y = (i, -4i, i), w = (3/5, 4/5), z = (4i, -3i).
SphereCotangentPoint wks_base_point();
SphereCotangentPoint random_on_shell_point(Rng& rng);
/// (u3 x, u3 y, u2 w, u2 z).
SphereCotangentPoint act(const ComplexMatrix& u3, const ComplexMatrix& u2, const SphereCotangentPoint& p);

/// |H_5 + H_8 + 1/4 (|y|^2 + |z|^2 - (y*x)^2 - (z*w)^2)|.
double kinetic_identity_residual(const SphereCotangentPoint& p);
/// |H_5 + H_8 + 1/4 (H_3^2 + H_7^2) + 1/4 (|y|^2 + |z|^2)|.
double hprime_identity_residual(const SphereCotangentPoint& p);
/// |psi_V - (i k H_3 + i l H_7)|.
double psi_V_identity_residual(const WKSPair& kl, const SphereCotangentPoint& p);

struct WKSOptions {
  int involution_samples = 10;
  int identity_samples = 50;
  double flow_time = 1.0;
  int flow_steps = 1000;
  std::uint64_t seed = 0;
};

struct WKSReport {
  WKSPair kl;
  RealMatrix involution;  // max |{H_a, H_b}_D| over the samples
  double involution_max = 0.0;
  int rank_all = 0;      // rank of H_1..H_8 on T(T*(S^5 x S^3)) at the base point
  int rank_reduced = 0;  // rank of H_a (a != 3) on psi_V^{-1}(0) modulo the circle
  RealVector singular_values_all;
  RealVector singular_values_reduced;
  double psi_V_at_base = 0.0;
  double kinetic_identity_max = 0.0;
  double hprime_identity_max = 0.0;
  double psi_V_identity_max = 0.0;
  double psi_V_bracket_max = 0.0;  // max_a |{H_a, psi_V}_D|
  double flow_drift_max = 0.0;     // max over a and t of |H_a(t) - H_a(0)|
  double flow_constraint_max = 0.0;
  SphereCotangentPoint base;
};

/// Throws NotCoprime for gcd(k,l) != 1, InvalidArgument for k l = 0.
WKSReport wks_integrable_system(const WKSPair& kl, const WKSOptions& options = {});

// --- Left-trivialized T*SU3 ---------------------------------------------------

class TrivializedCotangentPoint {
 public:
  /// g in SU3 (checked to `tol`), x in su3.
  TrivializedCotangentPoint(ComplexMatrix g, lie::LieElement x, double tol = 1e-8);
  const ComplexMatrix& g() const { return g_; }
  const lie::LieElement& x() const { return x_; }

 private:
  ComplexMatrix g_;
  lie::LieElement x_;
};

/// g x g^{-1}.
lie::LieElement psi_Gplus(const TrivializedCotangentPoint& p);
/// x.
lie::LieElement psi_Gminus(const TrivializedCotangentPoint& p);

struct TrivializedDerivatives {
  lie::LieElement dg;  // left derivative: dF(g exp(t xi), x)/dt = <dg, xi>
  lie::LieElement dx;  // fibre gradient
};

struct TrivializedFunction {
  std::function<double(const TrivializedCotangentPoint&)> value;
  std::function<TrivializedDerivatives(const TrivializedCotangentPoint&)> analytic;  // optional
  std::string label;
};

/// Analytic when available; otherwise central differences along g exp(t xi_k) and x + t xi_k.
TrivializedDerivatives derivatives(const TrivializedFunction& f, const TrivializedCotangentPoint& p,
                                   double rel_step = 1e-5);

/// The canonical bracket in left trivialization,
///   {F, K} = <dg K, dx F> - <dg F, dx K> + <x, [dx F, dx K]>.
/// With it, F o psi_Gminus is Lie-Poisson, F o psi_Gplus is minus Lie-Poisson, and
/// pullbacks through the two maps commute.
double trivialized_bracket(const TrivializedDerivatives& f, const TrivializedDerivatives& k,
                           const lie::LieElement& x);
double trivialized_bracket(const TrivializedFunction& f, const TrivializedFunction& k,
                           const TrivializedCotangentPoint& p);

/// f o psi_Gplus and f o psi_Gminus for f on su3.
TrivializedFunction pull_back_plus(const lie::LieFunction& f);
TrivializedFunction pull_back_minus(const lie::LieFunction& f);
/// f(psi_Gplus, -psi_Gminus) for f on su3 + su3.
TrivializedFunction pull_back_H(const lie::LieFunction& f);

/// 16 coordinates (dg; dx) in the orthonormal su3 basis.
RealVector covector(const TrivializedDerivatives& d);

struct EschenburgU {
  long long k = 0, l = 0, p = 0, q = 0;

  topo7::EschenburgQuartet quartet() const { return {k, l, p, q}; }

  /// (i diag(k, l, -k-l), i diag(p, q, -p-q)).
  lie::ProductElement generator() const;
  /// (h1 g h2^{-1}, h2 x h2^{-1}) with (h1, h2) = exp(angle * generator).
  TrivializedCotangentPoint act(double angle, const TrivializedCotangentPoint& pt) const;
  /// Tangent vector (xi; eta) of the action at pt, 16 coordinates.
  RealVector orbit_direction(const TrivializedCotangentPoint& pt) const;
};

/// Momentum map of the U action, <x, g^{-1} u_+ g - u_->.
TrivializedFunction psi_U(const EschenburgU& u);

/// diag(i, 2i, -3i) + diag(5i, 7i, -12i).
lie::ProductElement default_shift();
/// tr^2 shifted by lambda in {0, 1} and tr^3 by lambda in {0, 1, 2}, on both factors.
lie::ShiftFamily eschenburg_mf_family(const lie::ProductElement& shift);

TrivializedCotangentPoint random_trivialized_point(Rng& rng);

struct EschenburgOptions {
  std::optional<lie::ProductElement> shift;
  std::uint64_t seed = 0;
  int max_draws = 10000;
  int involution_samples = 5;
};

struct EschenburgReport {
  EschenburgU u;
  double involution_max = 0.0;
  int ddim_coalgebra = 0;     // of the MF family on su3 + su3 at psi_H(P)
  int drank_coalgebra = 0;
  int ddim_pulled_back = 0;   // of the pulled-back family at a regular P
  int reduced_rank = 0;       // on psi_U^{-1}(0) modulo the U orbit
  RealVector reduced_singular_values;
  int draws = 0;
  double psi_U_at_sample = 0.0;
};

/// Throws InvalidArgument unless the quartet is admissible, SearchExhausted when no
/// regular sample point turns up within max_draws.
EschenburgReport eschenburg_integral_report(const EschenburgU& u, const EschenburgOptions& options = {});

/// F_{i,+-} = f_i o psi_G+- for i in {1, 2, 4, 5} and det o psi_G+-, keyed "f1+", "f1-", ...,
/// "det+", "det-". The Ad-invariant members (f5, det) agree between the two signs.
std::vector<std::pair<std::string, TrivializedFunction>> su3_integral_functions();
std::map<std::string, double> su3_integral_set(const TrivializedCotangentPoint& p);

}  // namespace mk::homog
