#include "maslovkit/homog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maslovkit/error.hpp"

namespace mk::homog {
namespace {

const Complex kI(0.0, 1.0);
using lie::Flavor;
using lie::LieElement;

const lie::AlgebraBasis& su3_basis() {
  static const lie::AlgebraBasis basis(3, Flavor::SU);
  return basis;
}

ComplexVector slice(const RealVector& p, int re, int im, int len) {
  ComplexVector v(len);
  for (int i = 0; i < len; ++i) v(i) = Complex(p(re + i), p(im + i));
  return v;
}

void put(RealVector& p, const ComplexVector& v, int re, int im) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    p(re + i) = v(i).real();
    p(im + i) = v(i).imag();
  }
}

ComplexMatrix raw_block(const ComplexVector& a, const ComplexVector& b) {
  return 0.5 * (a * b.adjoint() - b * a.adjoint());
}

ComplexMatrix diag_i(long long a, long long b, long long c) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = kI * static_cast<double>(a);
  m(1, 1) = kI * static_cast<double>(b);
  m(2, 2) = kI * static_cast<double>(c);
  return m;
}

// Derivatives of F = f(g x g^-1, s x) given the gradient of f at that point:
// fibre gradient g^-1 a_+ g + s a_-, left derivative [x, g^-1 a_+ g].
TrivializedDerivatives pulled_back(const ComplexMatrix& g, const LieElement& x,
                                   const std::optional<LieElement>& alpha_plus,
                                   const std::optional<LieElement>& alpha_minus, double s) {
  LieElement dx = LieElement::zero(3, Flavor::SU);
  LieElement dg = LieElement::zero(3, Flavor::SU);
  if (alpha_plus) {
    const LieElement beta = lie::adjoint_action(g.adjoint(), *alpha_plus);
    dx = dx + beta;
    dg = lie::commutator(x, beta);
  }
  if (alpha_minus) dx = dx + (*alpha_minus) * s;
  return {dg, dx};
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

}  // namespace

// --- Witten-Kreck-Stolz ------------------------------------------------------

RealVector SphereCotangentPoint::to_real() const {
  RealVector p(20);
  put(p, x, 0, 3);
  put(p, w, 6, 8);
  put(p, y, 10, 13);
  put(p, z, 16, 18);
  return p;
}

SphereCotangentPoint SphereCotangentPoint::from_real(const RealVector& p) {
  if (p.size() != 20) throw Error(ErrorCode::DimensionMismatch, "expected 20 real coordinates");
  return {slice(p, 0, 3, 3), slice(p, 10, 13, 3), slice(p, 6, 8, 2), slice(p, 16, 18, 2)};
}

double SphereCotangentPoint::constraint_residual() const {
  return std::max({std::abs(x.squaredNorm() - 1.0), std::abs(x.dot(y).real()),
                   std::abs(w.squaredNorm() - 1.0), std::abs(w.dot(z).real())});
}

MomentumValue psi_G(const SphereCotangentPoint& p, double on_shell_tol) {
  if (p.x.size() != 3 || p.y.size() != 3 || p.w.size() != 2 || p.z.size() != 2)
    throw Error(ErrorCode::DimensionMismatch, "expected x, y in C^3 and w, z in C^2");
  if (!(p.constraint_residual() <= on_shell_tol))
    throw Error(ErrorCode::OffManifold, "point is not on T*(S^5 x S^3)");
  return {LieElement::project(raw_block(p.x, p.y), Flavor::U),
          LieElement::project(raw_block(p.w, p.z), Flavor::U)};
}

Complex psi_V(const WKSPair& kl, const SphereCotangentPoint& p, double on_shell_tol) {
  if (!(p.constraint_residual() <= on_shell_tol))
    throw Error(ErrorCode::OffManifold, "point is not on T*(S^5 x S^3)");
  // Eigen conjugates the left operand: y*x is y.dot(x).
  const Complex v = static_cast<double>(kl.k) * p.y.dot(p.x) + static_cast<double>(kl.l) * p.z.dot(p.w);
  if (std::abs(v.real()) > 1e-9) throw Error(ErrorCode::OffManifold, "psi_V has a real part");
  return v;
}

double f_block(int a, const ComplexMatrix& xi) {
  const auto n = static_cast<int>(xi.rows());
  switch (a) {
    case 1: return (-kI * xi(n - 1, n - 1)).real();
    case 2: return (-kI * lie::lower_right_corner(xi, 2).trace()).real();
    case 3: return (-kI * xi.trace()).real();
    case 4: {
      const ComplexMatrix c = lie::lower_right_corner(xi, 2);
      return 0.5 * (c * c).trace().real();
    }
    case 5: return 0.5 * (xi * xi).trace().real();
    default: throw Error(ErrorCode::InvalidArgument, "block function index must be 1..5");
  }
}

double f9(const ComplexMatrix& xi) { return (kI * xi.determinant()).real(); }

double f_function(int a, const MomentumValue& v) {
  const ComplexMatrix& xi = v.xi.matrix();
  const ComplexMatrix& eta = v.eta.matrix();
  switch (a) {
    case 1: case 2: case 3: case 4: case 5: return f_block(a, xi);
    case 6: return (-kI * eta(1, 1)).real();
    case 7: return (-kI * eta.trace()).real();
    case 8: return 0.5 * (eta * eta).trace().real();
    default: throw Error(ErrorCode::InvalidArgument, "f index must be 1..8");
  }
}

double h_function(int a, const SphereCotangentPoint& p) {
  const MomentumValue v{LieElement::project(raw_block(p.x, p.y), Flavor::U),
                        LieElement::project(raw_block(p.w, p.z), Flavor::U)};
  return f_function(a, v);
}

poisson::ScalarField h_field(int a) {
  if (a < 1 || a > 8) throw Error(ErrorCode::InvalidArgument, "H index must be 1..8");
  poisson::ScalarField f;
  f.arity = 20;
  f.label = "H" + std::to_string(a);
  f.value = [a](const RealVector& p) { return h_function(a, SphereCotangentPoint::from_real(p)); };
  return f;
}

poisson::ScalarField psi_V_field(const WKSPair& kl) {
  poisson::ScalarField f;
  f.arity = 20;
  f.label = "psi_V";
  f.value = [kl](const RealVector& p) {
    const auto s = SphereCotangentPoint::from_real(p);
    return static_cast<double>(kl.k) * h_function(3, s) + static_cast<double>(kl.l) * h_function(7, s);
  };
  return f;
}

poisson::ConstraintSet sphere_constraints() {
  poisson::ConstraintSet c;
  auto norm_constraint = [](int q0, int len, const char* label) {
    poisson::ScalarField f;
    f.arity = 20;
    f.label = label;
    f.value = [q0, len](const RealVector& p) { return p.segment(q0, len).squaredNorm() - 1.0; };
    f.analytic_gradient = [q0, len](const RealVector& p) {
      RealVector g = RealVector::Zero(20);
      g.segment(q0, len) = 2.0 * p.segment(q0, len);
      return g;
    };
    return f;
  };
  auto orth_constraint = [](int q0, int p0, int len, const char* label) {
    poisson::ScalarField f;
    f.arity = 20;
    f.label = label;
    f.value = [q0, p0, len](const RealVector& p) { return p.segment(q0, len).dot(p.segment(p0, len)); };
    f.analytic_gradient = [q0, p0, len](const RealVector& p) {
      RealVector g = RealVector::Zero(20);
      g.segment(q0, len) = p.segment(p0, len);
      g.segment(p0, len) = p.segment(q0, len);
      return g;
    };
    return f;
  };
  // Re and Im parts of x occupy 0..5, of w 6..9; y 10..15, z 16..19.
  c.constraints.push_back(norm_constraint(0, 6, "|x|^2-1"));
  c.constraints.push_back(orth_constraint(0, 10, 6, "Re(y*x)"));
  c.constraints.push_back(norm_constraint(6, 4, "|w|^2-1"));
  c.constraints.push_back(orth_constraint(6, 16, 4, "Re(z*w)"));
  return c;
}

RealVector wks_circle_direction(const WKSPair& kl, const RealVector& p) {
  auto s = SphereCotangentPoint::from_real(p);
  const double k = static_cast<double>(kl.k);
  const double l = static_cast<double>(kl.l);
  const SphereCotangentPoint d{kI * k * s.x, kI * k * s.y, kI * l * s.w, kI * l * s.z};
  return d.to_real();
}

SphereCotangentPoint wks_base_point() {
  SphereCotangentPoint p;
  p.x = ComplexVector(3);
  p.x << 2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0;
  p.y = ComplexVector(3);
  p.y << kI, -4.0 * kI, kI;
  p.w = ComplexVector(2);
  p.w << 0.6, 0.8;
  p.z = ComplexVector(2);
  p.z << 4.0 * kI, -3.0 * kI;
  return p;
}

SphereCotangentPoint random_on_shell_point(Rng& rng) {
  std::normal_distribution<double> n01;
  auto vec = [&](int len) {
    ComplexVector v(len);
    for (int i = 0; i < len; ++i) v(i) = Complex(n01(rng), n01(rng));
    return v;
  };
  SphereCotangentPoint p;
  p.x = vec(3).normalized();
  p.y = vec(3);
  p.y -= p.x.dot(p.y).real() * p.x;
  p.w = vec(2).normalized();
  p.z = vec(2);
  p.z -= p.w.dot(p.z).real() * p.w;
  return p;
}

SphereCotangentPoint act(const ComplexMatrix& u3, const ComplexMatrix& u2, const SphereCotangentPoint& p) {
  return {u3 * p.x, u3 * p.y, u2 * p.w, u2 * p.z};
}

double kinetic_identity_residual(const SphereCotangentPoint& p) {
  const Complex yx = p.y.dot(p.x);
  const Complex zw = p.z.dot(p.w);
  const double rhs = -0.25 * (p.y.squaredNorm() + p.z.squaredNorm() - (yx * yx).real() - (zw * zw).real());
  return std::abs(h_function(5, p) + h_function(8, p) - rhs);
}

double hprime_identity_residual(const SphereCotangentPoint& p) {
  const double h3 = h_function(3, p);
  const double h7 = h_function(7, p);
  const double lhs = h_function(5, p) + h_function(8, p) + 0.25 * (h3 * h3 + h7 * h7);
  return std::abs(lhs + 0.25 * (p.y.squaredNorm() + p.z.squaredNorm()));
}

double psi_V_identity_residual(const WKSPair& kl, const SphereCotangentPoint& p) {
  const Complex v = psi_V(kl, p);
  const Complex rhs = kI * static_cast<double>(kl.k) * h_function(3, p) +
                      kI * static_cast<double>(kl.l) * h_function(7, p);
  return std::abs(v - rhs);
}

WKSReport wks_integrable_system(const WKSPair& kl, const WKSOptions& opt) {
  if (gcd_ll(kl.k, kl.l) != 1) throw Error(ErrorCode::NotCoprime, "gcd(k, l) != 1");
  if (kl.k == 0 || kl.l == 0) throw Error(ErrorCode::InvalidArgument, "k l must be non-zero");

  WKSReport r;
  r.kl = kl;
  r.base = wks_base_point();
  const auto constraints = sphere_constraints();
  const RealVector base = r.base.to_real();
  if (constraints.max_residual(base) > 1e-12)
    throw Error(ErrorCode::OffManifold, "base point fails the sphere constraints");

  std::vector<poisson::ScalarField> hs;
  for (int a = 1; a <= 8; ++a) hs.push_back(h_field(a));

  Rng rng(opt.seed);
  std::vector<RealVector> samples;
  for (int s = 0; s < opt.involution_samples; ++s) samples.push_back(random_on_shell_point(rng).to_real());
  const auto inv = poisson::involution_matrix(hs, samples, constraints);
  r.involution = inv.max_abs;
  r.involution_max = inv.overall_max;

  const auto psi = psi_V_field(kl);
  for (const auto& p : samples)
    for (const auto& h : hs) r.psi_V_bracket_max = std::max(r.psi_V_bracket_max, std::abs(
        poisson::dirac_bracket(h, psi, p, constraints)));

  r.rank_all = poisson::independence_rank(hs, base, constraints);
  r.singular_values_all = poisson::projected_gradient_singular_values(hs, base, constraints);

  r.psi_V_at_base = psi_V(kl, r.base).imag();
  std::vector<poisson::ScalarField> seven;
  for (int a = 1; a <= 8; ++a)
    if (a != 3) seven.push_back(h_field(a));
  poisson::ConstraintSet level = constraints;
  level.constraints.push_back(psi);
  const RealMatrix circle = wks_circle_direction(kl, base);
  r.rank_reduced = poisson::independence_rank(seven, base, level, circle);
  r.singular_values_reduced = poisson::projected_gradient_singular_values(seven, base, level, circle);

  for (int s = 0; s < opt.identity_samples; ++s) {
    const auto p = random_on_shell_point(rng);
    r.kinetic_identity_max = std::max(r.kinetic_identity_max, kinetic_identity_residual(p));
    r.hprime_identity_max = std::max(r.hprime_identity_max, hprime_identity_residual(p));
    r.psi_V_identity_max = std::max(r.psi_V_identity_max, psi_V_identity_residual(kl, p));
  }

  // Positive kinetic energy -(H_5 + H_8).
  poisson::ScalarField kinetic;
  kinetic.arity = 20;
  kinetic.label = "-(H5+H8)";
  kinetic.value = [](const RealVector& p) {
    const auto s = SphereCotangentPoint::from_real(p);
    return -(h_function(5, s) + h_function(8, s));
  };
  const RealVector start = samples.empty() ? base : samples.front();
  const auto traj = poisson::hamiltonian_flow(kinetic, start, opt.flow_time, opt.flow_steps, constraints);
  for (const auto& h : hs) {
    const double h0 = h.value(traj.states.front());
    for (const auto& s : traj.states) r.flow_drift_max = std::max(r.flow_drift_max, std::abs(h.value(s) - h0));
  }
  r.flow_constraint_max = traj.max_constraint_residual();
  return r;
}

// --- Left-trivialized T*SU3 ---------------------------------------------------

TrivializedCotangentPoint::TrivializedCotangentPoint(ComplexMatrix g, LieElement x, double tol)
    : g_(std::move(g)), x_(std::move(x)) {
  if (g_.rows() != 3 || g_.cols() != 3 || x_.n() != 3 || x_.flavor() != Flavor::SU)
    throw Error(ErrorCode::DimensionMismatch, "expected g in SU3 and x in su3");
  if (unitarity_defect(g_) > tol || std::abs(g_.determinant() - 1.0) > tol)
    throw Error(ErrorCode::InvalidArgument, "g is not in SU3");
}

LieElement psi_Gplus(const TrivializedCotangentPoint& p) { return lie::adjoint_action(p.g(), p.x()); }

LieElement psi_Gminus(const TrivializedCotangentPoint& p) { return p.x(); }

TrivializedDerivatives derivatives(const TrivializedFunction& f, const TrivializedCotangentPoint& p,
                                   double rel_step) {
  if (f.analytic) return f.analytic(p);
  const auto& basis = su3_basis();
  const RealVector xc = basis.coordinates(p.x());
  RealVector dg(basis.size()), dx(basis.size());
  for (int k = 0; k < basis.size(); ++k) {
    const double h = rel_step;
    const ComplexMatrix step = matrix_exp(h * basis[k].matrix());
    const TrivializedCotangentPoint gp(p.g() * step, p.x(), 1e-6);
    const TrivializedCotangentPoint gm(p.g() * step.adjoint(), p.x(), 1e-6);
    dg(k) = (f.value(gp) - f.value(gm)) / (2.0 * h);

    const double hx = rel_step * std::max(1.0, std::abs(xc(k)));
    const TrivializedCotangentPoint xp(p.g(), p.x() + basis[k] * hx);
    const TrivializedCotangentPoint xm(p.g(), p.x() - basis[k] * hx);
    dx(k) = (f.value(xp) - f.value(xm)) / (2.0 * hx);
  }
  if (!dg.allFinite() || !dx.allFinite()) throw Error(ErrorCode::NonFinite, "derivatives of " + f.label);
  return {basis.element(dg), basis.element(dx)};
}

double trivialized_bracket(const TrivializedDerivatives& f, const TrivializedDerivatives& k,
                           const LieElement& x) {
  return lie::pairing(k.dg, f.dx) - lie::pairing(f.dg, k.dx) +
         lie::pairing(x, lie::commutator(f.dx, k.dx));
}

double trivialized_bracket(const TrivializedFunction& f, const TrivializedFunction& k,
                           const TrivializedCotangentPoint& p) {
  return trivialized_bracket(derivatives(f, p), derivatives(k, p), p.x());
}

TrivializedFunction pull_back_plus(const lie::LieFunction& f) {
  TrivializedFunction F;
  F.label = f.label + "+";
  F.value = [f](const TrivializedCotangentPoint& p) { return f.value(psi_Gplus(p)); };
  F.analytic = [f](const TrivializedCotangentPoint& p) {
    const LieElement alpha = lie::gradient(f, psi_Gplus(p)).factor(0);
    return pulled_back(p.g(), p.x(), alpha, std::nullopt, 0.0);
  };
  return F;
}

TrivializedFunction pull_back_minus(const lie::LieFunction& f) {
  TrivializedFunction F;
  F.label = f.label + "-";
  F.value = [f](const TrivializedCotangentPoint& p) { return f.value(psi_Gminus(p)); };
  F.analytic = [f](const TrivializedCotangentPoint& p) {
    const LieElement alpha = lie::gradient(f, psi_Gminus(p)).factor(0);
    return pulled_back(p.g(), p.x(), std::nullopt, alpha, 1.0);
  };
  return F;
}

TrivializedFunction pull_back_H(const lie::LieFunction& f) {
  TrivializedFunction F;
  F.label = f.label + "oPsi_H";
  auto at = [](const TrivializedCotangentPoint& p) {
    return lie::ProductElement(psi_Gplus(p), -psi_Gminus(p));
  };
  F.value = [f, at](const TrivializedCotangentPoint& p) { return f.value(at(p)); };
  F.analytic = [f, at](const TrivializedCotangentPoint& p) {
    const lie::ProductElement alpha = lie::gradient(f, at(p));
    return pulled_back(p.g(), p.x(), alpha.plus(), alpha.minus(), -1.0);
  };
  return F;
}

RealVector covector(const TrivializedDerivatives& d) {
  const auto& basis = su3_basis();
  RealVector c(2 * basis.size());
  c.head(basis.size()) = basis.coordinates(d.dg);
  c.tail(basis.size()) = basis.coordinates(d.dx);
  return c;
}

lie::ProductElement EschenburgU::generator() const {
  return lie::ProductElement(LieElement(diag_i(k, l, -k - l), Flavor::SU),
                             LieElement(diag_i(p, q, -p - q), Flavor::SU));
}

TrivializedCotangentPoint EschenburgU::act(double angle, const TrivializedCotangentPoint& pt) const {
  const auto u = generator();
  const ComplexMatrix h1 = matrix_exp(angle * u.plus().matrix());
  const ComplexMatrix h2 = matrix_exp(angle * u.minus().matrix());
  return TrivializedCotangentPoint(h1 * pt.g() * h2.adjoint(), lie::adjoint_action(h2, pt.x()), 1e-6);
}

RealVector EschenburgU::orbit_direction(const TrivializedCotangentPoint& pt) const {
  const auto u = generator();
  const LieElement xi = lie::adjoint_action(pt.g().adjoint(), u.plus()) - u.minus();
  const LieElement eta = lie::commutator(u.minus(), pt.x());
  return covector({xi, eta});
}

TrivializedFunction psi_U(const EschenburgU& u) {
  auto F = pull_back_H(lie::linear_form(u.generator()));
  F.label = "psi_U";
  return F;
}

lie::ProductElement default_shift() {
  return lie::ProductElement(LieElement(diag_i(1, 2, -3), Flavor::SU),
                             LieElement(diag_i(5, 7, -12), Flavor::SU));
}

lie::ShiftFamily eschenburg_mf_family(const lie::ProductElement& shift) {
  lie::ShiftFamily family;
  family.shift_is_regular = lie::is_regular(shift);
  for (int factor = 0; factor < 2; ++factor) {
    const lie::CasimirSpec quad{lie::CasimirKind::TraceSquare, 2, factor};
    const lie::CasimirSpec cubic{lie::CasimirKind::TraceCube, 3, factor};
    for (double lambda : {0.0, 1.0}) family.members.push_back({quad, lambda, shift});
    for (double lambda : {0.0, 1.0, 2.0}) family.members.push_back({cubic, lambda, shift});
  }
  return family;
}

TrivializedCotangentPoint random_trivialized_point(Rng& rng) {
  return TrivializedCotangentPoint(random_special_unitary(3, rng), lie::random_element(3, Flavor::SU, rng));
}

EschenburgReport eschenburg_integral_report(const EschenburgU& u, const EschenburgOptions& opt) {
  if (!topo7::admissible(u.quartet()))
    throw Error(ErrorCode::InvalidArgument, "quartet is not admissible");
  const lie::ProductElement shift = opt.shift.value_or(default_shift());
  const auto family = eschenburg_mf_family(shift);
  if (!family.shift_is_regular) throw Error(ErrorCode::InvalidArgument, "shift direction is not regular");

  std::vector<TrivializedFunction> pulled;
  for (const auto& f : family.functions()) pulled.push_back(pull_back_H(f));
  const TrivializedFunction psi = psi_U(u);

  EschenburgReport r;
  r.u = u;
  Rng rng(opt.seed);

  std::vector<TrivializedFunction> with_psi = pulled;
  with_psi.push_back(psi);
  for (int s = 0; s < opt.involution_samples; ++s) {
    const auto p = random_trivialized_point(rng);
    std::vector<TrivializedDerivatives> d;
    for (const auto& f : with_psi) d.push_back(derivatives(f, p));
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = i + 1; j < d.size(); ++j)
        r.involution_max = std::max(r.involution_max, std::abs(trivialized_bracket(d[i], d[j], p.x())));
  }

  auto covectors = [&](const TrivializedCotangentPoint& p) {
    RealMatrix c(16, static_cast<Eigen::Index>(pulled.size()));
    for (std::size_t k = 0; k < pulled.size(); ++k)
      c.col(static_cast<Eigen::Index>(k)) = covector(derivatives(pulled[k], p));
    return c;
  };
  const int target = 8;  // dim SU3

  // A regular point of T*SU3 for the pulled-back family.
  bool found = false;
  for (int draw = 1; draw <= opt.max_draws && !found; ++draw) {
    const auto p = random_trivialized_point(rng);
    if (lie::stabilizer_dimension(p.x()) != 2) continue;
    r.ddim_pulled_back = numerical_rank(covectors(p));
    if (r.ddim_pulled_back < target) continue;
    const lie::ProductElement xh(psi_Gplus(p), -psi_Gminus(p));
    const auto fns = family.functions();
    r.ddim_coalgebra = lie::differential_dimension(fns, xh);
    r.drank_coalgebra = lie::differential_rank(fns, xh, kRankThreshold, 1e-6, 5, opt.seed);
    r.draws = draw;
    found = true;
  }
  if (!found) throw Error(ErrorCode::SearchExhausted, "no regular point of T*SU3 found");

  // A regular point on psi_U^{-1}(0): project x orthogonally onto the level.
  found = false;
  for (int draw = 1; draw <= opt.max_draws && !found; ++draw) {
    const auto p0 = random_trivialized_point(rng);
    const auto gen = u.generator();
    const LieElement wdir = lie::adjoint_action(p0.g().adjoint(), gen.plus()) - gen.minus();
    const double ww = lie::pairing(wdir, wdir);
    const LieElement x = p0.x() - wdir * (lie::pairing(p0.x(), wdir) / ww);
    const TrivializedCotangentPoint p(p0.g(), x);
    if (lie::stabilizer_dimension(p.x()) != 2) continue;
    const RealMatrix c = covectors(p);
    if (numerical_rank(c) < target) continue;

    r.psi_U_at_sample = psi.value(p);
    const RealMatrix level = covector(derivatives(psi, p)).transpose();
    const RealMatrix orbit = u.orbit_direction(p);
    const RealMatrix restricted = poisson::restricted_covectors(c, level, orbit);
    r.reduced_rank = numerical_rank(restricted);
    r.reduced_singular_values = Eigen::JacobiSVD<RealMatrix>(restricted).singularValues();
    r.draws += draw;
    found = true;
  }
  if (!found) throw Error(ErrorCode::SearchExhausted, "no regular point on psi_U^{-1}(0) found");
  return r;
}

std::vector<std::pair<std::string, TrivializedFunction>> su3_integral_functions() {
  std::vector<std::pair<std::string, lie::LieFunction>> base;
  for (int a : {1, 2, 4, 5}) {
    lie::LieFunction f;
    f.label = "f" + std::to_string(a);
    f.value = [a](const lie::ProductElement& x) { return f_block(a, x.factor(0).matrix()); };
    base.emplace_back(f.label, f);
  }
  lie::LieFunction det;
  det.label = "det";
  det.value = [](const lie::ProductElement& x) { return f9(x.factor(0).matrix()); };
  base.emplace_back("det", det);

  std::vector<std::pair<std::string, TrivializedFunction>> out;
  for (const auto& [name, f] : base) {
    out.emplace_back(name + "+", pull_back_plus(f));
    out.emplace_back(name + "-", pull_back_minus(f));
  }
  return out;
}

std::map<std::string, double> su3_integral_set(const TrivializedCotangentPoint& p) {
  std::map<std::string, double> values;
  for (const auto& [name, f] : su3_integral_functions()) values[name] = f.value(p);
  return values;
}

}  // namespace mk::homog
