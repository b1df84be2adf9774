#include "doctest.h"

#include <cmath>

#include "maslovkit/error.hpp"
#include "maslovkit/homog.hpp"

using namespace mk;
using namespace mk::homog;
using lie::Flavor;
using lie::LieElement;

namespace {

const Complex I(0.0, 1.0);

SphereCotangentPoint unit_point() {
  SphereCotangentPoint p;
  p.x = ComplexVector::Zero(3);
  p.y = ComplexVector::Zero(3);
  p.w = ComplexVector::Zero(2);
  p.z = ComplexVector::Zero(2);
  p.x(0) = 1.0;
  p.y(0) = I;
  p.w(0) = 1.0;
  p.z(0) = I;
  return p;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("momentum map on a hand point") {
  const auto p = unit_point();
  CHECK(p.constraint_residual() < 1e-15);
  const auto v = psi_G(p);
  ComplexMatrix e11 = ComplexMatrix::Zero(3, 3);
  e11(0, 0) = -I;
  CHECK(max_abs(v.xi.matrix() - e11) < 1e-15);
  CHECK(std::abs(v.eta.matrix()(0, 0) - (-I)) < 1e-15);
  CHECK(std::abs(psi_V({2, 3}, p) - (-5.0 * I)) < 1e-15);
  CHECK(f_function(1, v) == doctest::Approx(0.0));
  CHECK(f_function(3, v) == doctest::Approx(-1.0));
  CHECK(f_function(5, v) == doctest::Approx(-0.5));
  CHECK(f_function(7, v) == doctest::Approx(-1.0));
  CHECK(f_function(8, v) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(f_function(9, v), Error);
}

TEST_CASE("f9 is det h for xi = i h") {
  RealMatrix h(3, 3);
  h << 2, 1, 0, 1, 3, -1, 0, -1, 1;
  const ComplexMatrix xi = I * h.cast<Complex>();
  CHECK(f9(xi) == doctest::Approx(h.determinant()));
}

TEST_CASE("off-shell points are rejected") {
  auto p = unit_point();
  p.x(0) = 1.1;
  CHECK_THROWS_AS(psi_G(p), Error);
  try {
    psi_G(p);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OffManifold);
  }
}

TEST_CASE("real flattening round-trips and the base point is on shell") {
  Rng rng(1);
  const auto p = random_on_shell_point(rng);
  CHECK(p.constraint_residual() < 1e-12);
  const auto q = SphereCotangentPoint::from_real(p.to_real());
  CHECK((q.to_real() - p.to_real()).norm() == 0.0);
  CHECK(wks_base_point().constraint_residual() < 1e-14);
  // positions first
  const RealVector r = unit_point().to_real();
  CHECK(r(0) == 1.0);
  CHECK(r(10 + 3) == 1.0);  // Im y_1
}

TEST_CASE("identities relating H to the kinetic energy") {
  Rng rng(2);
  for (int s = 0; s < 50; ++s) {
    const auto p = random_on_shell_point(rng);
    CHECK(kinetic_identity_residual(p) < 1e-10);
    CHECK(hprime_identity_residual(p) < 1e-10);
    CHECK(psi_V_identity_residual({1, 4}, p) < 1e-10);
    CHECK(std::abs(psi_V({1, 4}, p).real()) < 1e-10);
  }
}

TEST_CASE("psi_G is equivariant") {
  Rng rng(3);
  for (int s = 0; s < 10; ++s) {
    const auto p = random_on_shell_point(rng);
    const ComplexMatrix u3 = random_unitary(3, rng), u2 = random_unitary(2, rng);
    const auto a = psi_G(act(u3, u2, p));
    const auto b = psi_G(p);
    CHECK(max_abs(a.xi.matrix() - u3 * b.xi.matrix() * u3.adjoint()) < 1e-12);
    CHECK(max_abs(a.eta.matrix() - u2 * b.eta.matrix() * u2.adjoint()) < 1e-12);
    CHECK(std::abs(psi_V({3, 8}, act(u3, u2, p)) - psi_V({3, 8}, p)) < 1e-12);
  }
}

TEST_CASE("the weighted circle preserves the H functions") {
  Rng rng(4);
  const auto p = random_on_shell_point(rng).to_real();
  const RealVector d = wks_circle_direction({1, 4}, p);
  for (int a = 1; a <= 8; ++a) {
    const auto h = h_field(a);
    const double dd = (h.value(p + 1e-6 * d) - h.value(p - 1e-6 * d)) / 2e-6;
    CHECK(std::abs(dd) < 1e-7);
  }
}

TEST_CASE("WKS integrable system for (1, 4)") {
  const auto r = wks_integrable_system({1, 4});
  CHECK(r.involution_max < 1e-6);
  CHECK(r.rank_all == 8);
  CHECK(r.rank_reduced == 7);
  CHECK(r.psi_V_bracket_max < 1e-6);
  CHECK(r.flow_drift_max < 1e-5);
  CHECK(r.flow_constraint_max < 1e-7);
  CHECK(std::max({r.kinetic_identity_max, r.hprime_identity_max, r.psi_V_identity_max}) < 1e-10);
  CHECK_THROWS_AS(wks_integrable_system({2, 4}), Error);
  CHECK_THROWS_AS(wks_integrable_system({1, 0}), Error);
}

TEST_CASE("left-trivialized bracket: signs of the two momentum maps") {
  Rng rng(5);
  const auto p = random_trivialized_point(rng);
  const auto a = lie::random_element(3, Flavor::SU, rng), b = lie::random_element(3, Flavor::SU, rng);
  const auto la = lie::linear_form(a), lb = lie::linear_form(b);
  const LieElement ab = commutator(a, b);
  // <x, [a, b]> for the minus map, -<gxg^-1, [a, b]> for the plus map
  const double minus = trivialized_bracket(pull_back_minus(la), pull_back_minus(lb), p);
  const double plus = trivialized_bracket(pull_back_plus(la), pull_back_plus(lb), p);
  CHECK(minus == doctest::Approx(pairing(p.x(), ab)).epsilon(1e-6));
  CHECK(plus == doctest::Approx(-pairing(psi_Gplus(p), ab)).epsilon(1e-6));
  CHECK(std::abs(trivialized_bracket(pull_back_plus(la), pull_back_minus(lb), p)) < 1e-7);
}

TEST_CASE("analytic and finite-difference trivialized derivatives agree") {
  Rng rng(6);
  const auto p = random_trivialized_point(rng);
  const auto f = pull_back_plus(lie::casimir_function({lie::CasimirKind::TraceCube, 3, 0}));
  auto numeric = f;
  numeric.analytic = nullptr;
  const RealVector a = covector(derivatives(f, p)), n = covector(derivatives(numeric, p));
  CHECK((a - n).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, a.cwiseAbs().maxCoeff()));
}

TEST_CASE("Casimirs agree through both momentum maps") {
  Rng rng(7);
  for (int s = 0; s < 5; ++s) {
    const auto p = random_trivialized_point(rng);
    for (const auto& spec : {lie::CasimirSpec{lie::CasimirKind::TraceSquare, 2, 0},
                             lie::CasimirSpec{lie::CasimirKind::TraceCube, 3, 0},
                             lie::CasimirSpec{lie::CasimirKind::Determinant, 3, 0}})
      CHECK(evaluate_casimir(spec, psi_Gplus(p)) == doctest::Approx(evaluate_casimir(spec, psi_Gminus(p))).epsilon(1e-10));
  }
}

TEST_CASE("U action and its momentum map") {
  Rng rng(8);
  const EschenburgU u{-1, -1, -2, 0};
  const auto p = random_trivialized_point(rng);
  const auto moved = u.act(0.37, p);
  // psi_U is constant on U orbits
  const auto psi = psi_U(u);
  CHECK(psi.value(moved) == doctest::Approx(psi.value(p)).epsilon(1e-10));
  const RealVector dir = u.orbit_direction(p);
  CHECK(dir.size() == 16);
  CHECK(std::abs(covector(derivatives(psi, p)).dot(dir)) < 1e-7);
  // directional derivative of a non-invariant function along the orbit
  const auto f = pull_back_plus(lie::linear_form(lie::random_element(3, Flavor::SU, rng)));
  const double fd = (f.value(u.act(1e-5, p)) - f.value(u.act(-1e-5, p))) / 2e-5;
  CHECK(covector(derivatives(f, p)).dot(dir) == doctest::Approx(fd).epsilon(1e-6));
  // the generator is (i diag(k, l, -k-l), i diag(p, q, -p-q))
  const auto g = u.generator();
  CHECK(std::abs(g.plus().matrix()(2, 2) - Complex(0, 2)) < 1e-15);
  CHECK(std::abs(g.minus().matrix()(0, 0) - Complex(0, -2)) < 1e-15);
}

TEST_CASE("Eschenburg integral reports") {
  for (const EschenburgU u : {EschenburgU{0, 0, 1, 2}, EschenburgU{-1, -1, -2, 0}}) {
    const auto r = eschenburg_integral_report(u);
    CHECK(r.involution_max < 1e-6);
    CHECK(r.ddim_coalgebra == 10);
    CHECK(r.drank_coalgebra == 6);
    CHECK(r.ddim_pulled_back == 8);
    CHECK(r.reduced_rank == 7);
  }
  CHECK_THROWS_AS(eschenburg_integral_report({0, 0, 0, 0}), Error);
}

TEST_CASE("default shift is regular") {
  const auto s = default_shift();
  CHECK(lie::is_regular(s));
  CHECK(eschenburg_mf_family(s).members.size() == 10);
}

TEST_CASE("su3 integral set") {
  Rng rng(9);
  const auto names = su3_integral_functions();
  CHECK(names.size() == 10);

  const TrivializedCotangentPoint zero(ComplexMatrix::Identity(3, 3), LieElement::zero(3, Flavor::SU));
  for (const auto& [k, v] : su3_integral_set(zero)) CHECK(std::abs(v) < 1e-15);

  const auto p = random_trivialized_point(rng);
  const auto vals = su3_integral_set(p);
  CHECK(vals.at("f5+") == doctest::Approx(vals.at("f5-")).epsilon(1e-10));
  CHECK(vals.at("det+") == doctest::Approx(vals.at("det-")).epsilon(1e-10));
  CHECK(std::abs(vals.at("f4+") - vals.at("f4-")) > 1e-6);

  // invariance under the maximal torus acting on the right of g and by Ad on x
  ComplexMatrix t = ComplexMatrix::Zero(3, 3);
  t(0, 0) = std::exp(I * 0.4);
  t(1, 1) = std::exp(I * 1.1);
  t(2, 2) = std::exp(-I * 1.5);
  const TrivializedCotangentPoint q(t * p.g() * t.adjoint(), adjoint_action(t, p.x()));
  const auto tv = su3_integral_set(q);
  for (const auto& [k, v] : vals) CHECK(tv.at(k) == doctest::Approx(v).epsilon(1e-9));
}
