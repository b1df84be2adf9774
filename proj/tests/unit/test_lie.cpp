#include "doctest.h"

#include <cmath>

#include "maslovkit/error.hpp"
#include "maslovkit/lie.hpp"

using namespace mk;
using namespace mk::lie;

namespace {

const Complex I(0.0, 1.0);

LieElement diag_element(std::initializer_list<double> h, Flavor f) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(h.size()), static_cast<Eigen::Index>(h.size()));
  Eigen::Index k = 0;
  for (double v : h) m(k, k) = I * v, ++k;
  return LieElement(m, f);
}

// -Re tr(AB) straight from the matrices.
double raw_pairing(const ComplexMatrix& a, const ComplexMatrix& b) { return -(a * b).trace().real(); }

LieFunction product(const LieFunction& f, const LieFunction& g) {
  return {[f, g](const ProductElement& x) { return f(x) * g(x); }, {}, "product"};
}

}  // namespace

TEST_CASE("pairing of diag(i,-i) with itself is 2") {
  const auto a = diag_element({1.0, -1.0}, Flavor::U);
  CHECK(pairing(a, a) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(pairing(LieElement::zero(2, Flavor::U), a) == 0.0);
}

TEST_CASE("pairing is Ad-invariant and matches -Re tr(AB)") {
  Rng rng(1);
  for (int s = 0; s < 10; ++s) {
    const auto a = random_element(3, Flavor::U, rng);
    const auto b = random_element(3, Flavor::U, rng);
    const ComplexMatrix u = random_unitary(3, rng);
    CHECK(std::abs(pairing(a, b) - raw_pairing(a.matrix(), b.matrix())) < 1e-12);
    CHECK(std::abs(pairing(adjoint_action(u, a), adjoint_action(u, b)) - pairing(a, b)) < 1e-10);
  }
}

TEST_CASE("pairing rejects mismatched algebras") {
  CHECK_THROWS_AS(pairing(LieElement::zero(2, Flavor::U), LieElement::zero(3, Flavor::U)), Error);
  CHECK_THROWS_AS(pairing(LieElement::zero(2, Flavor::U), LieElement::zero(2, Flavor::SU)), Error);
}

TEST_CASE("LieElement validates skew-Hermitian and traceless input") {
  ComplexMatrix h = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(LieElement(h, Flavor::U), Error);
  CHECK_THROWS_AS(LieElement(I * h, Flavor::SU), Error);
  CHECK_NOTHROW(LieElement(I * h, Flavor::U));
}

TEST_CASE("orthonormal bases have the right size and are orthonormal") {
  for (auto [n, f] : {std::pair{2, Flavor::U}, {3, Flavor::SU}, {3, Flavor::U}}) {
    AlgebraBasis b(n, f);
    REQUIRE(b.size() == algebra_dimension(n, f));
    for (int i = 0; i < b.size(); ++i)
      for (int j = 0; j < b.size(); ++j)
        CHECK(std::abs(pairing(b[i], b[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("bracket of linear forms is <x,[a,b]>") {
  ComplexMatrix a(2, 2), b(2, 2);
  a << I, 0, 0, -I;
  b << 0, 1, -1, 0;
  ComplexMatrix x(2, 2);
  x << 0.3 * I, Complex(0.2, 0.5), Complex(-0.2, 0.5), -0.3 * I;
  const LieElement ea(a, Flavor::SU), eb(b, Flavor::SU), ex(x, Flavor::SU);
  const double expected = raw_pairing(x, a * b - b * a);
  CHECK(lie_poisson_bracket(linear_form(ea), linear_form(eb), ex) == doctest::Approx(expected).epsilon(1e-9));
  // [diag(i,-i), J] = 2i [[0,1],[1,0]] paired with x gives -Re tr(x * that) = -Re(2i * 2 * 0.5i) = 2
  CHECK(expected == doctest::Approx(2.0));
}

TEST_CASE("Lie-Poisson bracket is antisymmetric, Leibniz and Jacobi on linear forms") {
  Rng rng(7);
  for (int s = 0; s < 10; ++s) {
    const auto a = random_element(3, Flavor::SU, rng), b = random_element(3, Flavor::SU, rng);
    const auto c = random_element(3, Flavor::SU, rng), x = random_element(3, Flavor::SU, rng);
    const auto f = linear_form(a), g = linear_form(b), h = linear_form(c);
    CHECK(std::abs(lie_poisson_bracket(f, g, x) + lie_poisson_bracket(g, f, x)) < 1e-6);
    CHECK(std::abs(lie_poisson_bracket(f, f, x)) < 1e-12);

    const double leibniz = lie_poisson_bracket(f, product(g, h), x) -
                           (lie_poisson_bracket(f, g, x) * h(x) + g(x) * lie_poisson_bracket(f, h, x));
    CHECK(std::abs(leibniz) < 1e-6);

    auto nested = [](const LieFunction& p, const LieFunction& q) {
      return LieFunction{[p, q](const ProductElement& y) { return lie_poisson_bracket(p, q, y.factor(0)); }, {}, ""};
    };
    const double jacobi = lie_poisson_bracket(f, nested(g, h), x) + lie_poisson_bracket(g, nested(h, f), x) +
                          lie_poisson_bracket(h, nested(f, g), x);
    CHECK(std::abs(jacobi) < 1e-5);
  }
}

TEST_CASE("Casimirs are Ad-invariant, central, and have correct gradients") {
  Rng rng(3);
  const std::vector<CasimirSpec> specs = {{CasimirKind::TraceSquare, 2, 0}, {CasimirKind::TraceCube, 3, 0},
                                          {CasimirKind::TraceK, 4, 0},      {CasimirKind::Determinant, 3, 0},
                                          {CasimirKind::LinearTrace, 1, 0}};
  for (const auto& spec : specs) {
    const auto c = casimir_function(spec);
    for (int s = 0; s < 10; ++s) {
      const auto x = random_element(3, Flavor::U, rng);
      const ComplexMatrix u = random_unitary(3, rng);
      CHECK(std::abs(evaluate_casimir(spec, adjoint_action(u, x)) - evaluate_casimir(spec, x)) < 1e-9);
      const auto a = random_element(3, Flavor::U, rng);
      CHECK(std::abs(lie_poisson_bracket(c, linear_form(a), x)) < 1e-6);

      // directional derivative oracle: d/dt c(x + t v) against <grad, v>
      const auto v = random_element(3, Flavor::U, rng);
      const double h = 1e-5;
      const double fd = (evaluate_casimir(spec, x + h * v) - evaluate_casimir(spec, x - h * v)) / (2 * h);
      CHECK(std::abs(fd - pairing(casimir_gradient(spec, x), v)) < 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("Casimir normalizations on a diagonal element") {
  const auto x = diag_element({1.0, 2.0, -3.0}, Flavor::SU);
  CHECK(evaluate_casimir({CasimirKind::TraceSquare, 2, 0}, x) == doctest::Approx(-0.5 * 14.0));
  CHECK(evaluate_casimir({CasimirKind::TraceCube, 3, 0}, x) == doctest::Approx(1.0 + 8.0 - 27.0));
  CHECK(evaluate_casimir({CasimirKind::Determinant, 3, 0}, x) == doctest::Approx(-6.0));
}

TEST_CASE("argument shift family on su(3) is in involution") {
  const auto raw = diag_element({1.0, 2.0, -3.0}, Flavor::SU);
  const LieElement a = raw * (1.0 / std::sqrt(pairing(raw, raw)));
  const auto fam = mf_shift_family({{CasimirKind::TraceSquare, 2, 0}}, a, {0.0, 1.0});
  CHECK(fam.shift_is_regular);
  REQUIRE(fam.members.size() == 2);
  Rng rng(11);
  const auto fns = fam.functions();
  for (int s = 0; s < 10; ++s) {
    const auto x = random_element(3, Flavor::SU, rng);
    CHECK(std::abs(lie_poisson_bracket(fns[0], fns[1], x)) < 1e-6);
    CHECK(fam.members[0](x) == doctest::Approx(evaluate_casimir({CasimirKind::TraceSquare, 2, 0}, x)));
  }
}

TEST_CASE("{tr^2, tr^3} shifted by three lambdas on su(3) has ddim 5") {
  const auto a = diag_element({1.0, 2.0, -3.0}, Flavor::SU);
  const auto fam = mf_shift_family({{CasimirKind::TraceSquare, 2, 0}, {CasimirKind::TraceCube, 3, 0}}, a,
                                   {0.0, 1.0, 2.0});
  Rng rng(5);
  const auto x = random_element(3, Flavor::SU, rng);
  CHECK(differential_dimension(fam.functions(), x) == 5);
  Rng rng2(6);
  const auto y = random_element(3, Flavor::SU, rng2);
  for (const auto& f : fam.functions())
    for (const auto& g : fam.functions()) CHECK(std::abs(lie_poisson_bracket(f, g, y)) < 1e-6);
}

TEST_CASE("MF family on su3 + su3 has ddim 10 and drank 6") {
  const ProductElement a(diag_element({1.0, 2.0, -3.0}, Flavor::SU), diag_element({5.0, 7.0, -12.0}, Flavor::SU));
  std::vector<ShiftFamilyMember> all;
  for (int f : {0, 1}) {
    auto sq = mf_shift_family({{CasimirKind::TraceSquare, 2, f}}, a, {0.0, 1.0});
    auto cb = mf_shift_family({{CasimirKind::TraceCube, 3, f}}, a, {0.0, 1.0, 2.0});
    all.insert(all.end(), sq.members.begin(), sq.members.end());
    all.insert(all.end(), cb.members.begin(), cb.members.end());
  }
  ShiftFamily fam{all, true};
  Rng rng(9);
  const auto x = random_like(a, rng);
  CHECK(differential_dimension(fam.functions(), x) == 10);
  CHECK(differential_rank(fam.functions(), x) == 6);
}

TEST_CASE("MF functions with a diagonal shift are torus invariant") {
  const auto a = diag_element({1.0, 2.0, -3.0}, Flavor::SU);
  const auto fam = mf_shift_family({{CasimirKind::TraceSquare, 2, 0}, {CasimirKind::TraceCube, 3, 0}}, a, {0.5, 1.5});
  Rng rng(2);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  for (int s = 0; s < 10; ++s) {
    const auto x = random_element(3, Flavor::SU, rng);
    ComplexMatrix u = ComplexMatrix::Zero(3, 3);
    const double t1 = ang(rng), t2 = ang(rng);
    u(0, 0) = std::exp(I * t1);
    u(1, 1) = std::exp(I * t2);
    u(2, 2) = std::exp(-I * (t1 + t2));
    for (const auto& m : fam.members) CHECK(std::abs(m(adjoint_action(u, x)) - m(x)) < 1e-9);
  }
}

TEST_CASE("regularity of shift directions") {
  CHECK(is_regular(diag_element({1.0, 2.0, -3.0}, Flavor::SU)));
  CHECK_FALSE(is_regular(diag_element({1.0, 1.0, -2.0}, Flavor::SU)));
  CHECK(stabilizer_dimension(diag_element({1.0, 1.0, -2.0}, Flavor::SU)) == 4);
  const auto fam = mf_shift_family({{CasimirKind::TraceSquare, 2, 0}}, diag_element({1.0, 1.0, -2.0}, Flavor::SU), {0.0});
  CHECK_FALSE(fam.shift_is_regular);
  CHECK(fam.members.size() == 1);
}

TEST_CASE("differential dimension of trivial families") {
  const LieFunction constant{[](const ProductElement&) { return 1.0; }, {}, "one"};
  Rng rng(4);
  const auto x = random_element(3, Flavor::SU, rng);
  CHECK(differential_dimension({constant}, x) == 0);
  CHECK(differential_dimension({}, x) == 0);
  const auto f = linear_form(random_element(3, Flavor::SU, rng));
  const auto g = casimir_function({CasimirKind::TraceSquare, 2, 0});
  CHECK(differential_dimension({f, g}, x) == 2);
  CHECK(differential_dimension({f, g, f}, x) == 2);
}

TEST_CASE("finite-difference and analytic gradients agree") {
  Rng rng(8);
  const auto x = random_element(3, Flavor::SU, rng);
  auto c = casimir_function({CasimirKind::TraceCube, 3, 0});
  const auto analytic = gradient(c, x);
  c.analytic_gradient = nullptr;
  const auto fd = gradient(c, x);
  CHECK((analytic.factor(0).matrix() - fd.factor(0).matrix()).cwiseAbs().maxCoeff() < 1e-6);
}
