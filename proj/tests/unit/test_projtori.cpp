#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "maslovkit/error.hpp"
#include "maslovkit/projtori.hpp"

using namespace mk;
using namespace mk::projtori;

namespace {

RealVector vec(std::initializer_list<double> v) {
  RealVector r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) r(k++) = x;
  return r;
}

TrigPolynomial tp(double c, std::vector<double> cs, std::vector<double> sn) { return {c, std::move(cs), std::move(sn)}; }

ModelMetricPair flat13() { return ModelMetricPair(SeparatedEigenFunctions({tp(1, {}, {}), tp(3, {}, {})})); }
// lambda_1 = 2 + 0.1 sin 2 pi x in [1.9, 2.1], lambda_2 = 5
ModelMetricPair example2() { return ModelMetricPair(SeparatedEigenFunctions({tp(2, {}, {0.1}), tp(5, {}, {})})); }
ModelMetricPair nonflat2() {
  return ModelMetricPair(SeparatedEigenFunctions({tp(2, {}, {0.1}), tp(5, {0.3}, {0.0, 0.1})}));
}
ModelMetricPair nonflat3() {
  return ModelMetricPair(
      SeparatedEigenFunctions({tp(1, {}, {0.2}), tp(3, {0.25}, {0.0, 0.1}), tp(6, {0.1, 0.1}, {0.3})}));
}

RealVector random_state(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g;
  RealVector s(2 * n);
  for (int i = 0; i < n; ++i) s(i) = u(rng), s(n + i) = g(rng);
  return s;
}

// prod_{j != i} (t_j - tau), written out independently of the library.
double mu_oracle(const std::vector<double>& t, std::size_t i, double tau) {
  double m = 1.0;
  for (std::size_t j = 0; j < t.size(); ++j)
    if (j != i) m *= t[j] - tau;
  return m;
}

}  // namespace

TEST_CASE("eigenvalue functions are validated") {
  CHECK_THROWS_AS(SeparatedEigenFunctions({tp(2, {}, {0.5}), tp(2.3, {}, {})}), Error);
  CHECK_THROWS_AS(SeparatedEigenFunctions({tp(-1, {}, {}), tp(3, {}, {})}), Error);
  const SeparatedEigenFunctions e({tp(2, {}, {0.1}), tp(5, {}, {})});
  CHECK(e.lo(0) == doctest::Approx(1.9).epsilon(1e-12));
  CHECK(e.hi(0) == doctest::Approx(2.1).epsilon(1e-12));
  CHECK(e.lo(1) == 5.0);
  CHECK(e.critical_values(0).size() == 2);
}

TEST_CASE("tensor G from the general formula") {
  const auto m = flat13();
  const RealVector x = vec({0.2, 0.7});
  CHECK((tensor_G(m, x) - RealMatrix(vec({1.0, 3.0}).asDiagonal())).cwiseAbs().maxCoeff() < 1e-10);
  const RealMatrix g = m.g(x);
  CHECK((tensor_G(g, g) - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  Rng rng(1);
  for (const auto& mm : {nonflat2(), nonflat3()})
    for (int s = 0; s < 20; ++s) {
      const RealVector y = random_state(mm.n(), rng).head(mm.n());
      const RealMatrix expect = mm.eig().values(y).asDiagonal();
      CHECK((tensor_G(mm, y) - expect).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("Pi and rho are positive") {
  Rng rng(2);
  const auto m = nonflat3();
  for (int s = 0; s < 20; ++s) {
    const RealVector x = random_state(3, rng).head(3);
    CHECK(m.pi(x).minCoeff() > 0.0);
    CHECK(m.rho(x).minCoeff() > 0.0);
  }
}

TEST_CASE("J_tau hand example and both evaluation routes") {
  const auto m = flat13();
  const RealVector x = vec({0.1, 0.5}), y = vec({1.0, 1.0});
  CHECK(J_tau(m, x, y, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(I_tau(m, x, RealVector::Zero(2), 0.7) == 0.0);

  Rng rng(3);
  for (const auto& mm : {nonflat2(), nonflat3()})
    for (int s = 0; s < 100; ++s) {
      const RealVector st = random_state(mm.n(), rng);
      const double tau = std::normal_distribution<double>(3.0, 3.0)(rng);
      const double a = J_tau_tensor(mm, st.head(mm.n()), st.tail(mm.n()), tau);
      const double b = J_tau_coordinate(mm, st.head(mm.n()), st.tail(mm.n()), tau);
      CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("large-tau limit recovers the geodesic Lagrangian up to (-1)^(n-1)") {
  Rng rng(4);
  for (const auto& m : {nonflat2(), nonflat3()}) {
    const int n = m.n();
    const RealVector st = random_state(n, rng);
    const RealVector x = st.head(n), y = st.tail(n);
    const double tau = 1e6;
    const double scaled = J_tau(m, x, y, tau) / std::pow(tau, n - 1);
    double expect = 0.0;
    const RealVector pi = m.pi(x);
    for (int i = 0; i < n; ++i) expect += y(i) * y(i) / pi(i);
    CHECK(std::abs(scaled - std::pow(-1.0, n - 1) * expect) < 1e-3);
  }
}

TEST_CASE("mu matches the product formula") {
  const std::vector<double> t{1.0, 3.0, 6.0};
  const RealVector tv = vec({1.0, 3.0, 6.0});
  for (std::size_t i = 0; i < 3; ++i)
    for (double tau : {-1.0, 0.0, 2.5, 7.0})
      CHECK(mu(tv, static_cast<int>(i), tau) == doctest::Approx(mu_oracle(t, i, tau)));
}

TEST_CASE("vector field of J_tau") {
  const auto flat = flat13();
  const RealVector s = vec({0.3, 0.6, 0.8, -1.3});
  const RealVector v = vector_field_XJ(flat, s, 0.5);
  CHECK(v.tail(2).cwiseAbs().maxCoeff() == 0.0);
  CHECK(vector_field_XJ(nonflat2(), vec({0.3, 0.6, 0.0, 0.0}), 0.5).cwiseAbs().maxCoeff() == 0.0);

  Rng rng(5);
  for (const auto& m : {example2(), nonflat2(), nonflat3()})
    for (int k = 0; k < 20; ++k) {
      const RealVector st = random_state(m.n(), rng);
      const double tau = std::normal_distribution<double>(3.0, 2.0)(rng);
      const RealVector exact = vector_field_XJ(m, st, tau);
      const RealVector fd = poisson::hamiltonian_vector(poisson::central_difference_gradient(J_field(m, tau, false), st));
      CHECK((exact - fd).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, exact.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("the field stays finite at tau equal to an eigenvalue") {
  const auto m = example2();
  const RealVector st = vec({0.0, 0.4, 0.7, -0.4});  // lambda_1(0) = 2
  const RealVector v = vector_field_XJ(m, st, 2.0);
  CHECK(v.allFinite());
  const RealVector fd = poisson::hamiltonian_vector(poisson::central_difference_gradient(J_field(m, 2.0, false), st));
  CHECK((v - fd).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("J_tau Poisson-commute") {
  Rng rng(6);
  for (const auto& m : {nonflat2(), nonflat3()}) {
    std::vector<poisson::ScalarField> js;
    for (double t : {0.0, 1.5, 2.7, 4.4, 8.0}) js.push_back(J_field(m, t, false));
    std::vector<RealVector> pts;
    for (int s = 0; s < 20; ++s) pts.push_back(random_state(m.n(), rng));
    CHECK(poisson::involution_matrix(js, pts).overall_max < 1e-5);
  }
}

TEST_CASE("partition coefficients: hand examples") {
  auto r = partition_coefficients({1.0, 3.0}, {2.0});
  CHECK(r.a[0] == doctest::Approx(0.5));
  CHECK(r.a[1] == doctest::Approx(0.5));
  CHECK(r.interlacing);
  // p(tau) = sum a_i mu_i(tau) = 0.5 (3 - tau) + 0.5 (1 - tau) = 2 - tau
  for (double tau : {-1.0, 0.0, 2.0, 5.0})
    CHECK(0.5 * (3 - tau) + 0.5 * (1 - tau) == doctest::Approx(2.0 - tau));

  r = partition_coefficients({1.0, 3.0}, {1.0});
  CHECK(std::abs(r.a[0]) < 1e-15);
  CHECK(r.a[1] == doctest::Approx(1.0));

  r = partition_coefficients({1.0, 3.0, 6.0}, {2.0, 4.0});
  CHECK(r.a[0] == doctest::Approx(3.0 / 10.0));
  CHECK(r.a[1] == doctest::Approx(1.0 / 6.0));
  CHECK(r.a[2] == doctest::Approx(8.0 / 15.0));

  CHECK_THROWS_AS(partition_coefficients({1.0, 1.0}, {2.0}), Error);
  CHECK_THROWS_AS(partition_coefficients({1.0, 3.0}, {}), Error);
}

TEST_CASE("partition coefficients randomized: partition of unity, roots, and the interlacing equivalence") {
  Rng rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int inter = 0, non = 0;
  for (int c = 0; c < 1000; ++c) {
    const int n = 2 + c % 4;
    std::vector<double> t;
    double x = u(rng);
    for (int i = 0; i < n; ++i) t.push_back(x), x += 0.3 + u(rng);
    std::vector<double> roots;
    for (int i = 0; i + 1 < n; ++i) {
      const double lo = t[static_cast<std::size_t>(i)], hi = t[static_cast<std::size_t>(i + 1)];
      roots.push_back(u(rng) < 0.6 ? lo + (hi - lo) * u(rng) : t.front() - 1.0 + (t.back() - t.front() + 2.0) * u(rng));
    }
    std::sort(roots.begin(), roots.end());
    bool interlaced = true;
    for (int i = 0; i + 1 < n; ++i)
      if (roots[static_cast<std::size_t>(i)] < t[static_cast<std::size_t>(i)] ||
          roots[static_cast<std::size_t>(i)] > t[static_cast<std::size_t>(i + 1)])
        interlaced = false;
    (interlaced ? inter : non)++;

    const auto r = partition_coefficients(t, roots);
    double sum = 0.0;
    bool nonneg = true;
    for (double a : r.a) sum += a, nonneg = nonneg && a >= 0.0;
    CHECK(std::abs(sum - 1.0) < 1e-10);
    CHECK(nonneg == interlaced);
    CHECK(r.interlacing == interlaced);
    for (double root : roots) {
      double p = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) p += r.a[i] * mu_oracle(t, i, root);
      CHECK(std::abs(p) < 1e-9);
    }
  }
  CHECK(inter > 100);
  CHECK(non > 100);
}

TEST_CASE("first-integral polynomials") {
  const auto q = FirstIntegralPolynomial::from_coefficients({2.0, -1.0});
  REQUIRE(q.degree() == 1);
  CHECK(q.roots[0] == doctest::Approx(2.0));
  CHECK(q.leading == doctest::Approx(1.0));
  CHECK(q(0.5) == doctest::Approx(1.5));
  const auto c = FirstIntegralPolynomial::from_coefficients({1.0, 0.0, 1.0});
  CHECK_FALSE(c.real_roots);
  CHECK(c(2.0) == doctest::Approx(5.0));
  const auto r = FirstIntegralPolynomial::from_roots(2.0, {4.0, 1.0});
  CHECK(r.roots[0] == 1.0);
  CHECK(r(0.0) == doctest::Approx(8.0));
}

TEST_CASE("image classification") {
  CHECK(image_membership(flat13(), FirstIntegralPolynomial::from_roots(1.0, {2.0})) == ImageClass::InteriorDiffeo);
  CHECK(image_membership(example2(), FirstIntegralPolynomial::from_roots(1.0, {2.0})) == ImageClass::NontrivialMaslov);
  CHECK(image_membership(example2(), FirstIntegralPolynomial::from_roots(1.0, {100.0})) == ImageClass::Outside);
  CHECK(image_membership(example2(), FirstIntegralPolynomial::from_roots(-1.0, {3.0})) == ImageClass::Outside);
  // a root at a critical value of lambda_1 is not a regular value
  CHECK(image_membership(example2(), FirstIntegralPolynomial::from_roots(1.0, {2.1})) == ImageClass::Boundary);
  CHECK(image_membership(example2(), FirstIntegralPolynomial::from_roots(1.0, {5.0})) == ImageClass::Boundary);
  CHECK(image_membership(nonflat3(), FirstIntegralPolynomial::from_coefficients({1.0, 0.0, 1.0})) == ImageClass::Outside);
  CHECK(to_string(ImageClass::NontrivialMaslov) == "nontrivial-maslov");
}

TEST_CASE("Liouville torus points") {
  const auto m = flat13();
  const auto q = FirstIntegralPolynomial::from_roots(1.0, {2.0});
  for (double x1 : {0.0, 0.4, 0.9}) {
    const RealVector y = liouville_torus_point(m, q, vec({x1, 0.3}));
    CHECK(std::abs(y(0) - 1.0) < 1e-12);
    CHECK(std::abs(y(1) - 1.0) < 1e-12);
  }
  // mu_1 alone: q = 3 - tau
  const RealVector y = liouville_torus_point(m, FirstIntegralPolynomial::from_roots(1.0, {3.0}), vec({0.1, 0.1}));
  CHECK(std::abs(y(1)) < 1e-12);
  CHECK(y(0) > 0.0);
  CHECK_THROWS_AS(liouville_torus_point(m, FirstIntegralPolynomial::from_roots(1.0, {4.0}), vec({0.1, 0.1})), Error);

  Rng rng(8);
  const auto m3 = nonflat3();
  const auto q3 = FirstIntegralPolynomial::from_roots(0.7, {2.0, 4.5});  // both roots in gaps
  for (int s = 0; s < 10; ++s) {
    const RealVector x = random_state(3, rng).head(3);
    const RealVector yy = liouville_torus_point(m3, q3, x);
    for (double tau : {0.0, 2.0, 4.5, 10.0}) CHECK(std::abs(J_tau(m3, x, yy, tau) - q3(tau)) < 1e-8 * std::max(1.0, std::abs(q3(tau))));
  }
}

TEST_CASE("nondegeneracy determinant") {
  CHECK(nondegeneracy_determinant(flat13(), vec({0.0, 0.0}), {0.0, 2.0}) == doctest::Approx(-4.0));
  const ModelMetricPair one(SeparatedEigenFunctions({tp(2, {}, {0.3})}));
  CHECK(nondegeneracy_determinant(one, vec({0.2}), {0.5}) == 1.0);
  Rng rng(9);
  std::uniform_real_distribution<double> u(-5.0, 12.0);
  const auto m = nonflat3();
  for (int s = 0; s < 100; ++s) {
    std::vector<double> probes{u(rng), u(rng), u(rng)};
    std::sort(probes.begin(), probes.end());
    if (probes[1] - probes[0] < 1e-6 || probes[2] - probes[1] < 1e-6) continue;
    CHECK(std::abs(nondegeneracy_determinant(m, random_state(3, rng).head(3), probes)) > 0.0);
  }
}

TEST_CASE("tangent planes of Liouville tori") {
  const auto flat = flat13();
  const auto tf = torus_tangent_frame(flat, vec({0.2, 0.4, 1.0, 1.0}), default_probes(flat));
  CHECK(intersection_dimension(tf.frame, maslov::LagrangianFrame::vertical(2)) == 0);
  CHECK(intersection_dimension(tf.frame, maslov::LagrangianFrame::horizontal(2)) == 2);

  const auto m = example2();
  const auto on_cycle = torus_tangent_frame(m, vec({0.1, 0.4, 0.0, 0.8}), default_probes(m));
  CHECK(intersection_dimension(on_cycle.frame, maslov::LagrangianFrame::vertical(2)) >= 1);

  Rng rng(10);
  for (const auto& mm : {nonflat2(), nonflat3()})
    for (int s = 0; s < 20; ++s) {
      const auto f = torus_tangent_frame(mm, random_state(mm.n(), rng), default_probes(mm));
      CHECK(f.symplectic_residual < 1e-8);
    }
}

TEST_CASE("coordinate loops: trivial for interior levels") {
  const auto m = example2();
  const auto q = FirstIntegralPolynomial::from_roots(1.0, {3.5});
  REQUIRE(image_membership(m, q) == ImageClass::InteriorDiffeo);
  for (int i = 0; i < 2; ++i) {
    const auto cl = coordinate_loop(m, q, i, 512, vec({0.75, 0.3}));
    CHECK(cl.full_circle);
    CHECK(maslov::maslov_index(*cl.loop) == 0);
    CHECK(maslov::signed_crossings(*cl.loop, maslov::LagrangianFrame::vertical(2)) == 0);
  }
  const auto m3 = nonflat3();
  const auto q3 = FirstIntegralPolynomial::from_roots(0.7, {2.0, 4.5});
  for (int i = 0; i < 3; ++i) CHECK(coordinate_loop_maslov(m3, q3, i, 256, vec({0.1, 0.5, 0.9})) == 0);
}

TEST_CASE("coordinate loops: nontrivial when a root sits in a range") {
  const auto m = example2();
  const auto q = FirstIntegralPolynomial::from_roots(1.0, {2.0});
  REQUIRE(image_membership(m, q) == ImageClass::NontrivialMaslov);
  const RealVector base = vec({0.75, 0.3});  // lambda_1(0.75) = 1.9 < 2
  const auto c1 = coordinate_loop(m, q, 0, 512, base);
  CHECK_FALSE(c1.full_circle);
  const int idx = maslov::maslov_index(*c1.loop);
  CHECK(idx != 0);
  CHECK(maslov::signed_crossings(*c1.loop, maslov::LagrangianFrame::vertical(2)) == idx);
  // every sample lies on the level
  for (const auto& s : c1.states)
    for (double tau : {0.0, 3.0}) CHECK(std::abs(J_tau(m, s.head(2), s.tail(2), tau) - q(tau)) < 1e-8);
  CHECK(coordinate_loop_maslov(m, q, 1, 512, base) == 0);
  CHECK_THROWS_AS(coordinate_loop(m, q, 0, 512, vec({0.25, 0.3})), Error);  // lambda_1 = 2.1 > root
}

TEST_CASE("crossings along geodesic orbits are non-negative") {
  const auto m = example2();
  const auto q = FirstIntegralPolynomial::from_roots(1.0, {2.0});
  const RealVector base = vec({0.75, 0.3});
  RealVector s(4);
  s << base, liouville_torus_point(m, q, base);
  const auto ev = orbit_crossing_events(m, s, 10.0, 4000);
  CHECK(!ev.empty());
  for (const auto& e : ev) CHECK(e.sign > 0);

  Rng rng(12);
  for (const auto& mm : {nonflat2(), nonflat3()})
    for (int k = 0; k < 3; ++k)
      for (const auto& e : orbit_crossing_events(mm, random_state(mm.n(), rng), 5.0, 4000)) CHECK(e.sign >= 0);
}

TEST_CASE("flat geodesic flow keeps y constant") {
  const auto m = flat13();
  const auto traj = poisson::hamiltonian_flow(J_field(m, 0.0), vec({0.1, 0.2, 0.7, -0.4}), 5.0, 1000);
  for (const auto& s : traj.states) CHECK((s.tail(2) - vec({0.7, -0.4})).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("probe integrals are conserved by the J_0 flow") {
  Rng rng(14);
  for (const auto& m : {nonflat2(), nonflat3()}) {
    const RealVector p0 = random_state(m.n(), rng);
    const auto traj = poisson::hamiltonian_flow(J_field(m, 0.0), p0, 10.0, 10000);
    for (double t : default_probes(m)) {
      const auto j = J_field(m, t);
      double drift = 0.0;
      for (const auto& s : traj.states) drift = std::max(drift, std::abs(j(s) - j(p0)));
      CHECK(drift < 1e-5);
    }
  }
}
