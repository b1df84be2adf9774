#include <benchmark/benchmark.h>

#include <random>

#include "maslovkit/homog.hpp"
#include "maslovkit/poisson.hpp"
#include "maslovkit/projtori.hpp"
#include "maslovkit/topo7.hpp"

using namespace mk;

namespace {

projtori::ModelMetricPair metric3() {
  return projtori::ModelMetricPair(projtori::SeparatedEigenFunctions(
      {{1, {}, {0.2}}, {3, {0.25}, {0.0, 0.1}}, {6, {0.1, 0.1}, {0.3}}}));
}

RealVector state3() {
  RealVector s(6);
  s << 0.1, 0.4, 0.7, 0.3, -1.2, 0.8;
  return s;
}

}  // namespace

static void BM_JTauCoordinate(benchmark::State& state) {
  const auto m = metric3();
  const RealVector s = state3();
  for (auto _ : state) benchmark::DoNotOptimize(projtori::J_tau_coordinate(m, s.head(3), s.tail(3), 2.0));
}
BENCHMARK(BM_JTauCoordinate);

static void BM_JTauTensor(benchmark::State& state) {
  const auto m = metric3();
  const RealVector s = state3();
  for (auto _ : state) benchmark::DoNotOptimize(projtori::J_tau_tensor(m, s.head(3), s.tail(3), 2.0));
}
BENCHMARK(BM_JTauTensor);

static void BM_VectorFieldXJ(benchmark::State& state) {
  const auto m = metric3();
  const RealVector s = state3();
  for (auto _ : state) benchmark::DoNotOptimize(projtori::vector_field_XJ(m, s, 2.0));
}
BENCHMARK(BM_VectorFieldXJ);

// RK4 steps of the geodesic flow, analytic field vs central differences
static void BM_GeodesicFlow(benchmark::State& state) {
  const auto m = metric3();
  const auto h = projtori::J_field(m, 0.0, state.range(0) != 0);
  const RealVector s = state3();
  for (auto _ : state) benchmark::DoNotOptimize(poisson::hamiltonian_flow(h, s, 1.0, 1000));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_GeodesicFlow)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_DiracBracketWKS(benchmark::State& state) {
  Rng rng(3);
  const RealVector p = homog::random_on_shell_point(rng).to_real();
  const auto c = homog::sphere_constraints();
  const auto h1 = homog::h_field(1), h5 = homog::h_field(5);
  for (auto _ : state) benchmark::DoNotOptimize(poisson::dirac_bracket(h1, h5, p, c));
}
BENCHMARK(BM_DiracBracketWKS);

static void BM_EnumerateAdmissible(benchmark::State& state) {
  const long long r = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(topo7::enumerate_admissible(topo7::Box::cube(-r, r)));
}
BENCHMARK(BM_EnumerateAdmissible)->Arg(2)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
