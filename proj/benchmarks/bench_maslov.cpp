#include <benchmark/benchmark.h>

#include "maslovkit/maslov.hpp"

using namespace mk;

static void BM_MaslovIndex(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int samples = static_cast<int>(state.range(1));
  const auto loop = maslov::canonical_loop(n, samples);
  for (auto _ : state) benchmark::DoNotOptimize(maslov::maslov_index(loop));
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_MaslovIndex)->ArgsProduct({{1, 3, 8}, {64, 1024}});

static void BM_SignedCrossings(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto loop = maslov::canonical_loop(n, 256);
  const auto ref = maslov::LagrangianFrame::vertical(n);
  for (auto _ : state) benchmark::DoNotOptimize(maslov::signed_crossings(loop, ref));
}
BENCHMARK(BM_SignedCrossings)->Arg(1)->Arg(3)->Arg(8);

static void BM_IntersectionDimension(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  const maslov::LagrangianFrame p(random_unitary(n, rng)), q(random_unitary(n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(maslov::intersection_dimension(p, q));
}
BENCHMARK(BM_IntersectionDimension)->RangeMultiplier(2)->Range(2, 32);
