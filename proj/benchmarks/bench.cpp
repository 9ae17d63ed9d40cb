#include <benchmark/benchmark.h>

#include "stresskit/generators.hpp"
#include "stresskit/trace.hpp"

using namespace stresskit;

static void BM_StressBasisCrossPolytope(benchmark::State& state) {
  Generated g = gen_cross_polytope_boundary(4, 3, 7);
  g.R.mode = state.range(0) ? NumberMode::Exact : NumberMode::Floating;
  for (auto _ : state) {
    StressBasis b = stress_basis(g.K, g.R, int(state.range(1)));
    benchmark::DoNotOptimize(b.basis.size());
  }
}
BENCHMARK(BM_StressBasisCrossPolytope)
    ->ArgsProduct({{0, 1}, {2, 3}})
    ->Unit(benchmark::kMillisecond);

static void BM_TraceSchlegel(benchmark::State& state) {
  Generated g = gen_schlegel_simplex(4);
  auto O = orient(g.K);
  StressBasis b = stress_basis(g.K, g.R, 3);
  for (auto _ : state) {
    TraceResult t = trace(b.basis[0], g.K, g.R, *O, int(state.range(0)));
    benchmark::DoNotOptimize(t.stress.weighted);
  }
}
BENCHMARK(BM_TraceSchlegel)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_ReciprocalLiftedGrid(benchmark::State& state) {
  Generated g = gen_lifted_grid(int(state.range(0)), 2, 11);
  auto O = orient(g.K);
  for (auto _ : state) {
    auto rr = build_reciprocal(*g.stress, g.K, g.R, *O);
    benchmark::DoNotOptimize(rr.rec.points);
  }
}
BENCHMARK(BM_ReciprocalLiftedGrid)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
