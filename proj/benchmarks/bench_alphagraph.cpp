#include <benchmark/benchmark.h>

#include "alphagraph/branching.hpp"
#include "alphagraph/components.hpp"
#include "alphagraph/experiments.hpp"
#include "alphagraph/sampler.hpp"

using namespace alphagraph;

namespace {

void BM_SampleFast(benchmark::State& state) {
  const Model model(ModelParams::alpha_model(static_cast<Vertex>(state.range(0)), 1.0, 2.0));
  std::uint64_t r = 0;
  for (auto _ : state) {
    const Graph g = sample_fast(model, replicate_stream(1, r++));
    benchmark::DoNotOptimize(g.edge_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleFast)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);

void BM_SampleNaive(benchmark::State& state) {
  const Model model(ModelParams::alpha_model(static_cast<Vertex>(state.range(0)), 1.0, 2.0));
  std::uint64_t r = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_naive(model, replicate_stream(1, r++)).edge_count());
}
BENCHMARK(BM_SampleNaive)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Filtration(benchmark::State& state) {
  const Model model(ModelParams::alpha_model(static_cast<Vertex>(state.range(0)), 1.0, 2.0));
  std::uint64_t r = 0;
  for (auto _ : state) {
    const Filtration f = sample_filtration(model, replicate_stream(2, r++));
    benchmark::DoNotOptimize(f.subgraph_at(1.5).edge_count());
  }
}
BENCHMARK(BM_Filtration)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_Components(benchmark::State& state) {
  const Graph g = sample_fast(Model(ModelParams::alpha_model(static_cast<Vertex>(state.range(0)), 1.0, 2.0)),
                              Stream(3));
  for (auto _ : state) benchmark::DoNotOptimize(components(g).largest);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()));
}
BENCHMARK(BM_Components)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);

void BM_Triangles(benchmark::State& state) {
  const Graph g = sample_fast(Model(ModelParams::alpha_model(100'000, 1.5, 1.2)), Stream(4));
  for (auto _ : state) benchmark::DoNotOptimize(triangle_stats(g).triangles);
}
BENCHMARK(BM_Triangles)->Unit(benchmark::kMillisecond);

void BM_ExtinctionPoisson(benchmark::State& state) {
  const Pgf pgf = Pgf::poisson(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(extinction(pgf).extinction_q);
}
BENCHMARK(BM_ExtinctionPoisson);

void BM_ExtinctionFiniteDegree(benchmark::State& state) {
  const Pgf pgf = finite_degree_pgf(ModelParams::alpha_model(static_cast<Vertex>(state.range(0)), 1.0, 2.0));
  for (auto _ : state) benchmark::DoNotOptimize(extinction(pgf).extinction_q);
}
BENCHMARK(BM_ExtinctionFiniteDegree)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
