#include <benchmark/benchmark.h>

#include "bml/classify.hpp"
#include "bml/diagonal.hpp"
#include "bml/experiment.hpp"
#include "bml/grid.hpp"

namespace {

void BM_Step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bml::Configuration c = bml::sample_uniform_colored(n, n * n / 4, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bml::step(c).config);
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Step)->Arg(16)->Arg(64)->Arg(256);

void BM_StepTraced(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bml::Configuration c = bml::sample_uniform_colored(n, n * n / 4, 7);
  bml::MoveTrace trace;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bml::step(c, trace).config);
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_StepTraced)->Arg(64);

void BM_CanonicalKey(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bml::Configuration c = bml::sample_uniform_colored(n, n * n / 3, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bml::canonical_key(c));
  }
}
BENCHMARK(BM_CanonicalKey)->Arg(16)->Arg(64);

void BM_DecomposeArcs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bml::Configuration c = bml::sample_uniform_colored(n, n / 3, 13);
  const bml::Projection p = bml::project(c, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bml::decompose_arcs(p));
  }
}
BENCHMARK(BM_DecomposeArcs)->Arg(64)->Arg(1024);

void BM_Classify(benchmark::State& state) {
  const int n = 16;
  const long long m = state.range(0);
  for (auto _ : state) {
    const bml::Configuration c = bml::sample_uniform_colored(n, m, 21);
    benchmark::DoNotOptimize(bml::classify(c, bml::ClassifyLimits::defaults_for(n)));
  }
}
BENCHMARK(BM_Classify)->Arg(7)->Arg(40)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
