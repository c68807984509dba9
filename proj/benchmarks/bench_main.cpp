#include <benchmark/benchmark.h>

#include "egcount/equivalence.hpp"
#include "egcount/exact_counts.hpp"
#include "egcount/mcmc.hpp"
#include "egcount/oracle.hpp"

using namespace egcount;

namespace {

// Chain state after a warm-up so steps run on a typical graph, not the empty one.
Pdag warmed_state(int n, ChainRng& rng) {
  Pdag g(n);
  for (int i = 0; i < 200000; ++i) step_in_place(g, rng);
  return g;
}

void BM_Step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ChainRng rng(1);
  Pdag g = warmed_state(n, rng);
  std::uint64_t changed = 0;
  for (auto _ : state) changed += step_in_place(g, rng);
  state.counters["changed"] = benchmark::Counter(static_cast<double>(changed), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_Step)->Arg(4)->Arg(10)->Arg(20)->Arg(31);

void BM_IsEssentialGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ChainRng rng(2);
  const Pdag g = warmed_state(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(is_essential_graph(g));
}
BENCHMARK(BM_IsEssentialGraph)->Arg(10)->Arg(31);

void BM_CdagDagColumn(benchmark::State& state) {
  for (auto _ : state) {
    for (int n = 2; n <= 31; ++n) benchmark::DoNotOptimize(exact_cdag_dag_ratio(n).render(5));
  }
}
BENCHMARK(BM_CdagDagColumn);

void BM_Census(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_census(n, 1));
}
BENCHMARK(BM_Census)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
