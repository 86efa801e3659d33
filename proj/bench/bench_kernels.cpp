// Serial reference vs OpenMP kernels: the successor-graph build and the full decision
// (whose loop search runs candidates in parallel batches).
#include <benchmark/benchmark.h>

#include <memory>

#include <omp.h>

#include "gtl/decision.hpp"
#include "gtl/ltl.hpp"
#include "gtl/successor_graph.hpp"

using namespace gtl;

namespace {

const char* const kFormulas[] = {
    "F (p -> X p)",
    "G (p -> q) -> F q",
    "(p <- q) | X G p",
    "G (p -> q) -> (G p -> G q)",  // translated below
};

Formula benchFormula(std::size_t i) {
  const Formula f = parse(kFormulas[i]);
  return i == 3 ? translate(f) : f;
}

const MomentGraph& graphFor(std::size_t i) {
  static std::vector<std::unique_ptr<MomentGraph>> cache(std::size(kFormulas));
  if (!cache[i]) {
    const Closure sigma(benchFormula(i));
    cache[i] = std::make_unique<MomentGraph>(sigma, enumerateMoments(sigma));
  }
  return *cache[i];
}

void BM_GraphSerial(benchmark::State& state) {
  const auto& g = graphFor(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(g.buildSerial());
  state.counters["moments"] = static_cast<double>(g.size());
}

void BM_GraphParallel(benchmark::State& state) {
  const auto& g = graphFor(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(g.buildParallel(static_cast<int>(state.range(1))));
  state.counters["moments"] = static_cast<double>(g.size());
}

void BM_Decide(benchmark::State& state) {
  const Formula f = benchFormula(static_cast<std::size_t>(state.range(0)));
  DecideOptions options;
  options.maxSigma = 16;
  options.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(decide(f, options));
}

void formulaArgs(benchmark::internal::Benchmark* b) {
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(std::size(kFormulas)); ++i) b->Arg(i);
}

void formulaThreadArgs(benchmark::internal::Benchmark* b) {
  const int maxThreads = omp_get_max_threads();
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(std::size(kFormulas)); ++i) {
    for (int t = 1; t <= maxThreads; t *= 2) b->Args({i, t});
    if ((maxThreads & (maxThreads - 1)) != 0) b->Args({i, maxThreads});
  }
}

}  // namespace

BENCHMARK(BM_GraphSerial)->Apply(formulaArgs)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GraphParallel)->Apply(formulaThreadArgs)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Decide)->Apply(formulaThreadArgs)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
