#include <benchmark/benchmark.h>

#include "brs/dp.hpp"

namespace {

void BM_KnapsackTable(benchmark::State& state) {
  const brs::Distribution u = brs::uniform_on(1.0);
  brs::PolicyOptions opts;
  opts.check_grid = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(brs::knapsack_value(u, state.range(0), 512, opts));
  }
}
BENCHMARK(BM_KnapsackTable)->Arg(10)->Arg(50);

void BM_SubsequenceTable(benchmark::State& state) {
  const brs::Distribution u = brs::uniform_on(1.0);
  brs::PolicyOptions opts;
  opts.check_grid = false;
  opts.store_alphas = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(brs::subsequence_value(u, state.range(0), 512, opts));
  }
}
BENCHMARK(BM_SubsequenceTable)->Arg(50)->Arg(1000);

void BM_PolicySimulation(benchmark::State& state) {
  const brs::Distribution u = brs::uniform_on(1.0);
  brs::PolicyOptions opts;
  opts.check_grid = false;
  const brs::PolicyTable table = brs::knapsack_value(u, 50, 512, opts);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brs::simulate_policy(table, state.range(0), 3));
  }
}
BENCHMARK(BM_PolicySimulation)->Arg(1000);

void BM_ClairvoyantLis(benchmark::State& state) {
  brs::SplitMix64 rng(5);
  std::vector<double> sample(static_cast<std::size_t>(state.range(0)));
  for (auto& x : sample) x = rng.uniform01();
  for (auto _ : state) {
    benchmark::DoNotOptimize(brs::clairvoyant_lis(sample));
  }
}
BENCHMARK(BM_ClairvoyantLis)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
