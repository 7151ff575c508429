#include <benchmark/benchmark.h>

#include "brs/selection.hpp"

namespace {

void BM_GreedyCount(benchmark::State& state) {
  const long n = state.range(0);
  brs::SplitMix64 rng(7);
  std::vector<double> sample(static_cast<std::size_t>(n));
  for (auto& x : sample) x = rng.uniform01();
  const double s = 0.02 * static_cast<double>(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brs::max_feasible_count(sample, s));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GreedyCount)->Arg(1000)->Arg(100000);

void BM_McUniform(benchmark::State& state) {
  const brs::Scenario scenario(brs::IidScenario{100, brs::uniform_on(1.0)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(brs::mc_estimate(scenario, 2.0, state.range(0), 99));
  }
}
BENCHMARK(BM_McUniform)->Arg(1000);

void BM_BruteForce(benchmark::State& state) {
  brs::SplitMix64 rng(11);
  std::vector<double> sample(static_cast<std::size_t>(state.range(0)));
  for (auto& x : sample) x = rng.uniform01();
  for (auto _ : state) {
    benchmark::DoNotOptimize(brs::brute_force_max_count(sample, 1.5));
  }
}
BENCHMARK(BM_BruteForce)->Arg(12)->Arg(18);

}  // namespace
