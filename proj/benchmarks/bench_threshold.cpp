#include <benchmark/benchmark.h>

#include "brs/threshold.hpp"

namespace {

void BM_SolveUniform(benchmark::State& state) {
  const brs::MixtureModel model({{100, brs::uniform_on(1.0)}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(brs::solve_brs_equation(model, 2.0));
  }
}
BENCHMARK(BM_SolveUniform);

void BM_SolveHarmonicMixture(benchmark::State& state) {
  std::vector<brs::MixtureComponent> comps;
  for (long k = 1; k <= state.range(0); ++k) {
    comps.push_back({1, brs::uniform_on(static_cast<double>(k))});
  }
  const brs::MixtureModel model(std::move(comps));
  for (auto _ : state) {
    benchmark::DoNotOptimize(brs::solve_brs_equation(model, 1.0));
  }
}
BENCHMARK(BM_SolveHarmonicMixture)->Arg(10)->Arg(100);

void BM_TilingBound(benchmark::State& state) {
  const brs::MixtureModel model({{300, brs::rectangle_area()}, {150, brs::ellipse_area()}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(brs::brs_bound(model, 1.0));
  }
}
BENCHMARK(BM_TilingBound);

}  // namespace
