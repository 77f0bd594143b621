#include <benchmark/benchmark.h>

#include <cstdint>

#include "sigmaq/last_passage_pricing.hpp"
#include "sigmaq/path_engine.hpp"
#include "sigmaq/q_sampler.hpp"
#include "sigmaq/sigma_functionals.hpp"

namespace {

using namespace sigmaq;

TimeGrid grid_for(const benchmark::State& state) {
  return TimeGrid::make(1.0 / static_cast<double>(state.range(0)), 1.0);
}

void BM_SimulateBm(benchmark::State& state) {
  const auto grid = grid_for(state);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_bm(seed++, grid));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.steps()));
}
BENCHMARK(BM_SimulateBm)->Arg(64)->Arg(1024);

void BM_SimulateBmLocalTime(benchmark::State& state) {
  const auto grid = grid_for(state);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_bm_local_time(seed++, grid));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.steps()));
}
BENCHMARK(BM_SimulateBmLocalTime)->Arg(1024);

void BM_LevyConstruction(benchmark::State& state) {
  const auto grid = grid_for(state);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_abs_bm_levy(seed++, grid));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.steps()));
}
BENCHMARK(BM_LevyConstruction)->Arg(1024);

void BM_BesselScale(benchmark::State& state) {
  const auto grid = grid_for(state);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_bessel_scale(simulate_bessel(seed++, grid, 0.6), 0.7, 0.1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.steps()));
}
BENCHMARK(BM_BesselScale)->Arg(1024);

void BM_BesqStep(benchmark::State& state) {
  Rng rng(1);
  const double delta = static_cast<double>(state.range(0)) / 10.0;
  double y2 = 0.0;
  for (auto _ : state) {
    y2 = besq_step(y2, delta, 1.0 / 1024.0, rng);
    benchmark::DoNotOptimize(y2);
  }
}
BENCHMARK(BM_BesqStep)->Arg(6)->Arg(10)->Arg(30);

void BM_QWindowSample(benchmark::State& state) {
  const auto grid = grid_for(state);
  const MeasureTag tags[] = {MeasureTag::q_abs_bm(), MeasureTag::w_minus()};
  const auto& tag = tags[state.range(1)];
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_q_window(tag, 0.5, seed++, grid));
}
BENCHMARK(BM_QWindowSample)->Args({1024, 0})->Args({1024, 1});

void BM_LastPassageCdf(benchmark::State& state) {
  const PutSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(last_passage_cdf(spec, 1000, 7, 1));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_LastPassageCdf)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
