// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include "convexchain/exactdist.hpp"
#include "convexchain/geometry.hpp"

using namespace convexchain;

static void BM_ExactRowParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact::distribution_exact(n));
}

static void BM_ExactRowSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact::distribution_exact_serial(n));
}

static void BM_MonteCarloParallel(benchmark::State& state) {
  const geometry::SimulationConfig cfg{static_cast<int>(state.range(0)), 2000, 1, 0};
  for (auto _ : state) benchmark::DoNotOptimize(geometry::monte_carlo(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.reps);
}

static void BM_MonteCarloSerial(benchmark::State& state) {
  const geometry::SimulationConfig cfg{static_cast<int>(state.range(0)), 2000, 1, 1};
  for (auto _ : state) benchmark::DoNotOptimize(geometry::monte_carlo_serial(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.reps);
}

BENCHMARK(BM_ExactRowParallel)->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactRowSerial)->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
