// Serial-reference vs OpenMP comparisons for the heavy kernels. The two forms
// are bit-identical by contract (the tests assert it); these benchmarks show
// what the parallel forms buy.

#include <benchmark/benchmark.h>

#include "segstat/ci.hpp"
#include "segstat/edt.hpp"
#include "segstat/metrics.hpp"
#include "segstat/simulate.hpp"
#include "segstat/subsample.hpp"
#include "support/generators.hpp"

using namespace segstat;

namespace {

MetricSeries bench_series(std::size_t n) {
  auto rng = testing::test_stream(1, 0);
  return testing::gaussian_series(n, 80.0, 12.0, rng);
}

void bootstrap_means(benchmark::State& state, RunMode mode) {
  const MetricSeries series = bench_series(334);
  for (auto _ : state) {
    auto means = detail::resample_means(series.values, 15000, 7, mode);
    benchmark::DoNotOptimize(means.data());
  }
}
void bm_bootstrap_serial(benchmark::State& state) { bootstrap_means(state, RunMode::Serial); }
void bm_bootstrap_parallel(benchmark::State& state) { bootstrap_means(state, RunMode::Parallel); }

void edt(benchmark::State& state, RunMode mode) {
  auto rng = testing::test_stream(2, 0);
  const std::array<std::uint32_t, 3> dims{96, 96, 96};
  std::vector<std::uint8_t> sites(std::size_t(96) * 96 * 96, 0);
  for (auto& s : sites) s = rng.next_index(1000) < 5 ? 1 : 0;
  for (auto _ : state) {
    auto grid = squared_distance_transform(dims, {1.0, 0.8, 1.2}, sites, mode);
    benchmark::DoNotOptimize(grid.data());
  }
}
void bm_edt_serial(benchmark::State& state) { edt(state, RunMode::Serial); }
void bm_edt_parallel(benchmark::State& state) { edt(state, RunMode::Parallel); }

void hd95_strategy(benchmark::State& state, NnStrategy strategy) {
  auto rng = testing::test_stream(3, 0);
  const LabelVolume gt = testing::random_mask({48, 48, 48}, {1.0, 1.0, 1.0}, rng, 200);
  const LabelVolume pred = testing::random_mask({48, 48, 48}, {1.0, 1.0, 1.0}, rng, 200);
  for (auto _ : state) {
    auto result = hd95(gt, pred, {strategy, RunMode::Parallel});
    benchmark::DoNotOptimize(&result);
  }
}
void bm_hd95_brute(benchmark::State& state) { hd95_strategy(state, NnStrategy::BruteForce); }
void bm_hd95_edt(benchmark::State& state) { hd95_strategy(state, NnStrategy::DistanceTransform); }

void sweep(benchmark::State& state, RunMode mode) {
  const MetricSeries series = bench_series(110);
  SweepConfig config;
  config.sizes = {10, 30, 100};
  config.repeats = 20;
  config.m = 2000;
  config.seed = 5;
  config.mode = mode;
  for (auto _ : state) {
    auto result = run_sweep(series, config);
    benchmark::DoNotOptimize(&result);
  }
}
void bm_sweep_serial(benchmark::State& state) { sweep(state, RunMode::Serial); }
void bm_sweep_parallel(benchmark::State& state) { sweep(state, RunMode::Parallel); }

void coverage(benchmark::State& state, RunMode mode) {
  const SyntheticDistribution dist = parse_distribution("gaussian:mu=89.7,sigma=2.8");
  CoverageConfig config;
  config.n = 110;
  config.trials = 200;
  config.m = 1000;
  config.seed = 11;
  config.mode = mode;
  for (auto _ : state) {
    auto report = run_coverage(dist, config);
    benchmark::DoNotOptimize(&report);
  }
}
void bm_coverage_serial(benchmark::State& state) { coverage(state, RunMode::Serial); }
void bm_coverage_parallel(benchmark::State& state) { coverage(state, RunMode::Parallel); }

}  // namespace

BENCHMARK(bm_bootstrap_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_bootstrap_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_edt_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_edt_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_hd95_brute)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_hd95_edt)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sweep_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sweep_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_coverage_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_coverage_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
