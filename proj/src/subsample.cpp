#include "segstat/subsample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "segstat/errors.hpp"
#include "segstat/stats.hpp"

namespace segstat {

MetricSeries draw_subsample(const MetricSeries& series, std::size_t k, RandomStream& stream) {
  validate(series);
  const std::size_t n = series.n();
  if (k < 1 || k > n)
    fail(errc::size_exceeds_population,
         "subsample size " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");

  // Partial Fisher-Yates over the index set, then ascending-index extraction;
  // order is irrelevant downstream and this keeps k = n the identity.
  std::vector<std::uint32_t> indices(n);
  std::iota(indices.begin(), indices.end(), 0u);
  for (std::size_t d = 0; d < k; ++d) {
    const std::size_t pick = d + stream.next_index(std::uint32_t(n - d));
    std::swap(indices[d], indices[pick]);
  }
  indices.resize(k);
  std::sort(indices.begin(), indices.end());

  MetricSeries sub;
  sub.name = series.name;
  sub.unit = series.unit;
  sub.values.reserve(k);
  for (std::uint32_t idx : indices) sub.values.push_back(series.values[idx]);
  return sub;
}

namespace {

MetricSeries draw_with_replacement(const MetricSeries& series, std::size_t k,
                                   RandomStream& stream) {
  MetricSeries sub;
  sub.name = series.name;
  sub.unit = series.unit;
  sub.values.reserve(k);
  const std::uint32_t n = std::uint32_t(series.n());
  for (std::size_t d = 0; d < k; ++d) sub.values.push_back(series.values[stream.next_index(n)]);
  return sub;
}

DrawingRecord summarize_drawing(const MetricSeries& sub, std::size_t k, std::size_t j, double z,
                                const SweepConfig& config, std::uint64_t cell_seed) {
  DrawingRecord rec;
  rec.k = k;
  rec.j = j;
  rec.mu = stats::mean(sub.values);
  rec.sigma = stats::population_stddev(sub.values);
  const auto ci = stats::ci_from_moments(rec.mu, rec.sigma, k, z);
  rec.sem = ci.sem;
  rec.nu = ci.nu;
  rec.nu_defined = ci.nu_defined;

  BootstrapOptions boot;
  boot.m = config.m;
  boot.level = config.level;
  boot.seed = cell_seed;
  boot.mode = RunMode::Serial;  // the sweep parallelizes across (k, j) cells
  const BootstrapReport rep = bootstrap_ci(sub, boot);
  rec.boot_mu = rep.mu_star;
  rec.boot_sem = rep.sem_star;
  rec.boot_a = rep.a_star;
  rec.boot_b = rep.b_star;
  return rec;
}

}  // namespace

SubsampleSweepResult run_sweep(const MetricSeries& series, const SweepConfig& config) {
  validate(series);
  const std::size_t n = series.n();
  if (config.sizes.empty()) fail(errc::bad_arguments, "sweep requires at least one size");
  for (std::size_t k : config.sizes)
    if (k < 1 || k > n)
      fail(errc::size_exceeds_population, "sweep size " + std::to_string(k) + " outside [1, n]");
  if (config.repeats < 1) fail(errc::bad_arguments, "sweep repeats must be >= 1");

  SubsampleSweepResult result;
  result.config = config;
  result.z = stats::z_for_level(config.level);
  result.full_set = parametric_ci(series, ParametricOptions{config.level, false, {}});

  const std::size_t cells = config.sizes.size() * config.repeats;
  result.drawings.resize(cells);

  auto run_cell = [&](std::size_t cell) {
    const std::size_t size_idx = cell / config.repeats;
    const std::size_t j = cell % config.repeats;
    const std::size_t k = config.sizes[size_idx];
    RandomStream draw_stream(config.seed, stream_domain::pack(stream_domain::subsample, k, j));
    const MetricSeries sub = config.with_replacement
                                 ? draw_with_replacement(series, k, draw_stream)
                                 : draw_subsample(series, k, draw_stream);
    const std::uint64_t cell_seed = derive_seed(config.seed, stream_domain::derive, k, j);
    result.drawings[cell] = summarize_drawing(sub, k, j, result.z, config, cell_seed);
  };

  if (config.mode == RunMode::Serial) {
    for (std::size_t cell = 0; cell < cells; ++cell) run_cell(cell);
  } else {
    const int threads = parallel::thread_count();
#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (std::int64_t cell = 0; cell < std::int64_t(cells); ++cell) run_cell(std::size_t(cell));
  }

  // Reduce each size's drawings in canonical (j ascending) order. Anchored
  // means keep the k = n row bit-identical to the full-set report.
  result.rows.reserve(config.sizes.size());
  std::vector<double> scratch(config.repeats);
  auto average = [&](auto&& field) {
    for (std::size_t j = 0; j < config.repeats; ++j) scratch[j] = field(j);
    return stats::mean_anchored(scratch);
  };
  for (std::size_t size_idx = 0; size_idx < config.sizes.size(); ++size_idx) {
    const DrawingRecord* cell0 = &result.drawings[size_idx * config.repeats];
    SweepRow row;
    row.k = config.sizes[size_idx];
    row.mu = average([&](std::size_t j) { return cell0[j].mu; });
    row.sigma = average([&](std::size_t j) { return cell0[j].sigma; });
    row.sem = average([&](std::size_t j) { return cell0[j].sem; });
    row.nu = average([&](std::size_t j) { return cell0[j].nu; });
    row.ci_lo = -result.z * row.sem;
    row.ci_hi = result.z * row.sem;
    row.boot_mu = average([&](std::size_t j) { return cell0[j].boot_mu; });
    row.boot_sem = average([&](std::size_t j) { return cell0[j].boot_sem; });
    const double boot_a = average([&](std::size_t j) { return cell0[j].boot_a; });
    const double boot_b = average([&](std::size_t j) { return cell0[j].boot_b; });
    row.boot_ci_lo = boot_a - row.boot_mu;
    row.boot_ci_hi = boot_b - row.boot_mu;
    row.boot_nu = row.boot_mu != 0.0 ? (boot_b - boot_a) / row.boot_mu : 0.0;
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace segstat
