#pragma once

#include <cstdint>
#include <vector>

#include "segstat/ci.hpp"
#include "segstat/rng.hpp"

namespace segstat {

struct SweepConfig {
  std::vector<std::size_t> sizes;  // ascending subsample sizes, each in [1, n]
  std::size_t repeats = 100;       // drawings per size
  std::size_t m = 15000;           // bootstrap resamples per drawing
  double level = 0.95;
  std::uint64_t seed = 0;
  /// Drawings are without replacement by default (at k = n the subsample is
  /// then exactly the full set); with-replacement drawing is available for
  /// comparison.
  bool with_replacement = false;
  RunMode mode = RunMode::Parallel;
};

/// One (k, j) drawing: the parametric summary of the subsample and its
/// bootstrap counterpart.
struct DrawingRecord {
  std::size_t k = 0;
  std::size_t j = 0;
  double mu = 0.0;
  double sigma = 0.0;  // divisor k
  double sem = 0.0;
  double nu = 0.0;  // 2*z*sem/mu, per drawing
  bool nu_defined = false;
  double boot_mu = 0.0;
  double boot_sem = 0.0;
  double boot_a = 0.0;  // absolute percentile bounds
  double boot_b = 0.0;
};

/// Per-size averages over the `repeats` drawings. Parametric quantities are
/// averaged individually (nu as ratio-of-each); the bootstrap CI is assembled
/// from averaged bounds minus the averaged mean, and boot_nu is the
/// ratio-of-averages (b_k - a_k) / mu_k.
struct SweepRow {
  std::size_t k = 0;
  double mu = 0.0;
  double sigma = 0.0;
  double sem = 0.0;
  double ci_lo = 0.0;  // -z*sem
  double ci_hi = 0.0;
  double nu = 0.0;
  double boot_mu = 0.0;
  double boot_sem = 0.0;
  double boot_ci_lo = 0.0;  // avg(a) - avg(mu*)
  double boot_ci_hi = 0.0;
  double boot_nu = 0.0;
};

struct SubsampleSweepResult {
  SweepConfig config;
  double z = 0.0;
  std::vector<SweepRow> rows;              // one per size, ascending
  std::vector<DrawingRecord> drawings;     // (k, j) in row-major order
  CiReport full_set;                       // the k = n reference
};

/// k values sampled uniformly without replacement; the returned series keeps
/// the original index order (so k = n reproduces the series bit-for-bit).
MetricSeries draw_subsample(const MetricSeries& series, std::size_t k, RandomStream& stream);

SubsampleSweepResult run_sweep(const MetricSeries& series, const SweepConfig& config);

}  // namespace segstat
