#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "segstat/parallel.hpp"

namespace segstat {

/// One named vector of per-subject metric values (one test set, one metric,
/// one label). The unit of all statistical analysis downstream.
struct MetricSeries {
  std::string name;
  std::string unit;
  std::vector<double> values;

  std::size_t n() const { return values.size(); }
};

/// Throws EmptySeries / NonFiniteValue if the series violates its invariants.
void validate(const MetricSeries& series);

/// Parametric summary: mu, sigma (divisor n by default), sem = sigma/sqrt(n),
/// mean-independent CI [-z*sem, +z*sem], width, normalized width nu = width/mu.
struct CiReport {
  std::size_t n = 0;
  double level = 0.95;
  double z = 0.0;  // the quantile actually used
  double mu = 0.0;
  double sigma = 0.0;
  double sem = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double width = 0.0;
  double nu = 0.0;
  bool nu_defined = false;
};

struct ParametricOptions {
  double level = 0.95;
  /// Population (divisor n) matches the reference formulas; divisor n-1 is
  /// available but off by default.
  bool sample_stddev = false;
  /// When set, overrides the exact normal quantile (e.g. the literal 1.96).
  std::optional<double> z_override;
};

CiReport parametric_ci(const MetricSeries& series, const ParametricOptions& opts = {});

/// Bootstrap summary over m resamples of size n drawn with replacement.
/// Resample i consumes the counter stream (seed, resample|i) only, so the
/// report is bit-identical for any thread count.
struct BootstrapReport {
  std::size_t m = 0;
  std::uint64_t seed = 0;
  double level = 0.95;
  double mu_star = 0.0;
  double sem_star = 0.0;
  double a_star = 0.0;  // absolute percentile bounds of the resample means
  double b_star = 0.0;
  double ci_lo = 0.0;  // mean-independent: a* - mu*, b* - mu*
  double ci_hi = 0.0;
  double width = 0.0;
  double nu_star = 0.0;
  bool nu_defined = false;
  std::vector<double> resample_means;  // retained only on request
};

struct BootstrapOptions {
  std::size_t m = 15000;
  double level = 0.95;
  std::uint64_t seed = 0;
  bool keep_means = false;
  RunMode mode = RunMode::Parallel;
};

BootstrapReport bootstrap_ci(const MetricSeries& series, const BootstrapOptions& opts = {});

/// Exact enumeration of all n^n equally likely resamples (n <= 8). Same
/// estimators and percentile rule as bootstrap_ci; serves as its oracle.
struct ExhaustiveBootstrap {
  BootstrapReport report;
  /// Central moments of the exact resample-mean distribution, for Monte Carlo
  /// error budgets: [0]=variance, [1]=fourth central moment.
  double variance = 0.0;
  double fourth_central_moment = 0.0;
  /// Exact quantile of the resample-mean distribution at probability p,
  /// under the same interpolation rule.
  double quantile(double p) const;

  /// Distribution inverse CDF: the smallest resample mean whose cumulative
  /// probability reaches p. This is the right bracket for Monte Carlo sample
  /// quantiles (the interpolated rule sits between atoms near the extremes).
  double inverse_cdf(double p) const;

  std::vector<double> atom_values;   // distinct resample means, ascending
  std::vector<std::uint64_t> atom_weights;
  std::uint64_t total = 0;  // n^n
};

ExhaustiveBootstrap exhaustive_bootstrap(const MetricSeries& series, double level = 0.95);

namespace detail {

/// Means of m with-replacement resamples; the parallel form must equal the
/// serial reference bit-for-bit.
std::vector<double> resample_means(const std::vector<double>& values, std::size_t m,
                                   std::uint64_t seed, RunMode mode);

/// Summary statistics shared by the Monte Carlo and exhaustive paths.
BootstrapReport summarize_resample_means(std::vector<double> means, double level,
                                         std::uint64_t seed, bool keep_means);

}  // namespace detail
}  // namespace segstat
