#pragma once

#include <span>
#include <vector>

namespace segstat::stats {

double mean(std::span<const double> values);

/// Population variance / standard deviation (divisor n). Two-pass.
double population_variance(std::span<const double> values);
double population_stddev(std::span<const double> values);

/// Sample (divisor n-1) standard deviation; n == 1 yields 0.
double sample_stddev(std::span<const double> values);

/// Mean computed relative to the first element. Exact when all inputs are
/// bit-identical, which the subsample sweep relies on at k == n.
double mean_anchored(std::span<const double> values);

/// Percentile by linear interpolation between order statistics: the value at
/// fractional index p*(m-1) of the ascending-sorted multiset.
double percentile_sorted(std::span<const double> sorted_values, double p);

/// Convenience: copies, sorts, interpolates.
double percentile(std::vector<double> values, double p);

/// Standard normal quantile (inverse CDF). normal_quantile(0.975) = 1.959964...
double normal_quantile(double p);

/// Standard normal CDF.
double normal_cdf(double x);

/// Two-sided z for a confidence level in (0,1): normal_quantile((1+level)/2).
double z_for_level(double level);

/// The z actually printed in the reference tables for a given level (two
/// decimals; 1.96 at level 0.95).
double z_for_level_rounded(double level);

/// Parametric dispersion summary of (mu, sigma, n) at a given z:
/// sem = sigma/sqrt(n), ci = [-z*sem, +z*sem], width = 2*z*sem, nu = width/mu.
struct MomentsCi {
  double sem = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double width = 0.0;
  double nu = 0.0;
  bool nu_defined = false;
};

MomentsCi ci_from_moments(double mu, double sigma, std::size_t n, double z);

}  // namespace segstat::stats
