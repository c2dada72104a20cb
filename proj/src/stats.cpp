#include "segstat/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "segstat/errors.hpp"

namespace segstat::stats {

double mean(std::span<const double> values) {
  if (values.empty()) fail(errc::empty_series, "mean of empty range");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / double(values.size());
}

double population_variance(std::span<const double> values) {
  const double mu = mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - mu) * (v - mu);
  return acc / double(values.size());
}

double population_stddev(std::span<const double> values) {
  return std::sqrt(population_variance(values));
}

double sample_stddev(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) fail(errc::empty_series, "stddev of empty range");
  if (n == 1) return 0.0;
  const double mu = mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - mu) * (v - mu);
  return std::sqrt(acc / double(n - 1));
}

double mean_anchored(std::span<const double> values) {
  if (values.empty()) fail(errc::empty_series, "mean of empty range");
  const double anchor = values[0];
  double acc = 0.0;
  for (double v : values) acc += v - anchor;
  return anchor + acc / double(values.size());
}

double percentile_sorted(std::span<const double> sorted_values, double p) {
  if (sorted_values.empty()) fail(errc::empty_series, "percentile of empty range");
  if (p <= 0.0) return sorted_values.front();
  if (p >= 1.0) return sorted_values.back();
  const double h = p * double(sorted_values.size() - 1);
  const std::size_t lo = std::size_t(h);
  const std::size_t hi = std::min(lo + 1, sorted_values.size() - 1);
  const double frac = h - double(lo);
  return sorted_values[lo] + frac * (sorted_values[hi] - sorted_values[lo]);
}

double percentile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  return percentile_sorted(values, p);
}

double normal_quantile(double p) {
  static const boost::math::normal_distribution<double> unit;
  return boost::math::quantile(unit, p);
}

double normal_cdf(double x) {
  static const boost::math::normal_distribution<double> unit;
  return boost::math::cdf(unit, x);
}

double z_for_level(double level) {
  if (!(level > 0.0 && level < 1.0)) fail(errc::bad_arguments, "confidence level outside (0,1)");
  return normal_quantile((1.0 + level) / 2.0);
}

double z_for_level_rounded(double level) {
  return std::nearbyint(z_for_level(level) * 100.0) / 100.0;
}

MomentsCi ci_from_moments(double mu, double sigma, std::size_t n, double z) {
  if (n == 0) fail(errc::empty_series, "moments of empty series");
  MomentsCi out;
  out.sem = sigma / std::sqrt(double(n));
  out.ci_lo = -z * out.sem;
  out.ci_hi = z * out.sem;
  out.width = 2.0 * z * out.sem;
  out.nu_defined = mu != 0.0;
  out.nu = out.nu_defined ? out.width / mu : 0.0;
  return out;
}

}  // namespace segstat::stats
