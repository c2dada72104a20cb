#include "segstat/ci.hpp"

#include <algorithm>
#include <cmath>

#include "segstat/errors.hpp"
#include "segstat/rng.hpp"
#include "segstat/stats.hpp"

namespace segstat {

void validate(const MetricSeries& series) {
  if (series.values.empty()) fail(errc::empty_series, "series '" + series.name + "' has no values");
  for (double v : series.values)
    if (!std::isfinite(v))
      fail(errc::non_finite_value, "series '" + series.name + "' contains a non-finite value");
}

CiReport parametric_ci(const MetricSeries& series, const ParametricOptions& opts) {
  validate(series);
  CiReport rep;
  rep.n = series.n();
  rep.level = opts.level;
  rep.z = opts.z_override ? *opts.z_override : stats::z_for_level(opts.level);
  rep.mu = stats::mean(series.values);
  rep.sigma = opts.sample_stddev ? stats::sample_stddev(series.values)
                                 : stats::population_stddev(series.values);
  const auto ci = stats::ci_from_moments(rep.mu, rep.sigma, rep.n, rep.z);
  rep.sem = ci.sem;
  rep.ci_lo = ci.ci_lo;
  rep.ci_hi = ci.ci_hi;
  rep.width = ci.width;
  rep.nu = ci.nu;
  rep.nu_defined = ci.nu_defined;
  return rep;
}

namespace detail {

static double one_resample_mean(const std::vector<double>& values, std::uint64_t seed,
                                std::uint64_t index) {
  RandomStream rng(seed, stream_domain::pack(stream_domain::resample, index));
  const std::uint32_t n = std::uint32_t(values.size());
  double sum = 0.0;
  for (std::uint32_t d = 0; d < n; ++d) sum += values[rng.next_index(n)];
  return sum / double(n);
}

std::vector<double> resample_means(const std::vector<double>& values, std::size_t m,
                                   std::uint64_t seed, RunMode mode) {
  std::vector<double> means(m);
  if (mode == RunMode::Serial) {
    for (std::size_t i = 0; i < m; ++i) means[i] = one_resample_mean(values, seed, i);
  } else {
    const int threads = parallel::thread_count();
#pragma omp parallel for num_threads(threads) schedule(static)
    for (std::int64_t i = 0; i < std::int64_t(m); ++i)
      means[std::size_t(i)] = one_resample_mean(values, seed, std::uint64_t(i));
  }
  return means;
}

BootstrapReport summarize_resample_means(std::vector<double> means, double level,
                                         std::uint64_t seed, bool keep_means) {
  BootstrapReport rep;
  rep.m = means.size();
  rep.seed = seed;
  rep.level = level;
  rep.mu_star = stats::mean(means);
  rep.sem_star = stats::population_stddev(means);

  std::vector<double> sorted = means;
  std::sort(sorted.begin(), sorted.end());
  rep.a_star = stats::percentile_sorted(sorted, (1.0 - level) / 2.0);
  rep.b_star = stats::percentile_sorted(sorted, (1.0 + level) / 2.0);
  rep.ci_lo = rep.a_star - rep.mu_star;
  rep.ci_hi = rep.b_star - rep.mu_star;
  rep.width = rep.b_star - rep.a_star;
  rep.nu_defined = rep.mu_star != 0.0;
  rep.nu_star = rep.nu_defined ? rep.width / rep.mu_star : 0.0;
  if (keep_means) rep.resample_means = std::move(means);
  return rep;
}

}  // namespace detail

BootstrapReport bootstrap_ci(const MetricSeries& series, const BootstrapOptions& opts) {
  validate(series);
  if (opts.m < 1) fail(errc::bad_arguments, "bootstrap resample count must be >= 1");
  if (!(opts.level > 0.0 && opts.level < 1.0))
    fail(errc::bad_arguments, "confidence level outside (0,1)");
  auto means = detail::resample_means(series.values, opts.m, opts.seed, opts.mode);
  return detail::summarize_resample_means(std::move(means), opts.level, opts.seed,
                                          opts.keep_means);
}

double ExhaustiveBootstrap::quantile(double p) const {
  if (atom_values.empty()) return 0.0;
  if (p <= 0.0) return atom_values.front();
  if (p >= 1.0) return atom_values.back();
  const double h = p * double(total - 1);
  const std::uint64_t rank = std::uint64_t(h);
  const double frac = h - double(rank);

  // Value at a 0-based rank of the weighted multiset.
  auto value_at = [&](std::uint64_t r) {
    std::uint64_t cum = 0;
    for (std::size_t i = 0; i < atom_values.size(); ++i) {
      cum += atom_weights[i];
      if (cum > r) return atom_values[i];
    }
    return atom_values.back();
  };
  const double lo = value_at(rank);
  const double hi = value_at(std::min(rank + 1, total - 1));
  return lo + frac * (hi - lo);
}

double ExhaustiveBootstrap::inverse_cdf(double p) const {
  if (atom_values.empty()) return 0.0;
  if (p <= 0.0) return atom_values.front();
  if (p >= 1.0) return atom_values.back();
  const double target = p * double(total);
  std::uint64_t cum = 0;
  for (std::size_t i = 0; i < atom_values.size(); ++i) {
    cum += atom_weights[i];
    if (double(cum) >= target) return atom_values[i];
  }
  return atom_values.back();
}

ExhaustiveBootstrap exhaustive_bootstrap(const MetricSeries& series, double level) {
  validate(series);
  const std::size_t n = series.n();
  if (n > 8) fail(errc::too_large_for_enumeration, "exhaustive bootstrap requires n <= 8");

  // Enumerate multisets (non-decreasing index tuples); each carries weight
  // n!/prod(count_i!), the number of ordered resamples with that content.
  std::vector<double> factorial(n + 1, 1.0);
  for (std::size_t i = 1; i <= n; ++i) factorial[i] = factorial[i - 1] * double(i);

  struct Atom {
    double mean;
    std::uint64_t weight;
  };
  std::vector<Atom> atoms;
  std::vector<std::size_t> idx(n, 0);  // non-decreasing tuple
  const double* vals = series.values.data();
  while (true) {
    double sum = 0.0;
    for (std::size_t d = 0; d < n; ++d) sum += vals[idx[d]];
    double weight = factorial[n];
    std::size_t run = 1;
    for (std::size_t d = 1; d <= n; ++d) {
      if (d < n && idx[d] == idx[d - 1]) {
        ++run;
      } else {
        weight /= factorial[run];
        run = 1;
      }
    }
    atoms.push_back({sum / double(n), std::uint64_t(weight + 0.5)});

    // advance to the next non-decreasing tuple
    std::size_t pos = n;
    while (pos > 0 && idx[pos - 1] == n - 1) --pos;
    if (pos == 0) break;
    const std::size_t next = idx[pos - 1] + 1;
    for (std::size_t d = pos - 1; d < n; ++d) idx[d] = next;
  }

  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.mean < b.mean; });

  ExhaustiveBootstrap out;
  out.total = 1;
  for (std::size_t i = 0; i < n; ++i) out.total *= n;
  out.atom_values.reserve(atoms.size());
  out.atom_weights.reserve(atoms.size());
  std::uint64_t weight_sum = 0;
  for (const Atom& a : atoms) {
    out.atom_values.push_back(a.mean);
    out.atom_weights.push_back(a.weight);
    weight_sum += a.weight;
  }
  if (weight_sum != out.total)
    fail(errc::bad_arguments, "internal: multinomial weights do not sum to n^n");

  double mu = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    mu += out.atom_values[i] * (double(out.atom_weights[i]) / double(out.total));
  double m2 = 0.0, m4 = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double d = out.atom_values[i] - mu;
    const double w = double(out.atom_weights[i]) / double(out.total);
    m2 += w * d * d;
    m4 += w * d * d * d * d;
  }
  out.variance = m2;
  out.fourth_central_moment = m4;

  BootstrapReport& rep = out.report;
  rep.m = out.total;
  rep.seed = 0;
  rep.level = level;
  rep.mu_star = mu;
  rep.sem_star = std::sqrt(m2);
  rep.a_star = out.quantile((1.0 - level) / 2.0);
  rep.b_star = out.quantile((1.0 + level) / 2.0);
  rep.ci_lo = rep.a_star - mu;
  rep.ci_hi = rep.b_star - mu;
  rep.width = rep.b_star - rep.a_star;
  rep.nu_defined = mu != 0.0;
  rep.nu_star = rep.nu_defined ? rep.width / mu : 0.0;
  return out;
}

}  // namespace segstat
