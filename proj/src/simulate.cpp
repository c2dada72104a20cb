#include "segstat/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "segstat/ci.hpp"
#include "segstat/errors.hpp"
#include "segstat/stats.hpp"

namespace segstat {

namespace {

struct LognormalParams {
  double log_mu;
  double log_sigma;
};

LognormalParams lognormal_from_moments(const dist::LognormalShifted& d) {
  const double excess_mean = d.mu - d.shift;
  if (!(excess_mean > 0.0))
    fail(errc::unknown_distribution, "lognormal-shifted requires mu > shift");
  if (!(d.sigma > 0.0)) fail(errc::unknown_distribution, "lognormal-shifted requires sigma > 0");
  const double s2 = std::log(1.0 + (d.sigma / excess_mean) * (d.sigma / excess_mean));
  return {std::log(excess_mean) - 0.5 * s2, std::sqrt(s2)};
}

}  // namespace

double SyntheticDistribution::analytic_mean() const {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, dist::Gaussian>) {
          return d.mu;
        } else if constexpr (std::is_same_v<T, dist::TruncatedGaussian>) {
          const double alpha = (d.lo - d.mu) / d.sigma;
          const double beta = (d.hi - d.mu) / d.sigma;
          auto phi = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); };
          const double mass = stats::normal_cdf(beta) - stats::normal_cdf(alpha);
          return d.mu + d.sigma * (phi(alpha) - phi(beta)) / mass;
        } else if constexpr (std::is_same_v<T, dist::LognormalShifted>) {
          return d.mu;  // moment-matched by construction
        } else {
          return d.p * d.a + (1.0 - d.p) * d.b;
        }
      },
      kind);
}

double SyntheticDistribution::sample(RandomStream& stream) const {
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, dist::Gaussian>) {
          return d.mu + d.sigma * stream.next_normal();
        } else if constexpr (std::is_same_v<T, dist::TruncatedGaussian>) {
          // Inverse-CDF on the truncated range: no rejection, one draw per sample.
          const double alpha = (d.lo - d.mu) / d.sigma;
          const double beta = (d.hi - d.mu) / d.sigma;
          const double fa = stats::normal_cdf(alpha), fb = stats::normal_cdf(beta);
          const double u = fa + stream.next_double() * (fb - fa);
          return d.mu + d.sigma * stats::normal_quantile(u);
        } else if constexpr (std::is_same_v<T, dist::LognormalShifted>) {
          const LognormalParams p = lognormal_from_moments(d);
          return d.shift + std::exp(p.log_mu + p.log_sigma * stream.next_normal());
        } else {
          return stream.next_double() < d.p ? d.a : d.b;
        }
      },
      kind);
}

std::string SyntheticDistribution::describe() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, dist::Gaussian>) {
          os << "gaussian:mu=" << d.mu << ",sigma=" << d.sigma;
        } else if constexpr (std::is_same_v<T, dist::TruncatedGaussian>) {
          os << "truncated-gaussian:mu=" << d.mu << ",sigma=" << d.sigma << ",lo=" << d.lo
             << ",hi=" << d.hi;
        } else if constexpr (std::is_same_v<T, dist::LognormalShifted>) {
          os << "lognormal-shifted:shift=" << d.shift << ",mu=" << d.mu << ",sigma=" << d.sigma;
        } else {
          os << "two-point:a=" << d.a << ",b=" << d.b << ",p=" << d.p;
        }
      },
      kind);
  return os.str();
}

SyntheticDistribution parse_distribution(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::map<std::string, double> params;
  if (colon != std::string::npos) {
    std::istringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos)
        fail(errc::unknown_distribution, "malformed parameter '" + item + "'");
      try {
        params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
      } catch (...) {
        fail(errc::unknown_distribution, "malformed parameter value in '" + item + "'");
      }
    }
  }
  auto take = [&](const std::string& key, std::optional<double> fallback = {}) {
    auto it = params.find(key);
    if (it != params.end()) {
      const double v = it->second;
      params.erase(it);
      return v;
    }
    if (fallback) return *fallback;
    fail(errc::unknown_distribution, "distribution '" + name + "' needs parameter '" + key + "'");
  };

  SyntheticDistribution out;
  if (name == "gaussian") {
    out.kind = dist::Gaussian{take("mu"), take("sigma")};
  } else if (name == "truncated-gaussian") {
    out.kind = dist::TruncatedGaussian{take("mu"), take("sigma"), take("lo", 0.0), take("hi", 100.0)};
  } else if (name == "lognormal-shifted") {
    out.kind = dist::LognormalShifted{take("shift", 0.0), take("mu"), take("sigma")};
  } else if (name == "two-point") {
    out.kind = dist::TwoPoint{take("a"), take("b"), take("p", 0.5)};
  } else {
    fail(errc::unknown_distribution, "'" + name + "'");
  }
  if (!params.empty())
    fail(errc::unknown_distribution, "unexpected parameter '" + params.begin()->first + "'");
  // Validate lognormal parameters eagerly so bad configs fail at parse time.
  if (auto* ln = std::get_if<dist::LognormalShifted>(&out.kind)) lognormal_from_moments(*ln);
  return out;
}

CoverageReport run_coverage(const SyntheticDistribution& distribution,
                            const CoverageConfig& config) {
  if (config.trials < 1) fail(errc::bad_arguments, "coverage requires at least one trial");
  if (config.n < 1) fail(errc::bad_arguments, "coverage requires n >= 1");

  CoverageReport report;
  report.distribution = distribution;
  report.config = config;
  report.true_mean = distribution.analytic_mean();
  report.has_bootstrap = config.m > 0;

  struct Trial {
    bool param_covers = false;
    bool boot_covers = false;
    double param_width = 0.0;
    double boot_width = 0.0;
  };
  std::vector<Trial> trials(config.trials);

  auto run_trial = [&](std::size_t t) {
    RandomStream gen(config.seed, stream_domain::pack(stream_domain::coverage_gen, t));
    MetricSeries series;
    series.name = "synthetic";
    series.values.resize(config.n);
    for (double& v : series.values) v = distribution.sample(gen);

    Trial& trial = trials[t];
    const CiReport par = parametric_ci(series, ParametricOptions{config.level, false, {}});
    trial.param_width = par.width;
    trial.param_covers = std::abs(par.mu - report.true_mean) <= par.z * par.sem;

    if (config.m > 0) {
      BootstrapOptions boot;
      boot.m = config.m;
      boot.level = config.level;
      boot.seed = derive_seed(config.seed, stream_domain::coverage_boot, t);
      boot.mode = RunMode::Serial;  // trials are the parallel axis
      const BootstrapReport rep = bootstrap_ci(series, boot);
      trial.boot_width = rep.width;
      trial.boot_covers = report.true_mean >= rep.a_star && report.true_mean <= rep.b_star;
    }
  };

  if (config.mode == RunMode::Serial) {
    for (std::size_t t = 0; t < config.trials; ++t) run_trial(t);
  } else {
    const int threads = parallel::thread_count();
#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (std::int64_t t = 0; t < std::int64_t(config.trials); ++t) run_trial(std::size_t(t));
  }

  std::size_t param_hits = 0, boot_hits = 0;
  double param_width_sum = 0.0, boot_width_sum = 0.0;
  for (const Trial& trial : trials) {
    param_hits += trial.param_covers;
    boot_hits += trial.boot_covers;
    param_width_sum += trial.param_width;
    boot_width_sum += trial.boot_width;
  }
  report.parametric = {config.trials, config.n, "parametric",
                       double(param_hits) / double(config.trials),
                       param_width_sum / double(config.trials)};
  if (report.has_bootstrap) {
    report.bootstrap = {config.trials, config.n, "bootstrap",
                        double(boot_hits) / double(config.trials),
                        boot_width_sum / double(config.trials)};
    report.width_ratios.reserve(config.trials);
    for (const Trial& trial : trials)
      report.width_ratios.push_back(trial.boot_width > 0.0 ? trial.param_width / trial.boot_width
                                                           : 1.0);
    report.width_ratio_median = stats::percentile(report.width_ratios, 0.5);
  }
  return report;
}

}  // namespace segstat
