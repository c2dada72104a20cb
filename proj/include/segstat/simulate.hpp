#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "segstat/parallel.hpp"
#include "segstat/rng.hpp"

namespace segstat {

/// Synthetic metric distributions with known analytic means, spanning the
/// shapes seen in practice: near-Gaussian accuracies, bounded accuracies,
/// skewed lower-bounded distances, and sparse two-valued metrics.
namespace dist {

struct Gaussian {
  double mu = 0.0;
  double sigma = 1.0;
};

struct TruncatedGaussian {
  double mu = 0.0;  // parameters of the parent normal, truncated to [lo, hi]
  double sigma = 1.0;
  double lo = 0.0;
  double hi = 100.0;
};

/// shift + exp(N(log_mu, log_sigma)) parameterized by its target moments:
/// mean `mu` and standard deviation `sigma` (moment-matched log-normal).
struct LognormalShifted {
  double shift = 0.0;
  double mu = 1.0;
  double sigma = 0.5;
};

struct TwoPoint {
  double a = 0.0;
  double b = 1.0;
  double p = 0.5;  // P(value = a)
};

}  // namespace dist

struct SyntheticDistribution {
  std::variant<dist::Gaussian, dist::TruncatedGaussian, dist::LognormalShifted, dist::TwoPoint>
      kind;

  double analytic_mean() const;
  double sample(RandomStream& stream) const;
  std::string describe() const;
};

/// Parses the CLI syntax, e.g. "gaussian:mu=89.7,sigma=2.8",
/// "truncated-gaussian:mu=80,sigma=15,lo=0,hi=100",
/// "lognormal-shifted:shift=0.5,mu=1.205,sigma=0.472", "two-point:a=0,b=100,p=0.3".
SyntheticDistribution parse_distribution(const std::string& text);

/// Coverage of one CI method over simulated trials.
struct CoverageResult {
  std::size_t trials = 0;
  std::size_t n = 0;
  std::string method;  // "parametric" | "bootstrap"
  double empirical_coverage = 0.0;
  double mean_width = 0.0;
};

struct CoverageConfig {
  std::size_t n = 100;
  std::size_t trials = 1000;
  std::size_t m = 0;  // bootstrap resamples per trial; 0 disables the bootstrap arm
  double level = 0.95;
  std::uint64_t seed = 0;
  RunMode mode = RunMode::Parallel;
};

struct CoverageReport {
  SyntheticDistribution distribution;
  CoverageConfig config;
  double true_mean = 0.0;
  CoverageResult parametric;
  CoverageResult bootstrap;           // populated when config.m > 0
  bool has_bootstrap = false;
  double width_ratio_median = 0.0;    // parametric width / bootstrap width
  std::vector<double> width_ratios;   // per trial, when bootstrap runs
};

/// Per trial: draw n samples, build both CIs, test whether each contains the
/// distribution's analytic mean. Trials use independent counter streams and
/// reduce in trial order, so reports are seed-deterministic at any thread count.
CoverageReport run_coverage(const SyntheticDistribution& distribution,
                            const CoverageConfig& config);

}  // namespace segstat
