#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "segstat/ci.hpp"
#include "segstat/errors.hpp"
#include "segstat/stats.hpp"
#include "support/generators.hpp"

using namespace segstat;

TEST_CASE("parametric_ci on {1,2,3}") {
  const MetricSeries s{"toy", "", {1.0, 2.0, 3.0}};
  const CiReport rep = parametric_ci(s);
  CHECK(rep.mu == 2.0);
  CHECK(rep.sigma == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  CHECK(rep.sem == doctest::Approx(0.4714045208).epsilon(1e-9));
  CHECK(rep.ci_hi == doctest::Approx(0.9239).epsilon(1e-3));
  CHECK(rep.ci_lo == -rep.ci_hi);
  CHECK(rep.nu == doctest::Approx(rep.width / 2.0).epsilon(1e-14));
}

TEST_CASE("parametric_ci zero-spread and error paths") {
  const MetricSeries constant{"c", "", {5.0, 5.0, 5.0, 5.0}};
  const CiReport rep = parametric_ci(constant);
  CHECK(rep.sigma == 0.0);
  CHECK(rep.sem == 0.0);
  CHECK(rep.ci_lo == 0.0);
  CHECK(rep.ci_hi == 0.0);
  CHECK(rep.nu == 0.0);

  CHECK_THROWS_AS((void)parametric_ci(MetricSeries{"e", "", {}}), Error);
  CHECK_THROWS_AS((void)parametric_ci(MetricSeries{"nan", "", {1.0, std::nan("")}}), Error);
}

TEST_CASE("parametric_ci z override and sample-stddev mode") {
  const MetricSeries s{"toy", "", {1.0, 2.0, 3.0}};
  const CiReport lit = parametric_ci(s, {.level = 0.95, .sample_stddev = false, .z_override = 1.96});
  CHECK(lit.z == 1.96);
  CHECK(lit.ci_hi == doctest::Approx(1.96 * 0.4714045208).epsilon(1e-9));

  const CiReport samp = parametric_ci(s, {.level = 0.95, .sample_stddev = true, .z_override = {}});
  CHECK(samp.sigma == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("parametric_ci scale and shift equivariance") {
  auto rng = testing::test_stream(77, 0);
  const MetricSeries base = testing::gaussian_series(64, 10.0, 2.0, rng);
  const CiReport rep = parametric_ci(base);

  MetricSeries scaled = base;
  for (double& v : scaled.values) v *= 3.0;
  const CiReport rep_scaled = parametric_ci(scaled);
  CHECK(rep_scaled.sem == doctest::Approx(3.0 * rep.sem).epsilon(1e-12));
  CHECK(rep_scaled.width == doctest::Approx(3.0 * rep.width).epsilon(1e-12));
  CHECK(rep_scaled.nu == doctest::Approx(rep.nu).epsilon(1e-12));

  MetricSeries shifted = base;
  for (double& v : shifted.values) v += 100.0;
  const CiReport rep_shifted = parametric_ci(shifted);
  CHECK(rep_shifted.mu == doctest::Approx(rep.mu + 100.0).epsilon(1e-12));
  CHECK(rep_shifted.sigma == doctest::Approx(rep.sigma).epsilon(1e-9));
}

TEST_CASE("bootstrap_ci of a constant series degenerates to a point") {
  const MetricSeries s{"c", "", {5.0, 5.0, 5.0, 5.0}};
  const BootstrapReport rep = bootstrap_ci(s, {.m = 200, .level = 0.95, .seed = 1});
  CHECK(rep.mu_star == 5.0);
  CHECK(rep.sem_star == 0.0);
  CHECK(rep.ci_lo == 0.0);
  CHECK(rep.ci_hi == 0.0);
}

TEST_CASE("bootstrap_ci is deterministic and mode-independent") {
  auto rng = testing::test_stream(123, 1);
  const MetricSeries s = testing::gaussian_series(40, 80.0, 12.0, rng);
  BootstrapOptions opts{.m = 4000, .level = 0.95, .seed = 99, .keep_means = true,
                        .mode = RunMode::Parallel};
  const BootstrapReport a = bootstrap_ci(s, opts);
  const BootstrapReport b = bootstrap_ci(s, opts);
  opts.mode = RunMode::Serial;
  const BootstrapReport c = bootstrap_ci(s, opts);
  CHECK(a.mu_star == b.mu_star);
  CHECK(a.mu_star == c.mu_star);
  CHECK(a.sem_star == c.sem_star);
  CHECK(a.a_star == c.a_star);
  CHECK(a.b_star == c.b_star);
  CHECK(a.resample_means == c.resample_means);
}

TEST_CASE("bootstrap SEM* approaches the parametric SEM") {
  // The bootstrap variance of the mean is sigma_pop^2/n in expectation.
  auto rng = testing::test_stream(5150, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const MetricSeries s = testing::gaussian_series(60 + 10 * trial, 50.0, 8.0, rng);
    const CiReport par = parametric_ci(s);
    const BootstrapReport boot = bootstrap_ci(s, {.m = 15000, .level = 0.95, .seed = 7});
    CHECK(std::abs(boot.sem_star - par.sem) / par.sem < 0.03);
  }
}

TEST_CASE("exhaustive bootstrap on {1,2,3}") {
  const MetricSeries s{"toy", "", {1.0, 2.0, 3.0}};
  const ExhaustiveBootstrap ex = exhaustive_bootstrap(s);
  CHECK(ex.total == 27);
  CHECK(ex.report.mu_star == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ex.report.sem_star == doctest::Approx(std::sqrt(2.0 / 9.0)).epsilon(1e-12));

  // Monte Carlo with m=15000 lands within 3% of the exact value.
  const BootstrapReport mc = bootstrap_ci(s, {.m = 15000, .level = 0.95, .seed = 11});
  CHECK(std::abs(mc.sem_star - ex.report.sem_star) / ex.report.sem_star < 0.03);
}

TEST_CASE("exhaustive bootstrap on {0,10}: four resamples by hand") {
  const MetricSeries s{"toy", "", {0.0, 10.0}};
  const ExhaustiveBootstrap ex = exhaustive_bootstrap(s);
  CHECK(ex.total == 4);
  // resample means {0, 5, 5, 10}
  CHECK(ex.report.mu_star == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(ex.report.sem_star == doctest::Approx(std::sqrt(12.5)).epsilon(1e-14));
  CHECK(ex.atom_values == std::vector<double>{0.0, 5.0, 10.0});
  CHECK(ex.atom_weights == std::vector<std::uint64_t>{1, 2, 1});
  // quantiles of the 4-element multiset under the interpolation rule
  CHECK(ex.quantile(0.0) == 0.0);
  CHECK(ex.quantile(1.0) == 10.0);
  CHECK(ex.quantile(0.5) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("exhaustive bootstrap rejects n > 8") {
  MetricSeries s{"big", "", std::vector<double>(9, 1.0)};
  CHECK_THROWS_AS((void)exhaustive_bootstrap(s), Error);
}

TEST_CASE("exhaustive and Monte Carlo bootstrap agree within Monte Carlo error") {
  auto rng = testing::test_stream(31337, 0);
  for (std::size_t n = 2; n <= 5; ++n) {
    MetricSeries s{"rand", "", {}};
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(rng.next_double() * 10.0);
    const ExhaustiveBootstrap ex = exhaustive_bootstrap(s);
    const std::size_t m = 15000;
    const BootstrapReport mc = bootstrap_ci(s, {.m = m, .level = 0.95, .seed = 1234 + n});

    // SE of a sample standard deviation from m draws, via exact moments.
    const double var = ex.variance;
    const double se_sd =
        std::sqrt(std::max(ex.fourth_central_moment - var * var, 0.0) / double(m)) /
        (2.0 * std::sqrt(var));
    CHECK(std::abs(mc.sem_star - ex.report.sem_star) <= 3.0 * se_sd);

    // Order-statistic bracket for the percentile endpoints: the sample
    // quantile lies between distribution quantiles at p +- 3se(p).
    auto bracket = [&](double p, double endpoint) {
      const double se = 3.0 * std::sqrt(p * (1.0 - p) / double(m));
      const double lo = ex.inverse_cdf(std::max(p - se, 0.0));
      const double hi = ex.inverse_cdf(std::min(p + se, 1.0));
      CHECK(endpoint >= lo - 1e-12);
      CHECK(endpoint <= hi + 1e-12);
    };
    bracket(0.025, mc.a_star);
    bracket(0.975, mc.b_star);
  }
}

TEST_CASE("SEM* dispersion shrinks roughly as 1/sqrt(m)") {
  auto rng = testing::test_stream(2024, 3);
  const MetricSeries s = testing::gaussian_series(30, 20.0, 5.0, rng);
  auto spread = [&](std::size_t m) {
    std::vector<double> sems;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
      sems.push_back(bootstrap_ci(s, {.m = m, .level = 0.95, .seed = seed}).sem_star);
    return stats::population_stddev(sems);
  };
  const double s500 = spread(500), s2000 = spread(2000), s8000 = spread(8000);
  // quadrupling m should roughly halve the spread
  CHECK(s500 / s2000 > 1.3);
  CHECK(s500 / s2000 < 3.2);
  CHECK(s2000 / s8000 > 1.3);
  CHECK(s2000 / s8000 < 3.2);
}

TEST_CASE("bootstrap and parametric widths agree for Gaussian series (n >= 50)") {
  auto rng = testing::test_stream(640, 0);
  std::vector<double> ratios;
  for (int t = 0; t < 100; ++t) {
    const MetricSeries s = testing::gaussian_series(50, 70.0, 9.0, rng);
    const CiReport par = parametric_ci(s);
    const BootstrapReport boot = bootstrap_ci(s, {.m = 2000, .level = 0.95, .seed = 4000 + t});
    ratios.push_back(par.width / boot.width);
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = stats::percentile_sorted(ratios, 0.5);
  CHECK(std::abs(median - 1.0) < 0.05);
}
