#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "segstat/errors.hpp"
#include "segstat/stats.hpp"
#include "segstat/subsample.hpp"
#include "support/generators.hpp"

using namespace segstat;

TEST_CASE("draw_subsample extremes: k = n is the identity, k = 1 one element") {
  const MetricSeries s{"toy", "", {3.0, 1.0, 4.0, 1.5, 9.0}};
  RandomStream stream(1, 0);
  const MetricSeries full = draw_subsample(s, 5, stream);
  CHECK(full.values == s.values);  // ascending-index extraction

  RandomStream stream2(1, 1);
  const MetricSeries one = draw_subsample(s, 1, stream2);
  REQUIRE(one.values.size() == 1);
  CHECK(std::count(s.values.begin(), s.values.end(), one.values[0]) >= 1);

  RandomStream stream3(1, 2);
  CHECK_THROWS_AS((void)draw_subsample(s, 6, stream3), Error);
}

TEST_CASE("draw_subsample never repeats an element") {
  MetricSeries s{"idx", "", {}};
  for (int i = 0; i < 30; ++i) s.values.push_back(i);
  for (std::uint64_t t = 0; t < 50; ++t) {
    RandomStream stream(7, t);
    const MetricSeries sub = draw_subsample(s, 12, stream);
    std::set<double> distinct(sub.values.begin(), sub.values.end());
    CHECK(distinct.size() == 12);
    CHECK(std::is_sorted(sub.values.begin(), sub.values.end()));  // index order = value order here
  }
}

TEST_CASE("draw_subsample pairs from a 3-element set are uniform") {
  const MetricSeries s{"abc", "", {1.0, 2.0, 4.0}};
  std::map<double, int> pair_counts;  // keyed by sum, distinct per pair
  const int draws = 10000;
  for (int t = 0; t < draws; ++t) {
    RandomStream stream(99, std::uint64_t(t));
    const MetricSeries sub = draw_subsample(s, 2, stream);
    pair_counts[sub.values[0] + sub.values[1]]++;
  }
  REQUIRE(pair_counts.size() == 3);
  for (const auto& [sum, count] : pair_counts)
    CHECK(std::abs(double(count) / draws - 1.0 / 3.0) < 0.02);
}

TEST_CASE("run_sweep on a constant series has zero spread everywhere") {
  const MetricSeries s{"c", "", std::vector<double>(40, 7.5)};
  SweepConfig config;
  config.sizes = {5, 10, 40};
  config.repeats = 10;
  config.m = 200;
  config.seed = 3;
  const SubsampleSweepResult res = run_sweep(s, config);
  for (const SweepRow& row : res.rows) {
    CHECK(row.mu == 7.5);
    CHECK(row.sigma == 0.0);
    CHECK(row.sem == 0.0);
    CHECK(row.ci_lo == 0.0);
    CHECK(row.ci_hi == 0.0);
    CHECK(row.boot_sem == 0.0);
    CHECK(row.boot_ci_lo == 0.0);
    CHECK(row.boot_ci_hi == 0.0);
  }
}

TEST_CASE("run_sweep at k = n reproduces the full-set report exactly") {
  auto rng = testing::test_stream(246, 0);
  const MetricSeries s = testing::gaussian_series(48, 89.7, 2.8, rng);
  SweepConfig config;
  config.sizes = {8, 48};
  config.repeats = 25;
  config.m = 500;
  config.seed = 17;
  const SubsampleSweepResult res = run_sweep(s, config);
  const SweepRow& last = res.rows.back();
  CHECK(last.k == 48);
  CHECK(last.mu == res.full_set.mu);
  CHECK(last.sigma == res.full_set.sigma);
  CHECK(last.sem == res.full_set.sem);
  // every drawing at k = n is the identity
  for (const DrawingRecord& rec : res.drawings)
    if (rec.k == 48) {
      CHECK(rec.mu == res.full_set.mu);
      CHECK(rec.sigma == res.full_set.sigma);
    }
}

TEST_CASE("run_sweep is deterministic and mode-independent") {
  auto rng = testing::test_stream(135, 0);
  const MetricSeries s = testing::gaussian_series(30, 50.0, 10.0, rng);
  SweepConfig config;
  config.sizes = {5, 12, 30};
  config.repeats = 8;
  config.m = 400;
  config.seed = 21;
  config.mode = RunMode::Parallel;
  const SubsampleSweepResult a = run_sweep(s, config);
  const SubsampleSweepResult b = run_sweep(s, config);
  config.mode = RunMode::Serial;
  const SubsampleSweepResult c = run_sweep(s, config);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].sem == b.rows[i].sem);
    CHECK(a.rows[i].sem == c.rows[i].sem);
    CHECK(a.rows[i].boot_ci_lo == c.rows[i].boot_ci_lo);
    CHECK(a.rows[i].boot_ci_hi == c.rows[i].boot_ci_hi);
  }
}

TEST_CASE("adding sizes does not perturb existing drawings") {
  auto rng = testing::test_stream(777, 0);
  const MetricSeries s = testing::gaussian_series(40, 10.0, 3.0, rng);
  SweepConfig small;
  small.sizes = {10, 20};
  small.repeats = 6;
  small.m = 300;
  small.seed = 5;
  SweepConfig large = small;
  large.sizes = {5, 10, 20, 40};
  const SubsampleSweepResult r_small = run_sweep(s, small);
  const SubsampleSweepResult r_large = run_sweep(s, large);
  auto row_of = [](const SubsampleSweepResult& r, std::size_t k) {
    for (const SweepRow& row : r.rows)
      if (row.k == k) return row;
    FAIL("row not found");
    return SweepRow{};
  };
  for (std::size_t k : {std::size_t(10), std::size_t(20)}) {
    CHECK(row_of(r_small, k).mu == row_of(r_large, k).mu);
    CHECK(row_of(r_small, k).sem == row_of(r_large, k).sem);
    CHECK(row_of(r_small, k).boot_sem == row_of(r_large, k).boot_sem);
  }
}

TEST_CASE("j-averaged sem_k shrinks with k (one Monte Carlo SE of slack)") {
  auto rng = testing::test_stream(864, 0);
  const MetricSeries s = testing::gaussian_series(110, 80.0, 12.0, rng);
  SweepConfig config;
  config.sizes = {10, 20, 30, 50, 100};
  config.repeats = 60;
  config.m = 200;
  config.seed = 13;
  const SubsampleSweepResult res = run_sweep(s, config);

  // per-size SE of the j-average, from the drawing dispersion
  std::vector<double> se(res.rows.size());
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    std::vector<double> sems;
    for (const DrawingRecord& rec : res.drawings)
      if (rec.k == res.rows[i].k) sems.push_back(rec.sem);
    se[i] = stats::population_stddev(sems) / std::sqrt(double(sems.size()));
  }
  for (std::size_t i = 1; i < res.rows.size(); ++i)
    CHECK(res.rows[i].sem <= res.rows[i - 1].sem + se[i] + se[i - 1]);
}

TEST_CASE("gaussian synthetic sweep: sem_k tracks sigma/sqrt(k), parametric CI near bootstrap") {
  auto rng = testing::test_stream(99, 4);
  const MetricSeries s =
      testing::affine_rescale(testing::gaussian_series(334, 80.0, 12.0, rng), 80.0, 12.0);
  SweepConfig config;
  config.sizes = {10, 30, 100, 334};
  config.repeats = 40;
  config.m = 600;
  config.seed = 8;
  const SubsampleSweepResult res = run_sweep(s, config);
  for (const SweepRow& row : res.rows) {
    const double expected = 12.0 / std::sqrt(double(row.k));
    CHECK(std::abs(row.sem - expected) / expected < 0.10);
    // parametric CI within 10% of the bootstrap CI at every k
    CHECK(std::abs(row.ci_lo - row.boot_ci_lo) < 0.10 * std::abs(row.ci_lo) + 1e-9);
    CHECK(std::abs(row.ci_hi - row.boot_ci_hi) < 0.10 * std::abs(row.ci_hi) + 1e-9);
    // averaged bootstrap bounds stay within 15% of z*sem_k from k = 20 up
    if (row.k >= 20) {
      const double reference = res.z * row.sem;
      CHECK(std::abs(-row.boot_ci_lo - reference) < 0.15 * reference);
      CHECK(std::abs(row.boot_ci_hi - reference) < 0.15 * reference);
    }
  }
}

TEST_CASE("with-replacement drawing is available behind the config flag") {
  const MetricSeries s{"toy", "", {1.0, 2.0, 3.0, 4.0}};
  SweepConfig config;
  config.sizes = {4};
  config.repeats = 50;
  config.m = 50;
  config.seed = 12;
  config.with_replacement = true;
  const SubsampleSweepResult res = run_sweep(s, config);
  // with replacement, k = n drawings vary, so sigma_k almost surely differs
  // from the full-set sigma
  CHECK(res.rows[0].sigma != res.full_set.sigma);
}
