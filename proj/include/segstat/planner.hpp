#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace segstat {

/// Grid layout of the Gaussian CI lookup table: one row per sigma, one column
/// per test-set size.
struct TableSpec {
  std::vector<double> sigmas;
  std::vector<std::size_t> sizes;
  double level = 0.95;
};

/// The sigma and size lists the reference table ships with (the sigma list
/// includes the experimentally measured spreads 0.47, 0.81, 2.79, 3.26,
/// 10.63, 11.26, 13.12).
TableSpec default_table_spec();

struct TableCell {
  double sem = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

struct GaussianTable {
  TableSpec spec;
  double z = 0.0;                            // the two-decimal quantile (1.96 at 0.95)
  std::vector<std::vector<TableCell>> cells;  // [sigma][size]
};

/// cell(sigma, k) = (sigma/sqrt(k), [-z*sem, +z*sem]) with the literal
/// two-decimal z the printed table uses. Values are unrounded; renderers
/// round to two decimals.
GaussianTable gaussian_table(const TableSpec& spec);

std::string render_table_markdown(const GaussianTable& table);
std::string render_table_csv(const GaussianTable& table);

/// Smallest test-set size whose parametric CI width reaches the target.
struct PlanResult {
  double sigma = 0.0;
  double target_width = 0.0;
  double level = 0.95;
  double z = 0.0;  // exact quantile
  std::size_t n_min = 0;
  double achieved_width = 0.0;
};

/// n_min = ceil((2*z*sigma/target_width)^2) with the exact normal quantile.
PlanResult plan_sample_size(double sigma, double target_width, double level = 0.95);

/// Renders a value the way the reference table prints it: rounded to two
/// decimals, trailing zero in the hundredths place dropped ("0.1", "1.0", "15.81").
std::string format_round2(double value);

}  // namespace segstat
