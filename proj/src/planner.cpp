#include "segstat/planner.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "segstat/errors.hpp"
#include "segstat/stats.hpp"

namespace segstat {

TableSpec default_table_spec() {
  return TableSpec{
      {0.47, 0.81, 1.0, 2.79, 3.26, 5.0, 10.63, 11.26, 12.0, 13.12, 20.0, 30.0, 50.0},
      {10, 20, 30, 50, 100, 200, 300, 500, 1000, 1500, 2000, 2500, 3000},
      0.95};
}

GaussianTable gaussian_table(const TableSpec& spec) {
  for (double s : spec.sigmas)
    if (!(s > 0.0)) fail(errc::non_positive_input, "table sigma must be > 0");
  for (std::size_t k : spec.sizes)
    if (k < 1) fail(errc::non_positive_input, "table size must be >= 1");

  GaussianTable table;
  table.spec = spec;
  table.z = stats::z_for_level_rounded(spec.level);
  table.cells.resize(spec.sigmas.size());
  for (std::size_t r = 0; r < spec.sigmas.size(); ++r) {
    table.cells[r].resize(spec.sizes.size());
    for (std::size_t c = 0; c < spec.sizes.size(); ++c) {
      const double sem = spec.sigmas[r] / std::sqrt(double(spec.sizes[c]));
      table.cells[r][c] = {sem, -table.z * sem, table.z * sem};
    }
  }
  return table;
}

std::string format_round2(double value) {
  const double scaled = std::nearbyint(value * 100.0);
  const long long cents = (long long)scaled;
  const bool negative = cents < 0;
  const unsigned long long mag = negative ? (unsigned long long)(-cents) : (unsigned long long)cents;
  const unsigned long long whole = mag / 100;
  const unsigned frac = unsigned(mag % 100);
  char buf[48];
  if (frac % 10 == 0)
    std::snprintf(buf, sizeof buf, "%s%llu.%u", negative ? "-" : "", whole, frac / 10);
  else
    std::snprintf(buf, sizeof buf, "%s%llu.%02u", negative ? "-" : "", whole, frac);
  return buf;
}

static std::string format_sigma(double sigma) {
  // Row labels keep their given precision (e.g. "0.47", "1", "13.12").
  std::ostringstream os;
  os << sigma;
  return os.str();
}

std::string render_table_markdown(const GaussianTable& table) {
  std::ostringstream os;
  os << "| sigma |  |";
  for (std::size_t k : table.spec.sizes) os << " " << k << " |";
  os << "\n|---|---|";
  for (std::size_t c = 0; c < table.spec.sizes.size(); ++c) os << "---|";
  os << "\n";
  for (std::size_t r = 0; r < table.spec.sigmas.size(); ++r) {
    os << "| " << format_sigma(table.spec.sigmas[r]) << " | SEM |";
    for (const TableCell& cell : table.cells[r]) os << " " << format_round2(cell.sem) << " |";
    os << "\n|  | CI |";
    for (const TableCell& cell : table.cells[r])
      os << " [" << format_round2(cell.ci_lo) << ", " << format_round2(cell.ci_hi) << "] |";
    os << "\n";
  }
  return os.str();
}

std::string render_table_csv(const GaussianTable& table) {
  std::ostringstream os;
  os << "sigma,k,sem,ci_lo,ci_hi\n";
  for (std::size_t r = 0; r < table.spec.sigmas.size(); ++r)
    for (std::size_t c = 0; c < table.spec.sizes.size(); ++c) {
      const TableCell& cell = table.cells[r][c];
      os << format_sigma(table.spec.sigmas[r]) << "," << table.spec.sizes[c] << ","
         << format_round2(cell.sem) << "," << format_round2(cell.ci_lo) << ","
         << format_round2(cell.ci_hi) << "\n";
    }
  return os.str();
}

PlanResult plan_sample_size(double sigma, double target_width, double level) {
  if (!(sigma > 0.0)) fail(errc::non_positive_input, "sigma must be > 0");
  if (!(target_width > 0.0)) fail(errc::non_positive_input, "target width must be > 0");

  PlanResult plan;
  plan.sigma = sigma;
  plan.target_width = target_width;
  plan.level = level;
  plan.z = stats::z_for_level(level);
  const double root = 2.0 * plan.z * sigma / target_width;
  plan.n_min = std::max<std::size_t>(1, std::size_t(std::ceil(root * root)));
  plan.achieved_width = 2.0 * plan.z * sigma / std::sqrt(double(plan.n_min));
  return plan;
}

}  // namespace segstat
