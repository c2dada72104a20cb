#include "segstat/report.hpp"

#include <cmath>
#include <cstdio>

#include "segstat/csv.hpp"

namespace segstat {

double round_sig6(double value) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return std::strtod(buf, nullptr);
}

Json json_parametric(const CiReport& report) {
  Json j;
  j["mu"] = round_sig6(report.mu);
  j["sigma"] = round_sig6(report.sigma);
  j["sem"] = round_sig6(report.sem);
  j["ci"] = {round_sig6(report.ci_lo), round_sig6(report.ci_hi)};
  j["width"] = round_sig6(report.width);
  if (report.nu_defined)
    j["nu"] = round_sig6(report.nu);
  else
    j["nu"] = nullptr;
  return j;
}

Json json_bootstrap(const BootstrapReport& report) {
  Json j;
  j["m"] = report.m;
  j["seed"] = report.seed;
  j["mu_star"] = round_sig6(report.mu_star);
  j["sem_star"] = round_sig6(report.sem_star);
  j["ci"] = {round_sig6(report.ci_lo), round_sig6(report.ci_hi)};
  j["width"] = round_sig6(report.width);
  if (report.nu_defined)
    j["nu_star"] = round_sig6(report.nu_star);
  else
    j["nu_star"] = nullptr;
  return j;
}

Json ci_report_json(const std::string& metric, std::size_t n, double level,
                    const CiReport* parametric, const BootstrapReport* bootstrap) {
  Json j;
  j["metric"] = metric;
  j["n"] = n;
  j["level"] = level;
  if (parametric) j["parametric"] = json_parametric(*parametric);
  if (bootstrap) j["bootstrap"] = json_bootstrap(*bootstrap);
  return j;
}

Json sweep_report_json(const SubsampleSweepResult& result) {
  Json j;
  j["sizes"] = result.config.sizes;
  j["repeats"] = result.config.repeats;
  j["m"] = result.config.m;
  j["level"] = result.config.level;
  j["seed"] = result.config.seed;
  j["with_replacement"] = result.config.with_replacement;
  j["rows"] = Json::array();
  for (const SweepRow& row : result.rows) {
    Json r;
    r["k"] = row.k;
    r["mu"] = round_sig6(row.mu);
    r["sigma"] = round_sig6(row.sigma);
    r["sem"] = round_sig6(row.sem);
    r["ci"] = {round_sig6(row.ci_lo), round_sig6(row.ci_hi)};
    r["nu"] = round_sig6(row.nu);
    r["boot_mu"] = round_sig6(row.boot_mu);
    r["boot_sem"] = round_sig6(row.boot_sem);
    r["boot_ci"] = {round_sig6(row.boot_ci_lo), round_sig6(row.boot_ci_hi)};
    r["boot_nu"] = round_sig6(row.boot_nu);
    j["rows"].push_back(std::move(r));
  }
  return j;
}

std::string sweep_rows_csv(const SubsampleSweepResult& result) {
  std::string out =
      "k,mu,sigma,sem,ci_lo,ci_hi,nu,boot_mu,boot_sem,boot_ci_lo,boot_ci_hi,boot_nu\n";
  for (const SweepRow& row : result.rows) {
    out += std::to_string(row.k);
    for (double v : {row.mu, row.sigma, row.sem, row.ci_lo, row.ci_hi, row.nu, row.boot_mu,
                     row.boot_sem, row.boot_ci_lo, row.boot_ci_hi, row.boot_nu})
      out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

std::string sweep_drawings_csv(const SubsampleSweepResult& result) {
  std::string out = "k,j,mu,sigma,sem,nu,boot_mu,boot_sem,boot_a,boot_b\n";
  for (const DrawingRecord& rec : result.drawings) {
    out += std::to_string(rec.k) + "," + std::to_string(rec.j);
    for (double v :
         {rec.mu, rec.sigma, rec.sem, rec.nu, rec.boot_mu, rec.boot_sem, rec.boot_a, rec.boot_b})
      out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

Json coverage_report_json(const CoverageReport& report) {
  Json j;
  j["distribution"] = report.distribution.describe();
  j["true_mean"] = round_sig6(report.true_mean);
  j["n"] = report.config.n;
  j["trials"] = report.config.trials;
  j["m"] = report.config.m;
  j["level"] = report.config.level;
  j["seed"] = report.config.seed;
  auto method_json = [](const CoverageResult& r) {
    Json m;
    m["method"] = r.method;
    m["empirical_coverage"] = round_sig6(r.empirical_coverage);
    m["mean_width"] = round_sig6(r.mean_width);
    return m;
  };
  j["parametric"] = method_json(report.parametric);
  if (report.has_bootstrap) {
    j["bootstrap"] = method_json(report.bootstrap);
    j["width_ratio_median"] = round_sig6(report.width_ratio_median);
  }
  return j;
}

std::string coverage_trials_csv(const CoverageReport& report) {
  std::string out = "trial,width_ratio\n";
  for (std::size_t t = 0; t < report.width_ratios.size(); ++t)
    out += std::to_string(t) + "," + format_double(report.width_ratios[t]) + "\n";
  return out;
}

Json plan_json(const PlanResult& plan) {
  Json j;
  j["sigma"] = plan.sigma;
  j["target_width"] = plan.target_width;
  j["level"] = plan.level;
  j["z"] = round_sig6(plan.z);
  j["n_min"] = plan.n_min;
  j["achieved_width"] = round_sig6(plan.achieved_width);
  return j;
}

Json table_json(const GaussianTable& table) {
  Json j;
  j["level"] = table.spec.level;
  j["z"] = table.z;
  j["sizes"] = table.spec.sizes;
  j["rows"] = Json::array();
  for (std::size_t r = 0; r < table.spec.sigmas.size(); ++r) {
    Json row;
    row["sigma"] = table.spec.sigmas[r];
    row["sem"] = Json::array();
    row["ci"] = Json::array();
    for (const TableCell& cell : table.cells[r]) {
      row["sem"].push_back(round_sig6(cell.sem));
      row["ci"].push_back({round_sig6(cell.ci_lo), round_sig6(cell.ci_hi)});
    }
    j["rows"].push_back(std::move(row));
  }
  return j;
}

std::string to_text(const Json& value) { return value.dump(2) + "\n"; }

}  // namespace segstat
