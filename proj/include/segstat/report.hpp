#pragma once

#include <string>

#include <json.hpp>

#include "segstat/ci.hpp"
#include "segstat/planner.hpp"
#include "segstat/simulate.hpp"
#include "segstat/subsample.hpp"

namespace segstat {

using Json = nlohmann::ordered_json;

/// Rounds to six significant decimal digits; all JSON reports render numbers
/// through this so outputs are stable and compact.
double round_sig6(double value);

Json json_parametric(const CiReport& report);
Json json_bootstrap(const BootstrapReport& report);

/// {metric, n, level, parametric:{...}, bootstrap:{...}} per the report schema;
/// bootstrap is omitted when absent.
Json ci_report_json(const std::string& metric, std::size_t n, double level,
                    const CiReport* parametric, const BootstrapReport* bootstrap);

Json sweep_report_json(const SubsampleSweepResult& result);
std::string sweep_rows_csv(const SubsampleSweepResult& result);
std::string sweep_drawings_csv(const SubsampleSweepResult& result);

Json coverage_report_json(const CoverageReport& report);
std::string coverage_trials_csv(const CoverageReport& report);

Json plan_json(const PlanResult& plan);
Json table_json(const GaussianTable& table);

/// Serializes with a fixed layout (2-space indent, trailing newline).
std::string to_text(const Json& value);

}  // namespace segstat
