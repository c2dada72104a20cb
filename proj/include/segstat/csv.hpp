#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "segstat/ci.hpp"

namespace segstat {

/// Shortest decimal rendering that round-trips the double exactly.
std::string format_double(double value);

/// Wide per-subject metric table: subject_id plus one column per
/// metric-label pair (dice_L1, hd95_L1, ...). An empty cell is an undefined
/// value. Subject ids and column names are unique.
struct MetricsCsv {
  struct Row {
    std::string subject_id;
    std::vector<std::optional<double>> cells;
  };
  std::vector<std::string> columns;  // excluding subject_id
  std::vector<Row> rows;

  /// Extracts one column as a series; undefined cells are skipped and counted.
  MetricSeries column_series(const std::string& column, std::size_t* skipped = nullptr) const;
};

MetricsCsv parse_metrics_csv(const std::string& text);
MetricsCsv read_metrics_csv(const std::filesystem::path& path);
std::string write_metrics_csv(const MetricsCsv& table);

}  // namespace segstat
