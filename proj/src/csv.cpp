#include "segstat/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "segstat/errors.hpp"

namespace segstat {

std::string format_double(double value) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, end);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& text, std::size_t line_no) {
  const char* first = text.data();
  const char* last = first + text.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value))
    fail(errc::bad_csv, "line " + std::to_string(line_no) + ": '" + text + "' is not a finite number");
  return value;
}

}  // namespace

MetricsCsv parse_metrics_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) fail(errc::bad_csv, "empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  MetricsCsv table;
  std::vector<std::string> header = split_line(line);
  if (header.empty() || header[0] != "subject_id")
    fail(errc::bad_csv, "first header column must be subject_id");
  table.columns.assign(header.begin() + 1, header.end());
  std::set<std::string> seen_columns(table.columns.begin(), table.columns.end());
  if (seen_columns.size() != table.columns.size()) fail(errc::bad_csv, "duplicate column names");

  std::set<std::string> seen_ids;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_line(line);
    if (fields.size() != table.columns.size() + 1)
      fail(errc::bad_csv, "line " + std::to_string(line_no) + ": expected " +
                              std::to_string(table.columns.size() + 1) + " fields, got " +
                              std::to_string(fields.size()));
    if (!seen_ids.insert(fields[0]).second)
      fail(errc::bad_csv, "duplicate subject_id '" + fields[0] + "'");
    MetricsCsv::Row row;
    row.subject_id = fields[0];
    for (std::size_t c = 1; c < fields.size(); ++c) {
      if (fields[c].empty())
        row.cells.emplace_back();
      else
        row.cells.emplace_back(parse_cell(fields[c], line_no));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

MetricsCsv read_metrics_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(errc::bad_csv, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_metrics_csv(buffer.str());
}

std::string write_metrics_csv(const MetricsCsv& table) {
  std::ostringstream os;
  os << "subject_id";
  for (const std::string& col : table.columns) os << "," << col;
  os << "\n";
  for (const MetricsCsv::Row& row : table.rows) {
    os << row.subject_id;
    for (const auto& cell : row.cells) {
      os << ",";
      if (cell) os << format_double(*cell);
    }
    os << "\n";
  }
  return os.str();
}

MetricSeries MetricsCsv::column_series(const std::string& column, std::size_t* skipped) const {
  std::size_t index = columns.size();
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == column) {
      index = c;
      break;
    }
  if (index == columns.size()) fail(errc::unknown_column, "'" + column + "'");

  MetricSeries series;
  series.name = column;
  std::size_t skipped_count = 0;
  for (const Row& row : rows) {
    if (row.cells[index])
      series.values.push_back(*row.cells[index]);
    else
      ++skipped_count;
  }
  if (skipped) *skipped = skipped_count;
  if (series.values.empty()) fail(errc::all_undefined, "column '" + column + "' has no defined values");
  return series;
}

}  // namespace segstat
