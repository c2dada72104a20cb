#pragma once

#include <stdexcept>
#include <string>

namespace segstat {

enum class errc {
  // volume / nifti
  bad_magic,
  header_only_file,
  unsupported_datatype,
  truncated_data,
  non_integer_labels,
  bad_header,
  // metrics
  shape_mismatch,
  spacing_mismatch,
  // series / ci
  empty_series,
  non_finite_value,
  too_large_for_enumeration,
  // subsample
  size_exceeds_population,
  // planner
  non_positive_input,
  // simulate
  unknown_distribution,
  // csv / cli
  unknown_column,
  all_undefined,
  missing_pair,
  bad_csv,
  bad_arguments,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace segstat
