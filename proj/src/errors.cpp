#include "segstat/errors.hpp"

namespace segstat {

const char* errc_name(errc code) {
  switch (code) {
    case errc::bad_magic: return "BadMagic";
    case errc::header_only_file: return "HeaderOnlyFile";
    case errc::unsupported_datatype: return "UnsupportedDatatype";
    case errc::truncated_data: return "TruncatedData";
    case errc::non_integer_labels: return "NonIntegerLabels";
    case errc::bad_header: return "BadHeader";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::spacing_mismatch: return "SpacingMismatch";
    case errc::empty_series: return "EmptySeries";
    case errc::non_finite_value: return "NonFiniteValue";
    case errc::too_large_for_enumeration: return "TooLargeForEnumeration";
    case errc::size_exceeds_population: return "SizeExceedsPopulation";
    case errc::non_positive_input: return "NonPositiveInput";
    case errc::unknown_distribution: return "UnknownDistribution";
    case errc::unknown_column: return "UnknownColumn";
    case errc::all_undefined: return "AllUndefined";
    case errc::missing_pair: return "MissingPair";
    case errc::bad_csv: return "BadCsv";
    case errc::bad_arguments: return "BadArguments";
  }
  return "Error";
}

}  // namespace segstat
