#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "segstat/volume.hpp"

namespace segstat {

/// The subset of the 348-byte NIfTI-1 header this library reads.
/// Field offsets per the reference layout: sizeof_hdr@0 (int32), dim[8]@40
/// (int16), datatype@70 (int16), pixdim[8]@76 (float32), vox_offset@108
/// (float32), magic@344 (4 bytes).
struct NiftiHeader {
  std::int32_t sizeof_hdr = 0;
  std::array<std::int16_t, 8> dim{};
  std::int16_t datatype_code = 0;
  std::array<float, 8> pixdim{};
  float vox_offset = 0.0f;
  std::array<char, 4> magic{};
  bool byteswapped = false;  // header stored in the non-native byte order
};

/// Codes the parser accepts: uint8, int16, int32, float32, float64.
bool nifti_datatype_supported(std::int16_t code);

struct NiftiFile {
  NiftiHeader header;
  LabelVolume volume;
  std::vector<std::string> warnings;
};

/// Parses a complete NIfTI-1 single file (optionally gzip-compressed,
/// detected by the 1f 8b prefix) into a label volume.
///
/// Byte order is inferred from which order makes sizeof_hdr read 348; that
/// order is applied to every field and the payload. Float-typed payloads must
/// round-trip to integers within 1e-6. pixdim components of 0 default to a
/// spacing of 1.0 with a warning. qform/sform are ignored: metrics operate on
/// the grid and its spacing, and volume pairs are required to match instead.
NiftiFile parse_nifti(std::span<const std::uint8_t> bytes);

NiftiFile read_nifti_file(const std::filesystem::path& path);

/// True when the buffer starts with the gzip magic prefix.
bool is_gzip(std::span<const std::uint8_t> bytes);

/// Inflates a complete gzip stream (used by the parser; exposed for tests).
std::vector<std::uint8_t> gunzip(std::span<const std::uint8_t> bytes);

}  // namespace segstat
