#pragma once

// Test-only NIfTI-1 writer: just enough of the format to round-trip label
// volumes through the parser, in either byte order, optionally gzipped.

#include <zlib.h>

#include <array>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "segstat/volume.hpp"

namespace segstat::testing {

struct NiftiWriteOptions {
  std::int16_t datatype = 4;  // int16 by default
  bool big_endian = false;
  bool gzip = false;
  float vox_offset = 352.0f;
  std::array<float, 3> pixdim_override{-1.0f, -1.0f, -1.0f};  // <0 = use volume spacing
  std::int16_t ndim = 3;
  std::array<std::int16_t, 4> trailing_dims{1, 1, 1, 1};  // dim[4..7]
  std::array<char, 4> magic{'n', '+', '1', '\0'};
};

namespace detail {

inline bool host_is_little_endian() {
  const std::uint16_t probe = 1;
  std::uint8_t first;
  std::memcpy(&first, &probe, 1);
  return first == 1;
}

template <typename T>
void put(std::vector<std::uint8_t>& out, std::size_t offset, T value, bool big_endian) {
  std::array<std::uint8_t, sizeof(T)> raw;
  std::memcpy(raw.data(), &value, sizeof(T));
  if (host_is_little_endian() == big_endian) std::reverse(raw.begin(), raw.end());
  std::memcpy(out.data() + offset, raw.data(), sizeof(T));
}

inline std::vector<std::uint8_t> gzip_compress(const std::vector<std::uint8_t>& in) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_SPEED, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK)
    throw std::runtime_error("deflateInit2 failed");
  std::vector<std::uint8_t> out(deflateBound(&zs, uLong(in.size())) + 32);
  zs.next_in = const_cast<Bytef*>(in.data());
  zs.avail_in = uInt(in.size());
  zs.next_out = out.data();
  zs.avail_out = uInt(out.size());
  if (deflate(&zs, Z_FINISH) != Z_STREAM_END) {
    deflateEnd(&zs);
    throw std::runtime_error("deflate failed");
  }
  out.resize(zs.total_out);
  deflateEnd(&zs);
  return out;
}

}  // namespace detail

inline std::vector<std::uint8_t> write_nifti(const LabelVolume& volume,
                                             const NiftiWriteOptions& opts = {}) {
  using detail::put;
  const bool be = opts.big_endian;
  const std::size_t offset = std::size_t(opts.vox_offset);
  std::size_t elem = 0;
  switch (opts.datatype) {
    case 2: elem = 1; break;
    case 4: elem = 2; break;
    case 8: elem = 4; break;
    case 16: elem = 4; break;
    case 64: elem = 8; break;
    default: throw std::runtime_error("writer: unsupported datatype");
  }

  std::vector<std::uint8_t> out(offset + volume.voxel_count() * elem, 0);
  put<std::int32_t>(out, 0, 348, be);
  put<std::int16_t>(out, 40, opts.ndim, be);
  for (int axis = 0; axis < 3; ++axis)
    put<std::int16_t>(out, 40 + 2 * (axis + 1), std::int16_t(volume.dims[std::size_t(axis)]), be);
  for (int d = 4; d < 8; ++d)
    put<std::int16_t>(out, 40 + 2 * d, opts.trailing_dims[std::size_t(d - 4)], be);
  put<std::int16_t>(out, 70, opts.datatype, be);
  put<std::int16_t>(out, 72, std::int16_t(elem * 8), be);  // bitpix
  put<float>(out, 76, 1.0f, be);
  for (int axis = 0; axis < 3; ++axis) {
    const float given = opts.pixdim_override[std::size_t(axis)];
    const float px = given < 0.0f ? float(volume.spacing[std::size_t(axis)]) : given;
    put<float>(out, 76 + 4 * (axis + 1), px, be);
  }
  put<float>(out, 108, opts.vox_offset, be);
  std::memcpy(out.data() + 344, opts.magic.data(), 4);

  for (std::size_t v = 0; v < volume.voxel_count(); ++v) {
    const std::size_t at = offset + v * elem;
    const std::int32_t value = volume.labels[v];
    switch (opts.datatype) {
      case 2: out[at] = std::uint8_t(value); break;
      case 4: put<std::int16_t>(out, at, std::int16_t(value), be); break;
      case 8: put<std::int32_t>(out, at, value, be); break;
      case 16: put<float>(out, at, float(value), be); break;
      case 64: put<double>(out, at, double(value), be); break;
    }
  }
  if (opts.gzip) return detail::gzip_compress(out);
  return out;
}

inline void write_nifti_file(const std::filesystem::path& path, const LabelVolume& volume,
                             const NiftiWriteOptions& opts = {}) {
  const std::vector<std::uint8_t> bytes = write_nifti(volume, opts);
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace segstat::testing
