#include "segstat/nifti.hpp"

#include <zlib.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "segstat/errors.hpp"

namespace segstat {

namespace {

constexpr std::size_t kHeaderSize = 348;

// NIfTI-1 datatype codes
constexpr std::int16_t kDtUint8 = 2;
constexpr std::int16_t kDtInt16 = 4;
constexpr std::int16_t kDtInt32 = 8;
constexpr std::int16_t kDtFloat32 = 16;
constexpr std::int16_t kDtFloat64 = 64;

template <typename T>
T read_scalar(const std::uint8_t* p, bool swap) {
  std::array<std::uint8_t, sizeof(T)> raw;
  std::memcpy(raw.data(), p, sizeof(T));
  if (swap) std::reverse(raw.begin(), raw.end());
  T out;
  std::memcpy(&out, raw.data(), sizeof(T));
  return out;
}

std::size_t datatype_size(std::int16_t code) {
  switch (code) {
    case kDtUint8: return 1;
    case kDtInt16: return 2;
    case kDtInt32: return 4;
    case kDtFloat32: return 4;
    case kDtFloat64: return 8;
    default: return 0;
  }
}

std::int32_t to_integer_label(double value, std::size_t voxel) {
  const double rounded = std::nearbyint(value);
  if (!std::isfinite(value) || std::abs(value - rounded) > 1e-6)
    fail(errc::non_integer_labels,
         "voxel " + std::to_string(voxel) + " value " + std::to_string(value) +
             " is not an integer label");
  if (rounded < 0.0)
    fail(errc::non_integer_labels,
         "voxel " + std::to_string(voxel) + " has negative label " + std::to_string(rounded));
  return std::int32_t(rounded);
}

}  // namespace

bool nifti_datatype_supported(std::int16_t code) { return datatype_size(code) != 0; }

bool is_gzip(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 2 && bytes[0] == 0x1f && bytes[1] == 0x8b;
}

std::vector<std::uint8_t> gunzip(std::span<const std::uint8_t> bytes) {
  z_stream zs{};
  // 15 window bits + 32: accept gzip or zlib wrappers
  if (inflateInit2(&zs, 15 + 32) != Z_OK) fail(errc::truncated_data, "zlib init failed");

  std::vector<std::uint8_t> out;
  out.reserve(bytes.size() * 4);
  std::array<std::uint8_t, 1 << 16> chunk;
  zs.next_in = const_cast<Bytef*>(bytes.data());
  zs.avail_in = uInt(bytes.size());
  int rc = Z_OK;
  do {
    zs.next_out = chunk.data();
    zs.avail_out = uInt(chunk.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      fail(errc::truncated_data, "gzip stream is corrupt or incomplete");
    }
    out.insert(out.end(), chunk.data(), chunk.data() + (chunk.size() - zs.avail_out));
  } while (rc != Z_STREAM_END && (zs.avail_in > 0 || zs.avail_out == 0));
  inflateEnd(&zs);
  if (rc != Z_STREAM_END) fail(errc::truncated_data, "gzip stream ended prematurely");
  return out;
}

NiftiFile parse_nifti(std::span<const std::uint8_t> bytes) {
  std::vector<std::uint8_t> inflated;
  if (is_gzip(bytes)) {
    inflated = gunzip(bytes);
    bytes = inflated;
  }
  if (bytes.size() < kHeaderSize) fail(errc::truncated_data, "file shorter than the 348-byte header");

  const std::uint8_t* base = bytes.data();

  // Infer byte order: sizeof_hdr must read 348 under exactly one order.
  bool swap = false;
  std::int32_t sizeof_hdr = read_scalar<std::int32_t>(base + 0, false);
  if (sizeof_hdr != 348) {
    const std::int32_t swapped = read_scalar<std::int32_t>(base + 0, true);
    if (swapped != 348) fail(errc::bad_magic, "sizeof_hdr is 348 under neither byte order");
    swap = true;
    sizeof_hdr = swapped;
  }

  NiftiFile file;
  NiftiHeader& hdr = file.header;
  hdr.sizeof_hdr = sizeof_hdr;
  hdr.byteswapped = swap;
  for (int i = 0; i < 8; ++i) hdr.dim[i] = read_scalar<std::int16_t>(base + 40 + 2 * i, swap);
  hdr.datatype_code = read_scalar<std::int16_t>(base + 70, swap);
  for (int i = 0; i < 8; ++i) hdr.pixdim[i] = read_scalar<float>(base + 76 + 4 * i, swap);
  hdr.vox_offset = read_scalar<float>(base + 108, swap);
  std::memcpy(hdr.magic.data(), base + 344, 4);

  if (std::memcmp(hdr.magic.data(), "ni1\0", 4) == 0)
    fail(errc::header_only_file, "two-file (.hdr/.img) NIfTI is not supported");
  if (std::memcmp(hdr.magic.data(), "n+1\0", 4) != 0)
    fail(errc::bad_magic, "magic is neither 'n+1' nor 'ni1'");

  if (!nifti_datatype_supported(hdr.datatype_code))
    fail(errc::unsupported_datatype, "datatype code " + std::to_string(hdr.datatype_code));

  const int ndim = hdr.dim[0];
  if (ndim < 1 || ndim > 7) fail(errc::bad_header, "dim[0] = " + std::to_string(ndim));
  for (int i = 4; i <= ndim; ++i)
    if (hdr.dim[i] > 1)
      fail(errc::bad_header, "non-spatial dimension " + std::to_string(i) + " has extent " +
                                 std::to_string(hdr.dim[i]));

  LabelVolume& vol = file.volume;
  for (int axis = 0; axis < 3; ++axis) {
    const std::int16_t extent = axis < ndim ? hdr.dim[axis + 1] : 1;
    if (extent < 1)
      fail(errc::bad_header, "dim[" + std::to_string(axis + 1) + "] = " + std::to_string(extent));
    vol.dims[axis] = std::uint32_t(extent);

    const float px = axis < ndim ? hdr.pixdim[axis + 1] : 1.0f;
    if (px == 0.0f) {
      vol.spacing[axis] = 1.0;
      file.warnings.push_back("pixdim[" + std::to_string(axis + 1) +
                              "] is 0; defaulting spacing to 1.0");
    } else if (!(px > 0.0f) || !std::isfinite(px)) {
      fail(errc::bad_header, "pixdim[" + std::to_string(axis + 1) + "] = " + std::to_string(px));
    } else {
      vol.spacing[axis] = double(px);
    }
  }

  const std::size_t voxels = vol.voxel_count();
  const std::size_t elem = datatype_size(hdr.datatype_code);
  if (!(hdr.vox_offset >= float(kHeaderSize)) || hdr.vox_offset != std::floor(hdr.vox_offset))
    fail(errc::bad_header, "vox_offset " + std::to_string(hdr.vox_offset));
  const std::size_t offset = std::size_t(hdr.vox_offset);
  if (bytes.size() < offset || bytes.size() - offset < voxels * elem)
    fail(errc::truncated_data, "payload shorter than the dimensions imply");

  const std::uint8_t* data = base + offset;
  vol.labels.resize(voxels);
  for (std::size_t v = 0; v < voxels; ++v) {
    const std::uint8_t* p = data + v * elem;
    switch (hdr.datatype_code) {
      case kDtUint8: vol.labels[v] = p[0]; break;
      case kDtInt16: {
        const std::int16_t raw = read_scalar<std::int16_t>(p, swap);
        if (raw < 0) fail(errc::non_integer_labels, "negative int16 label");
        vol.labels[v] = raw;
        break;
      }
      case kDtInt32: {
        const std::int32_t raw = read_scalar<std::int32_t>(p, swap);
        if (raw < 0) fail(errc::non_integer_labels, "negative int32 label");
        vol.labels[v] = raw;
        break;
      }
      case kDtFloat32: vol.labels[v] = to_integer_label(read_scalar<float>(p, swap), v); break;
      case kDtFloat64: vol.labels[v] = to_integer_label(read_scalar<double>(p, swap), v); break;
    }
  }

  validate(vol);
  return file;
}

NiftiFile read_nifti_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::truncated_data, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse_nifti(bytes);
}

}  // namespace segstat
