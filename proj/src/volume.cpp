#include "segstat/volume.hpp"

#include <cmath>

#include "segstat/errors.hpp"

namespace segstat {

void validate(const LabelVolume& volume) {
  for (std::uint32_t d : volume.dims)
    if (d < 1) fail(errc::bad_header, "volume dimension must be >= 1");
  for (double s : volume.spacing)
    if (!(s > 0.0) || !std::isfinite(s)) fail(errc::bad_header, "voxel spacing must be positive and finite");
  if (volume.labels.size() != volume.voxel_count())
    fail(errc::truncated_data, "label array does not match volume dimensions");
  for (std::int32_t v : volume.labels)
    if (v < 0) fail(errc::non_integer_labels, "label values must be non-negative");
}

LabelVolume extract_binary_mask(const LabelVolume& volume, std::int32_t label) {
  LabelVolume mask;
  mask.dims = volume.dims;
  mask.spacing = volume.spacing;
  mask.labels.resize(volume.labels.size());
  for (std::size_t i = 0; i < volume.labels.size(); ++i)
    mask.labels[i] = volume.labels[i] == label ? 1 : 0;
  return mask;
}

bool grids_compatible(const LabelVolume& a, const LabelVolume& b) {
  if (a.dims != b.dims) return false;
  for (int axis = 0; axis < 3; ++axis) {
    const double sa = a.spacing[axis], sb = b.spacing[axis];
    if (std::abs(sa - sb) > 1e-4 * std::max(std::abs(sa), std::abs(sb))) return false;
  }
  return true;
}

}  // namespace segstat
