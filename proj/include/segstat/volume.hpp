#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace segstat {

/// Dense 3D integer label grid with physical voxel spacing in millimetres.
/// Values are stored x-fastest: index(i,j,k) = i + nx*(j + ny*k).
struct LabelVolume {
  std::array<std::uint32_t, 3> dims{1, 1, 1};   // nx, ny, nz (each >= 1)
  std::array<double, 3> spacing{1.0, 1.0, 1.0};  // sx, sy, sz (each > 0, finite)
  std::vector<std::int32_t> labels;              // size nx*ny*nz, values >= 0

  std::size_t voxel_count() const {
    return std::size_t(dims[0]) * dims[1] * dims[2];
  }
  std::size_t index(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    return std::size_t(i) + std::size_t(dims[0]) * (std::size_t(j) + std::size_t(dims[1]) * k);
  }
  std::int32_t at(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    return labels[index(i, j, k)];
  }
};

/// Throws if dims/spacing/labels violate the invariants above.
void validate(const LabelVolume& volume);

/// Binary mask of one label: same dims/spacing, 1 exactly where the input
/// equals `label`, 0 elsewhere. A label absent from the volume yields an
/// all-zero mask.
LabelVolume extract_binary_mask(const LabelVolume& volume, std::int32_t label);

/// True when both grids have identical dims and spacing within a relative
/// tolerance of 1e-4 per spacing component.
bool grids_compatible(const LabelVolume& a, const LabelVolume& b);

}  // namespace segstat
