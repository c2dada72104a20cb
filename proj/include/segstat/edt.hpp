#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "segstat/parallel.hpp"

namespace segstat {

/// Exact spacing-weighted squared Euclidean distance transform on a 3D grid.
///
/// `sites` marks zero-distance voxels (nonzero entries), x-fastest layout.
/// The result holds, for every voxel, min over sites of
///   (sx*di)^2 + (sy*dj)^2 + (sz*dk)^2
/// with integer coordinate deltas, or +inf when there are no sites.
///
/// Separable: an integer nearest-site scan along x, then exact lower-envelope
/// passes (Felzenszwalb-Huttenlocher) along y and z. The term order and the
/// per-term expression are fixed so results are reproducible bit-for-bit,
/// including between the serial and OpenMP forms.
std::vector<double> squared_distance_transform(const std::array<std::uint32_t, 3>& dims,
                                               const std::array<double, 3>& spacing,
                                               const std::vector<std::uint8_t>& sites,
                                               RunMode mode = RunMode::Parallel);

}  // namespace segstat
