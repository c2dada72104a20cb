#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "segstat/parallel.hpp"
#include "segstat/volume.hpp"

namespace segstat {

struct VoxelCoord {
  std::uint32_t x = 0, y = 0, z = 0;
  bool operator==(const VoxelCoord&) const = default;
};

/// Foreground voxels with at least one 6-connected neighbor that is
/// background or outside the grid. Returned in x-fastest grid order.
std::vector<VoxelCoord> surface_voxels(const LabelVolume& mask);

struct DiceResult {
  double value = 0.0;  // percentage in [0, 100]
  bool both_empty = false;
};

/// 100 * 2|A^B| / (|A|+|B|); both masks empty reads as perfect agreement
/// (100) with the both_empty flag set.
DiceResult dice(const LabelVolume& gt, const LabelVolume& pred);

enum class NnStrategy {
  Auto,              // brute force for small surfaces, distance transform otherwise
  BruteForce,        // exact all-pairs reference
  DistanceTransform  // exact separable EDT sampled at the query surface
};

struct Hd95Options {
  NnStrategy strategy = NnStrategy::Auto;
  RunMode mode = RunMode::Parallel;
};

struct Hd95Result {
  bool defined = false;
  double value = 0.0;     // millimetres; valid when defined
  double exact_hd = 0.0;  // 100th-percentile variant, debug field
  bool both_empty = false;
};

/// Robust Hausdorff distance: max over both directions of the 95th percentile
/// (linear interpolation) of surface-to-surface point distances, surfaces
/// scaled by voxel spacing. Both masks empty -> 0; exactly one empty ->
/// undefined (callers exclude it from series).
Hd95Result hd95(const LabelVolume& gt, const LabelVolume& pred, const Hd95Options& opts = {});

/// Per-subject record for one (subject, label) pair.
struct SubjectMetrics {
  std::string subject_id;
  std::int32_t label = 0;
  double dice = 0.0;
  std::optional<double> hd95;  // nullopt = undefined (exactly one empty mask)
  double exact_hd = 0.0;
  bool both_empty = false;
};

/// Extracts the binary masks for `label` from co-registered volumes and
/// computes both metrics.
SubjectMetrics evaluate_pair(const LabelVolume& gt, const LabelVolume& pred, std::int32_t label,
                             const Hd95Options& opts = {});

namespace detail {

/// Directed distances (millimetres) from each `from` voxel to the nearest
/// `to` voxel, under the chosen strategy. Exposed for tests and benchmarks.
std::vector<double> directed_surface_distances(const std::vector<VoxelCoord>& from,
                                               const std::vector<VoxelCoord>& to,
                                               const std::array<std::uint32_t, 3>& dims,
                                               const std::array<double, 3>& spacing,
                                               NnStrategy strategy, RunMode mode);

}  // namespace detail
}  // namespace segstat
