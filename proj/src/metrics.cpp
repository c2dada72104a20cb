#include "segstat/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "segstat/edt.hpp"
#include "segstat/errors.hpp"
#include "segstat/stats.hpp"

namespace segstat {

namespace {

void require_binary(const LabelVolume& mask, const char* who) {
  for (std::int32_t v : mask.labels)
    if (v != 0 && v != 1) fail(errc::bad_arguments, std::string(who) + " expects a binary mask");
}

void require_compatible(const LabelVolume& gt, const LabelVolume& pred) {
  if (gt.dims != pred.dims)
    fail(errc::shape_mismatch, "volumes have different dimensions");
  for (int axis = 0; axis < 3; ++axis) {
    const double a = gt.spacing[std::size_t(axis)], b = pred.spacing[std::size_t(axis)];
    if (std::abs(a - b) > 1e-4 * std::max(std::abs(a), std::abs(b)))
      fail(errc::spacing_mismatch, "volumes have different voxel spacing");
  }
}

inline double sq(double x) { return x * x; }

}  // namespace

std::vector<VoxelCoord> surface_voxels(const LabelVolume& mask) {
  const auto [nx, ny, nz] = mask.dims;
  std::vector<VoxelCoord> surface;
  auto fg = [&](std::int64_t i, std::int64_t j, std::int64_t k) {
    if (i < 0 || j < 0 || k < 0 || i >= nx || j >= ny || k >= nz) return false;
    return mask.labels[mask.index(std::uint32_t(i), std::uint32_t(j), std::uint32_t(k))] != 0;
  };
  for (std::uint32_t k = 0; k < nz; ++k)
    for (std::uint32_t j = 0; j < ny; ++j)
      for (std::uint32_t i = 0; i < nx; ++i) {
        if (!mask.labels[mask.index(i, j, k)]) continue;
        const std::int64_t x = i, y = j, z = k;
        if (!fg(x - 1, y, z) || !fg(x + 1, y, z) || !fg(x, y - 1, z) || !fg(x, y + 1, z) ||
            !fg(x, y, z - 1) || !fg(x, y, z + 1))
          surface.push_back({i, j, k});
      }
  return surface;
}

DiceResult dice(const LabelVolume& gt, const LabelVolume& pred) {
  require_compatible(gt, pred);
  require_binary(gt, "dice");
  require_binary(pred, "dice");
  std::size_t a = 0, b = 0, inter = 0;
  for (std::size_t i = 0; i < gt.labels.size(); ++i) {
    const bool in_a = gt.labels[i] != 0, in_b = pred.labels[i] != 0;
    a += in_a;
    b += in_b;
    inter += in_a && in_b;
  }
  if (a + b == 0) return {100.0, true};
  return {100.0 * (2.0 * double(inter)) / double(a + b), false};
}

namespace detail {

std::vector<double> directed_surface_distances(const std::vector<VoxelCoord>& from,
                                               const std::vector<VoxelCoord>& to,
                                               const std::array<std::uint32_t, 3>& dims,
                                               const std::array<double, 3>& spacing,
                                               NnStrategy strategy, RunMode mode) {
  std::vector<double> out(from.size());
  if (from.empty()) return out;
  if (to.empty()) {
    std::fill(out.begin(), out.end(), std::numeric_limits<double>::infinity());
    return out;
  }

  if (strategy == NnStrategy::Auto) {
    // All-pairs is cheaper than a full-grid transform for small surfaces.
    strategy = from.size() * to.size() <= 4096 ? NnStrategy::BruteForce
                                               : NnStrategy::DistanceTransform;
  }

  const auto [sx, sy, sz] = spacing;
  if (strategy == NnStrategy::BruteForce) {
    auto nearest = [&](const VoxelCoord& a) {
      double best = std::numeric_limits<double>::infinity();
      for (const VoxelCoord& b : to) {
        const double dx = sx * (double(a.x) - double(b.x));
        const double dy = sy * (double(a.y) - double(b.y));
        const double dz = sz * (double(a.z) - double(b.z));
        best = std::min(best, (dx * dx + dy * dy) + dz * dz);
      }
      return std::sqrt(best);
    };
    if (mode == RunMode::Serial) {
      for (std::size_t i = 0; i < from.size(); ++i) out[i] = nearest(from[i]);
    } else {
      const int threads = parallel::thread_count();
#pragma omp parallel for num_threads(threads) schedule(static)
      for (std::int64_t i = 0; i < std::int64_t(from.size()); ++i)
        out[std::size_t(i)] = nearest(from[std::size_t(i)]);
    }
    return out;
  }

  std::vector<std::uint8_t> sites(std::size_t(dims[0]) * dims[1] * dims[2], 0);
  const std::size_t stride_y = dims[0];
  const std::size_t stride_z = std::size_t(dims[0]) * dims[1];
  for (const VoxelCoord& b : to) sites[b.x + b.y * stride_y + b.z * stride_z] = 1;
  const std::vector<double> d2 = squared_distance_transform(dims, spacing, sites, mode);
  for (std::size_t i = 0; i < from.size(); ++i) {
    const VoxelCoord& a = from[i];
    out[i] = std::sqrt(d2[a.x + a.y * stride_y + a.z * stride_z]);
  }
  return out;
}

}  // namespace detail

Hd95Result hd95(const LabelVolume& gt, const LabelVolume& pred, const Hd95Options& opts) {
  require_compatible(gt, pred);
  require_binary(gt, "hd95");
  require_binary(pred, "hd95");

  const std::vector<VoxelCoord> surf_gt = surface_voxels(gt);
  const std::vector<VoxelCoord> surf_pred = surface_voxels(pred);

  Hd95Result res;
  if (surf_gt.empty() && surf_pred.empty()) {
    res.defined = true;
    res.both_empty = true;
    return res;  // value 0, exact_hd 0
  }
  if (surf_gt.empty() || surf_pred.empty()) return res;  // undefined

  auto directed = [&](const std::vector<VoxelCoord>& from, const std::vector<VoxelCoord>& to) {
    std::vector<double> d = detail::directed_surface_distances(from, to, gt.dims, gt.spacing,
                                                               opts.strategy, opts.mode);
    std::sort(d.begin(), d.end());
    return d;
  };
  const std::vector<double> d_ab = directed(surf_gt, surf_pred);
  const std::vector<double> d_ba = directed(surf_pred, surf_gt);

  res.defined = true;
  res.value = std::max(stats::percentile_sorted(d_ab, 0.95), stats::percentile_sorted(d_ba, 0.95));
  res.exact_hd = std::max(d_ab.back(), d_ba.back());
  return res;
}

SubjectMetrics evaluate_pair(const LabelVolume& gt, const LabelVolume& pred, std::int32_t label,
                             const Hd95Options& opts) {
  const LabelVolume mask_gt = extract_binary_mask(gt, label);
  const LabelVolume mask_pred = extract_binary_mask(pred, label);

  SubjectMetrics m;
  m.label = label;
  const DiceResult d = dice(mask_gt, mask_pred);
  m.dice = d.value;
  const Hd95Result h = hd95(mask_gt, mask_pred, opts);
  m.both_empty = d.both_empty;
  if (h.defined) {
    m.hd95 = h.value;
    m.exact_hd = h.exact_hd;
  }
  return m;
}

}  // namespace segstat
