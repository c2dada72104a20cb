#pragma once

// Seeded fixture generators for tests and the acceptance suite.

#include <cmath>
#include <cstdint>
#include <vector>

#include "segstat/ci.hpp"
#include "segstat/rng.hpp"
#include "segstat/volume.hpp"

namespace segstat::testing {

inline RandomStream test_stream(std::uint64_t seed, std::uint64_t index) {
  return RandomStream(seed, stream_domain::pack(stream_domain::generic, index));
}

/// Random binary mask with the given foreground probability (per mille).
inline LabelVolume random_mask(std::array<std::uint32_t, 3> dims, std::array<double, 3> spacing,
                               RandomStream& rng, std::uint32_t fg_per_mille = 400) {
  LabelVolume vol;
  vol.dims = dims;
  vol.spacing = spacing;
  vol.labels.resize(vol.voxel_count());
  for (auto& v : vol.labels) v = rng.next_index(1000) < fg_per_mille ? 1 : 0;
  return vol;
}

inline MetricSeries gaussian_series(std::size_t n, double mu, double sigma, RandomStream& rng,
                                    const std::string& name = "synthetic") {
  MetricSeries s;
  s.name = name;
  s.values.resize(n);
  for (double& v : s.values) v = mu + sigma * rng.next_normal();
  return s;
}

/// Rescales a series to the exact target moments (population convention):
/// y = mu + (x - mean(x)) * sigma / stddev(x).
inline MetricSeries affine_rescale(const MetricSeries& series, double mu, double sigma) {
  double m = 0.0;
  for (double v : series.values) m += v;
  m /= double(series.values.size());
  double var = 0.0;
  for (double v : series.values) var += (v - m) * (v - m);
  const double sd = std::sqrt(var / double(series.values.size()));

  MetricSeries out;
  out.name = series.name;
  out.unit = series.unit;
  out.values.reserve(series.values.size());
  for (double v : series.values) out.values.push_back(mu + (v - m) * (sigma / sd));
  return out;
}

}  // namespace segstat::testing
