#include <doctest.h>

#include <cmath>
#include <limits>

#include "segstat/edt.hpp"
#include "support/generators.hpp"

using namespace segstat;

namespace {

/// Direct min-over-sites reference, same distance expression as the contract.
std::vector<double> brute_sq_edt(const std::array<std::uint32_t, 3>& dims,
                                 const std::array<double, 3>& spacing,
                                 const std::vector<std::uint8_t>& sites) {
  const std::int64_t nx = dims[0], ny = dims[1], nz = dims[2];
  std::vector<double> out(std::size_t(nx * ny * nz), std::numeric_limits<double>::infinity());
  std::vector<std::array<std::int64_t, 3>> site_list;
  for (std::int64_t z = 0; z < nz; ++z)
    for (std::int64_t y = 0; y < ny; ++y)
      for (std::int64_t x = 0; x < nx; ++x)
        if (sites[std::size_t(x + nx * (y + ny * z))]) site_list.push_back({x, y, z});
  if (site_list.empty()) return out;
  for (std::int64_t z = 0; z < nz; ++z)
    for (std::int64_t y = 0; y < ny; ++y)
      for (std::int64_t x = 0; x < nx; ++x) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : site_list) {
          const double dx = spacing[0] * double(x - s[0]);
          const double dy = spacing[1] * double(y - s[1]);
          const double dz = spacing[2] * double(z - s[2]);
          const double d2 = (dx * dx + dy * dy) + dz * dz;
          if (d2 < best) best = d2;
        }
        out[std::size_t(x + nx * (y + ny * z))] = best;
      }
  return out;
}

}  // namespace

TEST_CASE("edt: single site, anisotropic spacing") {
  const std::array<std::uint32_t, 3> dims{4, 3, 2};
  const std::array<double, 3> spacing{1.0, 2.0, 0.5};
  std::vector<std::uint8_t> sites(4 * 3 * 2, 0);
  sites[0] = 1;  // (0,0,0)
  const auto d2 = squared_distance_transform(dims, spacing, sites, RunMode::Serial);
  CHECK(d2[0] == 0.0);
  // voxel (3,2,1): (1*3)^2 + (2*2)^2 + (0.5*1)^2 = 9 + 16 + 0.25
  CHECK(d2[3 + 4 * (2 + 3 * 1)] == 25.25);
}

TEST_CASE("edt: no sites yields all infinities") {
  const auto d2 = squared_distance_transform({3, 3, 3}, {1, 1, 1},
                                             std::vector<std::uint8_t>(27, 0), RunMode::Serial);
  for (double v : d2) CHECK(v == std::numeric_limits<double>::infinity());
}

TEST_CASE("edt equals brute force bit-for-bit on random grids") {
  auto rng = testing::test_stream(31415, 0);
  std::size_t mismatches = 0, cells = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::array<std::uint32_t, 3> dims{2u + rng.next_index(11), 2u + rng.next_index(11),
                                            2u + rng.next_index(11)};
    const std::array<double, 3> spacing{0.25 + rng.next_index(64) / 16.0,
                                        0.25 + rng.next_index(64) / 16.0,
                                        0.25 + rng.next_index(64) / 16.0};
    const std::size_t nvox = std::size_t(dims[0]) * dims[1] * dims[2];
    std::vector<std::uint8_t> sites(nvox, 0);
    const std::uint32_t density = 1 + rng.next_index(300);
    for (auto& s : sites) s = rng.next_index(1000) < density ? 1 : 0;

    const auto got = squared_distance_transform(dims, spacing, sites, RunMode::Serial);
    const auto want = brute_sq_edt(dims, spacing, sites);
    cells += nvox;
    for (std::size_t i = 0; i < nvox; ++i)
      if (got[i] != want[i] && !(std::isinf(got[i]) && std::isinf(want[i]))) ++mismatches;
  }
  CHECK(mismatches == 0);
  CHECK(cells > 10000);
}

TEST_CASE("edt serial and parallel agree bit-for-bit") {
  auto rng = testing::test_stream(27182, 0);
  const std::array<std::uint32_t, 3> dims{24, 17, 13};
  const std::array<double, 3> spacing{0.9, 1.3, 0.6};
  std::vector<std::uint8_t> sites(std::size_t(24) * 17 * 13, 0);
  for (auto& s : sites) s = rng.next_index(100) < 3 ? 1 : 0;
  const auto serial = squared_distance_transform(dims, spacing, sites, RunMode::Serial);
  const auto par = squared_distance_transform(dims, spacing, sites, RunMode::Parallel);
  CHECK(serial == par);
}
