#pragma once

#include <array>
#include <cstdint>

namespace segstat {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). One block of
/// four 32-bit words per (counter, key) pair; no state carried between blocks,
/// which is what makes seeded results independent of thread scheduling.
namespace philox {

std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                   const std::array<std::uint32_t, 2>& key);

}  // namespace philox

/// Stream identifiers are domain-separated so that nested consumers (e.g. the
/// bootstrap inside a subsample drawing) never reuse a (counter, key) pair.
namespace stream_domain {

inline constexpr std::uint64_t resample = 1;       // bootstrap resample index
inline constexpr std::uint64_t subsample = 2;      // subsample drawing (k, j)
inline constexpr std::uint64_t derive = 3;         // nested-seed derivation (k, j)
inline constexpr std::uint64_t coverage_gen = 4;   // synthetic sample generation, trial t
inline constexpr std::uint64_t coverage_boot = 5;  // per-trial bootstrap seed, trial t
inline constexpr std::uint64_t generic = 6;        // tests, fixtures

/// Packs a domain tag and up to two indices into one 64-bit stream id.
/// a and b must fit in 28 bits each (sizes and repeat counts do).
std::uint64_t pack(std::uint64_t domain, std::uint64_t a, std::uint64_t b = 0);

}  // namespace stream_domain

/// A lazily-buffered view of the Philox stream (seed, stream_id). Consuming N
/// draws from one stream never affects any other stream, so parallel loops can
/// hand stream i to work item i and stay bit-deterministic.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform double in the open interval (0, 1); 53-bit resolution.
  double next_double();

  /// Uniform integer in [0, n), n >= 1. Unbiased (multiply-shift with rejection).
  std::uint32_t next_index(std::uint32_t n);

  /// Standard normal deviate via the inverse CDF of next_double().
  double next_normal();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> buffer_{};
  int cursor_ = 4;  // empty
};

/// Deterministic 64-bit seed derived from (seed, domain, a, b). Used to give
/// nested stochastic stages (per-cell bootstraps, per-trial bootstraps) their
/// own independent stream families.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t domain, std::uint64_t a,
                          std::uint64_t b = 0);

}  // namespace segstat
