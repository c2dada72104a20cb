#include "segstat/rng.hpp"

#include "segstat/errors.hpp"
#include "segstat/stats.hpp"

namespace segstat {

namespace philox {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& x, std::uint32_t k0, std::uint32_t k1) {
  const std::uint64_t p0 = std::uint64_t(kMul0) * x[0];
  const std::uint64_t p1 = std::uint64_t(kMul1) * x[2];
  const std::uint32_t lo0 = std::uint32_t(p0), hi0 = std::uint32_t(p0 >> 32);
  const std::uint32_t lo1 = std::uint32_t(p1), hi1 = std::uint32_t(p1 >> 32);
  x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
}

}  // namespace

std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                   const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> x = counter;
  std::uint32_t k0 = key[0], k1 = key[1];
  for (int r = 0; r < 10; ++r) {
    round_once(x, k0, k1);
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return x;
}

}  // namespace philox

namespace stream_domain {

std::uint64_t pack(std::uint64_t domain, std::uint64_t a, std::uint64_t b) {
  if (a >= (std::uint64_t(1) << 28) || b >= (std::uint64_t(1) << 28))
    fail(errc::bad_arguments, "stream index exceeds 28-bit packing range");
  return (domain << 56) | (a << 28) | b;
}

}  // namespace stream_domain

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
      counter_{0, 0, std::uint32_t(stream_id), std::uint32_t(stream_id >> 32)} {}

void RandomStream::refill() {
  buffer_ = philox::block(counter_, key_);
  cursor_ = 0;
  if (++counter_[0] == 0) ++counter_[1];  // 64-bit block counter
}

std::uint32_t RandomStream::next_u32() {
  if (cursor_ == 4) refill();
  return buffer_[cursor_++];
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t hi = next_u32();
  return (hi << 32) | next_u32();
}

double RandomStream::next_double() {
  return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint32_t RandomStream::next_index(std::uint32_t n) {
  // Lemire's multiply-shift; rejection keeps it exactly uniform.
  std::uint64_t m = std::uint64_t(next_u32()) * n;
  std::uint32_t low = std::uint32_t(m);
  if (low < n) {
    const std::uint32_t threshold = std::uint32_t(-n) % n;
    while (low < threshold) {
      m = std::uint64_t(next_u32()) * n;
      low = std::uint32_t(m);
    }
  }
  return std::uint32_t(m >> 32);
}

double RandomStream::next_normal() { return stats::normal_quantile(next_double()); }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t domain, std::uint64_t a,
                          std::uint64_t b) {
  // A dedicated counter layout (tag in word 3) that RandomStream never reaches:
  // its block counters start at 0 and stay far below 2^32 in practice, while
  // derivation is a single block per (domain, a, b).
  const std::array<std::uint32_t, 4> counter = {
      std::uint32_t(a), std::uint32_t(a >> 32) ^ std::uint32_t(b),
      std::uint32_t(b >> 32) ^ std::uint32_t(domain), 0xD1CE5EEDu};
  const std::array<std::uint32_t, 2> key = {std::uint32_t(seed), std::uint32_t(seed >> 32)};
  const auto words = philox::block(counter, key);
  return (std::uint64_t(words[0]) << 32) | words[1];
}

}  // namespace segstat
