#pragma once

#include <cstdint>

namespace msgp {

/// Counter-based splittable PRNG (splitmix64 applied to a per-stream
/// counter). Streams derived from one master seed by fixed offsets are
/// statistically independent and fully reproducible across platforms.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : key_(mix(master_seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1)))),
        counter_(0) {}

  std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform double in [0, 1) with 53 bits of resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [a, b).
  double uniform(double a, double b) { return a + (b - a) * next_double(); }

  std::uint64_t stream_key() const { return key_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_;
};

// Fixed stream offsets used by solver runs: the two sampling-oracle
// information streams.
inline constexpr std::uint64_t kStreamW1 = 1;
inline constexpr std::uint64_t kStreamW2 = 2;

}  // namespace msgp
