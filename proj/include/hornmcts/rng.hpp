#pragma once

#include <cmath>
#include <cstdint>

namespace hornmcts {

/// SplitMix64 (Steele, Lea, Flood 2014). Fixed-width and fully specified, so
/// every draw is identical on every platform. Independent streams are derived
/// by seeding with seed, seed+1, ... ; the mixing function decorrelates them.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). Rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) {
      return 0;
    }
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t r = next();
    while (r >= limit) {
      r = next();
    }
    return r % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t state() const { return state_; }

private:
  std::uint64_t state_;
};

} // namespace hornmcts
