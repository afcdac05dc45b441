#pragma once

#include <cstdint>

#include "krontri/common.hpp"

namespace krontri {

struct RngSeed {
  std::uint64_t value = 0;
};

// SplitMix64 (Steele, Lea, Flood; the java.util.SplittableRandom finalizer).
// The algorithm is fully specified, so identical seeds produce identical
// streams on every platform. All randomized generation in this project flows
// through this generator; a seed pins the output bit-for-bit.
class SplitMix64 {
 public:
  explicit SplitMix64(RngSeed seed) : state_(seed.value) {}
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw precondition_error("next_below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    std::uint64_t r;
    do {
      r = next();
    } while (r < threshold);
    return r % bound;
  }

  // Bernoulli(p) using a 53-bit integer threshold so the comparison is exact
  // and identical across platforms.
  bool next_bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    const std::uint64_t threshold = static_cast<std::uint64_t>(p * 9007199254740992.0);  // p * 2^53
    return (next() >> 11) < threshold;
  }

 private:
  std::uint64_t state_;
};

}  // namespace krontri
