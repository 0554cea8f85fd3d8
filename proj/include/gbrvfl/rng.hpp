#pragma once

#include <cmath>
#include <cstdint>

namespace gbrvfl {

// SplitMix64 (Steele, Lea, Flood; public domain). Chosen as the project-wide
// generator because its output is bit-exact from any language given the same
// 64-bit seed, unlike std distributions. All derived quantities below use
// explicit integer-to-real mappings so streams reproduce bit-for-bit.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform on [0,1): top 53 bits scaled by 2^-53
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform on [-1,1)
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  // standard normal via Box-Muller; consumes exactly two draws, no caching
  double next_gaussian() {
    double u1 = 1.0 - next_unit();  // (0,1], keeps log finite
    double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

  // unbiased integer in [0,n) by rejection
  uint64_t next_below(uint64_t n) {
    uint64_t threshold = (0 - n) % n;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  uint64_t state_;
};

// Deterministic substream derivation: perturb the seed by a stream-scaled
// golden-ratio constant, then take one mix step. Stream ids used in this
// project: randlayer weights=0, biases=1; model GB generation=2; CLI split=10,
// noise=11.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  return SplitMix64(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1))).next();
}

}  // namespace gbrvfl
