#pragma once

#include <cstdint>
#include <limits>

namespace tubalrpca {

/// SplitMix64 (Steele, Lea and Flood): 64-bit state, a Weyl increment of
/// 0x9e3779b97f4a7c15 and a three-round xor-shift-multiply finalizer.
/// Distributions are implemented here rather than with <random> so that a
/// seed yields the same draws on every platform and standard library.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n), unbiased by rejection. n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = (*this)();
      if (r >= threshold) return r % n;
    }
  }

  bool coin() { return ((*this)() >> 63) != 0; }

  // Standard normal by Box-Muller, one draw per call.
  double normal();

 private:
  std::uint64_t state_;
};

}  // namespace tubalrpca
