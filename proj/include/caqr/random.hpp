#pragma once

#include <cstdint>
#include <random>

namespace caqr {

/// Seeded generator with portable draws. std::mt19937_64 output is fixed by
/// the standard, but the std distributions are not, so bounded integers and
/// unit doubles are derived here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  int below(int bound) {
    return static_cast<int>(below(static_cast<std::uint64_t>(bound)));
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace caqr
