#pragma once

#include <cstdint>
#include <random>

#include "siconic/cpoly.hpp"

namespace siconic {

/// Deterministic sampling for verification runs: mt19937_64 with the raw
/// bits-to-double map (x >> 11) * 2^-53, so a fixed seed draws the same
/// sequence on every platform.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform over the disk |z| <= radius, redrawn while z comes within
  /// circle_margin of the unit circle.
  Complex in_disk(double radius, double circle_margin = 0.0) {
    for (;;) {
      const Complex z(uniform(-radius, radius), uniform(-radius, radius));
      if (std::abs(z) > radius) continue;
      if (std::abs(std::abs(z) - 1.0) <= circle_margin) continue;
      return z;
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace siconic
