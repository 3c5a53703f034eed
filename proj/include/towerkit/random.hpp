#pragma once

// Seeded generator with a fixed reduction, so sequences agree across
// standard-library implementations.

#include <cstdint>
#include <random>

#include "towerkit/linalg.hpp"

namespace towerkit {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [lo, hi] by rejection sampling.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  Rational small_rational(std::int64_t bound = 5) { return Rational(uniform(-bound, bound)); }

  Rational nonzero_rational(std::int64_t bound = 5) {
    std::int64_t v = 0;
    while (v == 0) v = uniform(-bound, bound);
    return Rational(v);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace towerkit
