#pragma once

// Seeded generators and comparison helpers shared by the test binaries.

#include <cmath>
#include <cstdint>

#include "gyropoisson/algebra.hpp"

namespace testing {

using gyropoisson::State;
using gyropoisson::Vec3;

/// splitmix64; portable and independent of the library's sampler.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  Vec3 vec(double range = 2.0) { return {uniform(-range, range), uniform(-range, range), uniform(-range, range)}; }

  State state(double m_range = 2.0, double g_range = 1.5) { return {vec(m_range), vec(g_range)}; }

  /// gamma kept at least `margin` from the e3 axis and from the plane gamma3 = 0.
  State generic_state(double margin = 0.2) {
    for (;;) {
      State x = state();
      if (std::hypot(x.gamma.x, x.gamma.y) > margin && std::fabs(x.gamma.z) > margin) return x;
    }
  }

 private:
  std::uint64_t s_;
};

inline double rel_err(double a, double b) { return std::fabs(a - b) / std::fmax(1.0, std::fmax(std::fabs(a), std::fabs(b))); }

inline double dist(const Vec3& a, const Vec3& b) { return gyropoisson::norm(a - b); }

}  // namespace testing
