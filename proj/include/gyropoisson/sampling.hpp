#pragma once

// Seeded random phase points for verification sweeps.

#include <cstdint>
#include <functional>
#include <vector>

#include "gyropoisson/algebra.hpp"

namespace gyropoisson {

struct SamplingOptions {
  /// M components uniform in [-m_range, m_range].
  double m_range = 2.0;
  /// gamma uniform on the unit sphere, then scaled by a factor uniform in
  /// [scale_lo, scale_hi] when scale_gamma is set.
  bool scale_gamma = true;
  double scale_lo = 0.5;
  double scale_hi = 2.0;
  /// States closer than this to a singular set are rejected and resampled.
  double rejection_distance = 1e-2;
};

using DistanceFn = std::function<double(const State&)>;

/// Draws n states. `distance` (optional) measures the distance to the
/// singular set of whatever is being verified.
std::vector<State> sample_states(int n, std::uint64_t seed, const DistanceFn& distance = nullptr,
                                 const SamplingOptions& options = {});

}  // namespace gyropoisson
