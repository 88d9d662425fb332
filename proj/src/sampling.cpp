#include "gyropoisson/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace gyropoisson {

namespace {

// std::uniform_real_distribution is implementation-defined; this mapping
// keeps samples identical across standard libraries.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

Vec3 on_sphere(std::mt19937_64& rng) {
  // Uniform z and azimuth give the uniform measure on S^2.
  const double z = uniform(rng, -1.0, 1.0);
  const double phi = uniform(rng, 0.0, 2.0 * M_PI);
  const double r = std::sqrt(std::fmax(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

}  // namespace

std::vector<State> sample_states(int n, std::uint64_t seed, const DistanceFn& distance,
                                 const SamplingOptions& options) {
  std::mt19937_64 rng(seed);
  std::vector<State> out;
  out.reserve(static_cast<size_t>(std::max(n, 0)));
  const long max_attempts = 1000L * std::max(n, 1) + 1000;
  long attempts = 0;
  while (static_cast<int>(out.size()) < n) {
    if (++attempts > max_attempts) {
      throw std::runtime_error("state sampler rejected too many candidates; singular set covers the sampling domain");
    }
    State x;
    x.M = {uniform(rng, -options.m_range, options.m_range), uniform(rng, -options.m_range, options.m_range),
           uniform(rng, -options.m_range, options.m_range)};
    x.gamma = on_sphere(rng);
    if (options.scale_gamma) x.gamma = x.gamma * uniform(rng, options.scale_lo, options.scale_hi);
    if (distance && !(distance(x) >= options.rejection_distance)) continue;
    out.push_back(x);
  }
  return out;
}

}  // namespace gyropoisson
