#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace disp::detail {

// mt19937_64 output is pinned by the standard, so everything built on the
// raw 64-bit stream is reproducible across platforms. Distributions from
// <random> are implementation-defined and must not be used here.

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform01_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;  // (0, 1)
}

// Box-Muller on the raw stream; consumes two draws per call.
inline double gaussian(std::mt19937_64& rng) {
  double u1 = uniform01_open(rng);
  double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace disp::detail
