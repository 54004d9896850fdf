#pragma once

#include <cmath>
#include <cstdint>

#include "pcm/errors.hpp"

namespace pcm {

// splitmix64 finalizer. Chosen over std::mt19937 because its output is a
// documented pure function of the seed: streams are reproducible byte-for-byte
// across platforms and standard-library versions.
inline std::uint64_t sm_mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with full 53-bit mantissa resolution.
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

// Independent stream per (seed, row, trial): each index is folded in through
// the mixer with a distinct odd constant, so adjacent rows/trials decorrelate
// and trials can be evaluated in any order or in parallel.
inline SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t row, std::uint64_t trial) {
  std::uint64_t s = sm_mix(seed);
  s = sm_mix(s ^ (row + 1) * 0xA24BAED4963EE407ULL);
  s = sm_mix(s ^ (trial + 1) * 0x9FB21C651E98DF25ULL);
  return SplitMix64(s);
}

inline double sample_uniform(SplitMix64& rng, double lo, double hi) {
  if (!(lo < hi)) throw InvalidParameter("sample_uniform: need lo < hi");
  return lo + rng.u01() * (hi - lo);
}

// Log-uniform on [lo, hi]: uniform in log-space, so magnitudes spread evenly
// across decades.
inline double sample_log_uniform(SplitMix64& rng, double lo, double hi) {
  if (!(0.0 < lo && lo < hi)) throw InvalidParameter("sample_log_uniform: need 0 < lo < hi");
  double u = rng.u01();
  return std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)));
}

// Standard normal via Box-Muller (polar-free form keeps the draw count fixed
// at two u01 per normal, which keeps streams reproducible).
inline double sample_gaussian(SplitMix64& rng) {
  double u1 = rng.u01();
  double u2 = rng.u01();
  while (u1 <= 0.0) u1 = rng.u01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace pcm
