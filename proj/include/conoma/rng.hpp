#pragma once

// Deterministic, platform-stable randomness. The standard distributions
// are implementation-defined, so every draw here is built directly from a
// raw 64-bit stream; identical seeds give identical scenarios everywhere.

#include <cmath>
#include <cstdint>

#include "conoma/common.hpp"

namespace conoma {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Stable per-trial seed from (master seed, axis index, trial index).
// Extending a sweep with new points or trials never disturbs the streams
// of the existing ones.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t axis_index, std::uint64_t trial_index) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64(s);
  s = h ^ (axis_index * 0xff51afd7ed558ccdull + 0x2545f4914f6cdd1dull);
  h = splitmix64(s);
  s = h ^ (trial_index * 0xc4ceb9fe1a85ec53ull + 0x9e3779b97f4a7c15ull);
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform on [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; consumes exactly two uniforms.
  double next_normal() {
    const double u1 = 1.0 - next_double();  // (0, 1]
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace conoma
