// Copyright 2026 The raylift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

#include "raylift/hilbert.hpp"

namespace raylift {

// All randomness in this library flows through the generator below so that
// identical seeds reproduce identical streams on every platform. The exact
// recipe, for reimplementation elsewhere:
//
//   state    <- state + 0x9E3779B97F4A7C15          (mod 2^64)
//   z        <- state
//   z        <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9
//   z        <- (z xor (z >> 27)) * 0x94D049BB133111EB
//   output   <- z xor (z >> 31)                     (splitmix64)
//
//   uniform01      = (output >> 11) * 2^-53                    in [0,1)
//   Box-Muller     = sqrt(-2 ln u1) * (cos, sin)(2 pi u2),
//                    u1 in (0,1], u2 in [0,1), one output pair per two draws
//   complex normal = (x + i y) / sqrt(2), x,y the Box-Muller pair
//
// Child seeds are derived as derive_seed(seed, tag) below, never by reusing
// a parent stream position.

inline std::uint64_t splitmix64_scramble(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Stateless seed derivation: independent child streams from (seed, tag).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64_scramble(seed ^ (tag * 0x9E3779B97F4A7C15ull +
                                     0xD1B54A32D192ED03ull));
}

/// Deterministic 64-bit generator (splitmix64) with the sampling helpers the
/// library needs. Identical seeds produce identical streams everywhere.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return splitmix64_scramble(state_);
  }

  /// Uniform in [0,1), 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform phase in [0, 2*pi).
  double phase() { return 2.0 * std::numbers::pi * uniform01(); }

  /// One Box-Muller pair of independent standard real normals.
  std::pair<double, double> gaussian_pair() {
    // u1 in (0,1] keeps the log finite.
    const double u1 =
        (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  /// Standard complex normal, E|z|^2 = 1.
  Complex complex_gaussian() {
    const auto [x, y] = gaussian_pair();
    return Complex(x, y) / std::sqrt(2.0);
  }

  /// Vector of iid standard complex normals (components drawn in index order).
  ComplexVector gaussian_vector(int dim) {
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = complex_gaussian();
    return v;
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace raylift
