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
#include <complex>
#include <stdexcept>
#include <utility>

#include "raylift/hilbert.hpp"
#include "raylift/prng.hpp"

namespace raylift {

/// A state modulo global phase, stored as one explicit unit-norm
/// representative. The representative's phase is deliberately arbitrary:
/// nothing downstream may depend on it, and the oracle layer scrambles it on
/// purpose. Two Rays whose representatives differ only by a unit phase are
/// the same ray (ray_product == 1).
class Ray {
 public:
  /// Wraps a representative that is already unit norm (within 1e-12).
  explicit Ray(ComplexVector unit_rep) : rep_(std::move(unit_rep)) {
    if (std::abs(norm(rep_) - 1.0) > 1e-12)
      throw std::invalid_argument("Ray: representative is not unit norm");
  }

  const ComplexVector& rep() const { return rep_; }
  int dim() const { return rep_.dim(); }

 private:
  ComplexVector rep_;
};

/// The ray containing v, i.e. Ray with representative v/||v||. Any nonzero
/// scalar multiple of v yields the same ray.
inline Ray ray_from_vector(const ComplexVector& v) {
  const double n = norm(v);
  if (n == 0.0 || !std::isfinite(n))
    throw std::invalid_argument("zero vector has no ray");
  return Ray(Complex(1.0 / n) * v);
}

/// |<psi1, psi2>| for unit representatives: the gauge-invariant transition
/// amplitude. Symmetric, in [0,1] up to rounding.
inline double ray_product(const Ray& r1, const Ray& r2) {
  return std::abs(inner_product(r1.rep(), r2.rep()));
}

/// Rays are equal when their product is 1; the threshold sits on the product
/// rather than on any representative distance.
inline bool ray_equal(const Ray& r1, const Ray& r2, double tol) {
  return ray_product(r1, r2) >= 1.0 - tol;
}

/// Same ray, representative multiplied by e^{i theta}.
inline Ray rephase(const Ray& r, double theta) {
  return Ray(std::polar(1.0, theta) * r.rep());
}

/// Display/debug gauge: representative rotated so its largest-modulus
/// component (lowest index on ties) is real and positive. Algorithms must not
/// rely on it; it exists so that humans and strict-gauge oracles see a
/// reproducible phase.
inline Ray canonical_gauge(const Ray& r) {
  const ComplexVector& v = r.rep();
  int pivot = 0;
  double best = std::abs(v[0]);
  for (int i = 1; i < v.dim(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best) {
      best = a;
      pivot = i;
    }
  }
  return Ray(std::polar(1.0, -std::arg(v[pivot])) * v);
}

/// Pair of same-dimension rays (sampling container for isometry checks).
struct RayPair {
  RayPair(Ray a, Ray b) : first(std::move(a)), second(std::move(b)) {
    if (first.dim() != second.dim())
      throw std::invalid_argument("RayPair: dimension mismatch");
  }
  Ray first;
  Ray second;
};

/// Haar-uniform random ray: normalized vector of iid complex normals.
inline Ray random_ray(Prng& rng, int dim) {
  return ray_from_vector(rng.gaussian_vector(dim));
}

}  // namespace raylift
