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

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "raylift/hilbert.hpp"
#include "raylift/matrix.hpp"
#include "raylift/prng.hpp"
#include "raylift/ray.hpp"

namespace raylift {

enum class OperatorKind { Linear, Antilinear, Degenerate };

inline std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Linear: return "Linear";
    case OperatorKind::Antilinear: return "Antilinear";
    case OperatorKind::Degenerate: return "Degenerate";
  }
  throw std::logic_error("unreachable OperatorKind");
}

/// A known symmetry generator: an isometric matrix V (columns orthonormal)
/// plus whether it acts linearly or antilinearly, and the seed controlling
/// the gauge noise of oracles built from it. The antilinear branch conjugates
/// componentwise in the standard input basis before applying V; that is a
/// convention, not a restriction (any antiunitary is V after conjugation for
/// some V).
struct GroundTruth {
  ComplexMatrix matrix;  // dim_out x dim_in, V^dagger V = I
  OperatorKind flag = OperatorKind::Linear;
  std::uint64_t gauge_seed = 0;

  int dim_in() const { return matrix.cols(); }
  int dim_out() const { return matrix.rows(); }
};

inline void validate_ground_truth(const GroundTruth& truth,
                                  double tol = 1e-12) {
  if (truth.flag == OperatorKind::Degenerate)
    throw std::invalid_argument("GroundTruth: flag must be Linear or Antilinear");
  const double defect = orthonormality_defect(truth.matrix);
  if (defect > tol)
    throw std::invalid_argument(
        "GroundTruth: columns are not orthonormal (defect " +
        std::to_string(defect) + ")");
}

/// Black-box ray map. The only way to interrogate the symmetry under
/// reconstruction: feed a ray, get a ray, learn nothing about phases.
/// Holds a mutable call counter, so one instance is single-threaded by
/// contract; workers needing parallelism take their own copies.
class RayMapOracle {
 public:
  using ImageFn = std::function<Ray(const Ray&, std::uint64_t call_index)>;

  RayMapOracle(int dim_in, int dim_out, ImageFn fn)
      : dim_in_(dim_in), dim_out_(dim_out), fn_(std::move(fn)) {
    if (dim_in_ < 1 || dim_out_ < 1)
      throw std::invalid_argument("RayMapOracle: dims must be >= 1");
  }

  Ray image(const Ray& r) {
    if (r.dim() != dim_in_)
      throw std::invalid_argument("RayMapOracle: input ray has dim " +
                                  std::to_string(r.dim()) + ", oracle expects " +
                                  std::to_string(dim_in_));
    return fn_(r, calls_++);
  }

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  std::uint64_t calls_made() const { return calls_; }

 private:
  int dim_in_;
  int dim_out_;
  ImageFn fn_;
  std::uint64_t calls_ = 0;
};

/// Haar-distributed n x n unitary: Gram-Schmidt (= QR with positive diagonal
/// R) applied to a matrix of iid standard complex normals, columns drawn in
/// index order from Prng(seed).
inline ComplexMatrix isometric_embedding(int n, int m, std::uint64_t seed);

inline ComplexMatrix haar_unitary(int n, std::uint64_t seed) {
  return isometric_embedding(n, n, seed);
}

/// m x n matrix with orthonormal columns (a Haar-uniform isometry of C^n into
/// C^m); equals haar_unitary when m == n.
inline ComplexMatrix isometric_embedding(int n, int m, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("isometric_embedding: n must be >= 1");
  if (m < n) throw std::invalid_argument("no isometry into smaller space");
  Prng rng(seed);
  std::vector<ComplexVector> columns;
  columns.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) columns.push_back(rng.gaussian_vector(m));
  return from_columns(gram_schmidt(columns, 1e-8));
}

inline GroundTruth random_ground_truth(int n, int m, OperatorKind flag,
                                       std::uint64_t matrix_seed,
                                       std::uint64_t gauge_seed) {
  GroundTruth truth{isometric_embedding(n, m, matrix_seed), flag, gauge_seed};
  return truth;
}

/// How oracle replies choose their arbitrary phase.
///  - PerCall: a fresh pseudo-random phase per call, derived from
///    (gauge_seed, call counter). Repeated queries of the same ray return
///    different representatives; the strongest adversary against code that
///    accidentally trusts phases.
///  - PerRay ("strict"): the input gauge is canonicalized before the map is
///    applied, so the reply phase is a function of the ray itself (up to
///    rounding of the canonicalization). Debugging mode.
enum class GaugeMode { PerCall, PerRay };

/// Wraps a GroundTruth as a gauge-scrambled black box. Honest by
/// construction: ray products are preserved to rounding.
inline RayMapOracle make_oracle(const GroundTruth& truth,
                                GaugeMode mode = GaugeMode::PerCall) {
  validate_ground_truth(truth);
  const ComplexMatrix v = truth.matrix;
  const OperatorKind flag = truth.flag;
  const std::uint64_t gauge_seed = truth.gauge_seed;
  return RayMapOracle(
      truth.dim_in(), truth.dim_out(),
      [v, flag, gauge_seed, mode](const Ray& r, std::uint64_t call) -> Ray {
        const ComplexVector& rep =
            mode == GaugeMode::PerRay ? canonical_gauge(r).rep() : r.rep();
        ComplexVector mapped =
            flag == OperatorKind::Antilinear ? v * conjugate(rep) : v * rep;
        if (mode == GaugeMode::PerCall) {
          Prng phase_rng(derive_seed(gauge_seed, call));
          mapped = std::polar(1.0, phase_rng.phase()) * mapped;
        }
        return ray_from_vector(mapped);
      });
}

/// Negative-test fixture: maps every ray to ray(e_0). Grossly violates ray
/// product preservation for n >= 2.
inline RayMapOracle collapse_oracle(int n) {
  if (n < 2) throw std::invalid_argument("collapse_oracle: n must be >= 2");
  return RayMapOracle(n, n, [n](const Ray&, std::uint64_t) -> Ray {
    return Ray(standard_basis_vector(n, 0));
  });
}

/// Tolerance-calibration fixture: make_oracle plus a deterministic
/// pseudo-random perturbation of relative size epsilon added to each image
/// before renormalizing. epsilon = 0 is exactly make_oracle.
inline RayMapOracle perturbed_oracle(const GroundTruth& truth, double epsilon) {
  if (epsilon < 0.0)
    throw std::invalid_argument("perturbed_oracle: epsilon must be >= 0");
  if (epsilon == 0.0) return make_oracle(truth);
  validate_ground_truth(truth);
  const ComplexMatrix v = truth.matrix;
  const OperatorKind flag = truth.flag;
  const std::uint64_t gauge_seed = truth.gauge_seed;
  const int dim_out = truth.dim_out();
  return RayMapOracle(
      truth.dim_in(), dim_out,
      [v, flag, gauge_seed, epsilon, dim_out](const Ray& r,
                                              std::uint64_t call) -> Ray {
        ComplexVector mapped = flag == OperatorKind::Antilinear
                                   ? v * conjugate(r.rep())
                                   : v * r.rep();
        Prng noise_rng(derive_seed(gauge_seed, 2 * call + 1));
        const ComplexVector direction = noise_rng.gaussian_vector(dim_out);
        mapped = mapped + Complex(epsilon / norm(direction)) * direction;
        Prng phase_rng(derive_seed(gauge_seed, 2 * call));
        return ray_from_vector(std::polar(1.0, phase_rng.phase()) * mapped);
      });
}

}  // namespace raylift
