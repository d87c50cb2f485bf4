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
#include <stdexcept>
#include <vector>

#include "raylift/hilbert.hpp"
#include "raylift/matrix.hpp"
#include "raylift/oracle.hpp"
#include "raylift/prng.hpp"
#include "raylift/ray.hpp"
#include "raylift/reconstruct.hpp"

namespace raylift {

// Independent certifiers. Unlike reconstruction, which cannot continue past a
// bad probe and throws, everything here reports: a CheckReport either passes
// or carries the worst counterexample found.

struct CheckReport {
  bool passed = false;
  double max_violation = 0.0;
  int samples_used = 0;
  std::vector<ComplexVector> worst_witness;  // inputs achieving max_violation
};

/// Samples random ray pairs (Haar-uniform) and compares ray products before
/// and after the map. max_violation = max |product_in - product_out|.
inline CheckReport check_isometry(RayMapOracle& oracle, int n_samples,
                                  std::uint64_t seed, double tol) {
  if (n_samples < 1)
    throw std::invalid_argument("check_isometry: n_samples must be >= 1");
  Prng rng(seed);
  CheckReport report;
  report.samples_used = n_samples;
  for (int i = 0; i < n_samples; ++i) {
    const RayPair pair(random_ray(rng, oracle.dim_in()),
                       random_ray(rng, oracle.dim_in()));
    const double before = ray_product(pair.first, pair.second);
    const double after =
        ray_product(oracle.image(pair.first), oracle.image(pair.second));
    const double violation = std::abs(before - after);
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_witness = {pair.first.rep(), pair.second.rep()};
    }
  }
  report.passed = report.max_violation <= tol;
  return report;
}

/// Checks the operator law named by the flag on random vector pairs:
/// <U u, U v> = <u, v> for Linear, <U u, U v> = <u, v>* for Antilinear; plus
/// (anti)additivity of apply on random linear combinations.
inline CheckReport check_operator_law(const WignerOperator& w, int n_samples,
                                      std::uint64_t seed, double tol) {
  if (w.flag == OperatorKind::Degenerate)
    throw std::invalid_argument("check_operator_law: Degenerate flag");
  if (n_samples < 1)
    throw std::invalid_argument("check_operator_law: n_samples must be >= 1");
  const bool antilinear = w.flag == OperatorKind::Antilinear;
  Prng rng(seed);
  CheckReport report;
  report.samples_used = n_samples;
  for (int i = 0; i < n_samples; ++i) {
    const ComplexVector u = rng.gaussian_vector(w.dim_in());
    const ComplexVector v = rng.gaussian_vector(w.dim_in());
    const ComplexVector wu = apply(w, u);
    const ComplexVector wv = apply(w, v);

    const Complex in = inner_product(u, v);
    const Complex out = inner_product(wu, wv);
    double violation = std::abs(out - (antilinear ? std::conj(in) : in));

    const Complex c1 = rng.complex_gaussian();
    const Complex c2 = rng.complex_gaussian();
    const ComplexVector combined = apply(w, c1 * u + c2 * v);
    const ComplexVector expected =
        antilinear ? std::conj(c1) * wu + std::conj(c2) * wv
                   : c1 * wu + c2 * wv;
    for (int k = 0; k < combined.dim(); ++k)
      violation = std::max(violation, std::abs(combined[k] - expected[k]));

    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_witness = {u, v};
    }
  }
  report.passed = report.max_violation <= tol;
  return report;
}

/// The theorem's compatibility statement, sampled: for random psi, applying
/// the operator must land in the oracle's image ray. Violation per sample is
/// 1 - ray_product(ray(U psi), oracle(ray(psi))).
inline CheckReport check_ray_compatibility(const WignerOperator& w,
                                           RayMapOracle& oracle, int n_samples,
                                           std::uint64_t seed, double tol) {
  if (w.dim_in() != oracle.dim_in() || w.dim_out() != oracle.dim_out())
    throw std::invalid_argument("check_ray_compatibility: dimension mismatch");
  if (n_samples < 1)
    throw std::invalid_argument("check_ray_compatibility: n_samples must be >= 1");
  Prng rng(seed);
  CheckReport report;
  report.samples_used = n_samples;
  for (int i = 0; i < n_samples; ++i) {
    const Ray input = random_ray(rng, oracle.dim_in());
    const double product =
        ray_product(ray_from_vector(apply(w, input.rep())), oracle.image(input));
    const double violation = 1.0 - product;
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_witness = {input.rep()};
    }
  }
  report.passed = report.max_violation <= tol;
  return report;
}

/// ||A - e^{i theta} B||_max with theta = arg(trace(B^dagger A)), the phase
/// that aligns B to A (exact whenever A and B differ by a global phase, which
/// is the uniqueness freedom of the lift for dim >= 2). When the trace is
/// zero the phases are incomparable and the raw distance (theta = 0) is
/// reported as-is.
inline double distance_up_to_global_phase(const ComplexMatrix& a,
                                          const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("distance_up_to_global_phase: shape mismatch");
  const Complex t = trace(b.adjoint() * a);
  const double theta = std::abs(t) > 0.0 ? std::arg(t) : 0.0;
  return max_abs(a - std::polar(1.0, theta) * b);
}

}  // namespace raylift
