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
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "raylift/hilbert.hpp"
#include "raylift/matrix.hpp"
#include "raylift/oracle.hpp"
#include "raylift/ray.hpp"

namespace raylift {

// Reconstruction of the operator behind a ray isometry, by probing.
//
// Given only black-box access to a ray map PH -> PH' that preserves ray
// products, the routines here rebuild an operator U (linear-unitary or
// antilinear-antiunitary) with U psi in the image ray of psi's ray, and they
// reject any oracle that is not an isometry, with a counterexample.
//
// The probing strategy, in standard-basis coordinates (anchor index 0):
//   1. U e_0   := any representative of the image of ray(e_0).
//   2. U e_a   recovered from the image of ray((e_0+e_a)/sqrt(2)): phase-fix
//      that image so its e_0-coefficient is 1/sqrt(2), then
//      U e_a = sqrt(2) * image - U e_0.
//   3. eta = (e_0+e_a+e_b)/sqrt(3) and xi = (e_a+e_b)/sqrt(2) probes confirm
//      that all relative phases of real superpositions are +1.
//   4. phi = (e_a + i e_b)/sqrt(2) probes decide linear vs antilinear: the
//      measured coefficient c of U e_b is forced onto {+i, -i} by
//      |1+c| = |1+i|, and the same sign must occur for every pair.
// Every measured deviation from this pattern is a certified counterexample
// to the isometry property and raises probe_error.

/// Absolute distance from {+i, -i} that a classification value may have.
/// The two admissible values are 2 apart, so 1e-6 decides unambiguously while
/// rejecting dishonest oracles by a wide band.
inline constexpr double kDefaultClassTol = 1e-6;

namespace detail {
inline std::string show(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g%+.9gi", z.real(), z.imag());
  return buf;
}
}  // namespace detail

/// A probe measurement that contradicts the isometry property. Carries the
/// probe identity and the measured vs expected values, so a failed
/// reconstruction doubles as a certificate with a counterexample.
class probe_error : public std::runtime_error {
 public:
  probe_error(std::string probe_id, std::string constraint, Complex measured_v,
              Complex expected_v)
      : std::runtime_error(probe_id + ": " + constraint + " (measured " +
                           detail::show(measured_v) + ", expected " +
                           detail::show(expected_v) + ")"),
        probe(std::move(probe_id)),
        constraint(std::move(constraint)),
        measured(measured_v),
        expected(expected_v) {}

  std::string probe;
  std::string constraint;
  Complex measured;
  Complex expected;
};

enum class ProbeKind { Xi, Eta, Phi };

/// One of the structured superpositions that drive the reconstruction.
struct ProbeVector {
  ProbeKind kind;
  int alpha;
  int beta;
  ComplexVector vector;

  std::string id() const {
    const char* name = kind == ProbeKind::Xi    ? "xi"
                       : kind == ProbeKind::Eta ? "eta"
                                                : "phi";
    return std::string(name) + "(" + std::to_string(alpha) + "," +
           std::to_string(beta) + ")";
  }
};

/// (e_alpha + e_beta)/sqrt(2), alpha != beta.
inline ProbeVector xi_probe(int alpha, int beta, int dim) {
  if (alpha == beta) throw std::invalid_argument("xi_probe: indices equal");
  ComplexVector v(dim);
  v[alpha] = 1.0 / std::sqrt(2.0);
  v[beta] = 1.0 / std::sqrt(2.0);
  return {ProbeKind::Xi, alpha, beta, std::move(v)};
}

/// (e_0 + e_alpha + e_beta)/sqrt(3), with 0, alpha, beta distinct.
inline ProbeVector eta_probe(int alpha, int beta, int dim) {
  if (alpha == beta || alpha == 0 || beta == 0)
    throw std::invalid_argument("eta_probe: indices 0, alpha, beta must be distinct");
  ComplexVector v(dim);
  v[0] = 1.0 / std::sqrt(3.0);
  v[alpha] = 1.0 / std::sqrt(3.0);
  v[beta] = 1.0 / std::sqrt(3.0);
  return {ProbeKind::Eta, alpha, beta, std::move(v)};
}

/// (e_alpha + i e_beta)/sqrt(2), alpha != beta.
inline ProbeVector phi_probe(int alpha, int beta, int dim) {
  if (alpha == beta) throw std::invalid_argument("phi_probe: indices equal");
  ComplexVector v(dim);
  v[alpha] = 1.0 / std::sqrt(2.0);
  v[beta] = Complex(0.0, 1.0 / std::sqrt(2.0));
  return {ProbeKind::Phi, alpha, beta, std::move(v)};
}

/// Proof intermediates of a reconstruction run: the classification values
/// c_{ab} per probed pair, the measured phase/triple residuals, and which
/// index anchored each phase fix.
struct ReconstructionReport {
  std::map<std::pair<int, int>, Complex> classification_values;
  std::map<std::pair<int, int>, double> xi_residuals;
  std::map<std::pair<int, int>, double> eta_residuals;
  std::map<std::string, int> pivot_choices;
  double tolerance_used = 0.0;
  std::uint64_t oracle_calls = 0;

  double max_xi_residual() const {
    double best = 0.0;
    for (const auto& [key, r] : xi_residuals)
      if (r > best) best = r;
    return best;
  }
  double max_eta_residual() const {
    double best = 0.0;
    for (const auto& [key, r] : eta_residuals)
      if (r > best) best = r;
    return best;
  }
};

/// The reconstructed lift: column a is U e_a. Degenerate marks the dim-1
/// case, where linear and antilinear coincide on rays and the dichotomy is
/// genuinely undecidable.
struct WignerOperator {
  ComplexMatrix matrix;  // dim_out x dim_in, columns orthonormal
  OperatorKind flag = OperatorKind::Linear;

  int dim_in() const { return matrix.cols(); }
  int dim_out() const { return matrix.rows(); }
};

inline void validate_wigner_operator(const WignerOperator& w, double tol) {
  if (w.flag == OperatorKind::Degenerate && w.dim_in() != 1)
    throw std::invalid_argument(
        "WignerOperator: Degenerate flag is only valid for dim_in == 1");
  const double defect = orthonormality_defect(w.matrix);
  if (defect > tol)
    throw std::invalid_argument(
        "WignerOperator: columns are not orthonormal (defect " +
        std::to_string(defect) + ")");
}

/// U psi: matrix * psi for Linear (and, by convention, Degenerate);
/// matrix * conj(psi) for Antilinear.
inline ComplexVector apply(const WignerOperator& w, const ComplexVector& psi) {
  if (psi.dim() != w.dim_in())
    throw std::invalid_argument("apply: dimension mismatch");
  return w.flag == OperatorKind::Antilinear ? w.matrix * conjugate(psi)
                                            : w.matrix * psi;
}

/// e^{i theta} * target with theta = -arg(<reference, target>), making the
/// overlap with the reference real and positive. The norm is untouched.
/// Throws when the overlap magnitude is at or below tol: a phase cannot be
/// read off a (near-)orthogonal reference.
inline ComplexVector fix_phase(const ComplexVector& target,
                               const ComplexVector& reference, double tol) {
  const Complex overlap = inner_product(reference, target);
  if (std::abs(overlap) <= tol)
    throw std::invalid_argument("phase undetermined: orthogonal reference");
  return std::polar(1.0, -std::arg(overlap)) * target;
}

// Phase-algebra deductions used by the probe steps, as standalone facts.
// Both presume |c| = 1 (measured coefficients of unit probes against unit
// columns).

inline double distance_to_one(Complex c) { return std::abs(c - 1.0); }

inline double distance_to_imaginary_units(Complex c) {
  return std::min(std::abs(c - Complex(0.0, 1.0)),
                  std::abs(c + Complex(0.0, 1.0)));
}

/// |1+c| = 2 forces c = 1 on the unit circle; accept c within tol of it.
inline bool unit_phase_is_one(Complex c, double tol) {
  return distance_to_one(c) <= tol;
}

/// |1+c| = |1+i| forces c onto {+i, -i} on the unit circle; returns the
/// element within tol of c, if any.
inline std::optional<Complex> unit_phase_imaginary_unit(Complex c, double tol) {
  if (std::abs(c - Complex(0.0, 1.0)) <= tol) return Complex(0.0, 1.0);
  if (std::abs(c + Complex(0.0, 1.0)) <= tol) return Complex(0.0, -1.0);
  return std::nullopt;
}

namespace detail {

/// Checks |<column_b, image>| against the expected overlap magnitude of a
/// probe; any deviation beyond tol certifies a non-isometry.
inline void require_overlap(const std::string& probe_id,
                            const ComplexVector& column, int column_index,
                            const ComplexVector& image, double expected,
                            double tol) {
  const double measured = std::abs(inner_product(column, image));
  if (std::abs(measured - expected) > tol)
    throw probe_error(probe_id,
                      "oracle is not an isometry: |<column " +
                          std::to_string(column_index) + ", image>| must be " +
                          detail::show(Complex(expected)),
                      Complex(measured), Complex(expected));
}

}  // namespace detail

struct BasisImages {
  std::vector<ComplexVector> columns;    // U e_a, a = 0..n-1
  std::vector<ComplexVector> xi_images;  // phase-fixed U xi(0,a), a = 1..n-1
};

/// Recovers all basis images from n oracle calls: one on ray(e_0), then one
/// per xi(0,a) probe. Column 0 is the oracle's first reply verbatim (the
/// global phase of the result is exactly that arbitrary choice); every other
/// column is sqrt(2) * [phase-fixed xi image] - column 0, the unique vector
/// completing the Fourier expansion of the xi image with coefficients
/// 1/sqrt(2), 1/sqrt(2). Validates the full overlap pattern and final column
/// orthonormality; throws probe_error on any violation.
inline BasisImages reconstruct_basis_images(RayMapOracle& oracle, double tol,
                                            ReconstructionReport* report = nullptr) {
  const int n = oracle.dim_in();
  if (n < 2)
    throw std::invalid_argument("reconstruct_basis_images: dim_in must be >= 2");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  BasisImages out;
  out.columns.reserve(static_cast<std::size_t>(n));
  out.xi_images.reserve(static_cast<std::size_t>(n - 1));

  out.columns.push_back(
      oracle.image(Ray(standard_basis_vector(n, 0))).rep());
  const ComplexVector anchor = out.columns.front();

  for (int a = 1; a < n; ++a) {
    const ProbeVector probe = xi_probe(0, a, n);
    const ComplexVector image = oracle.image(ray_from_vector(probe.vector)).rep();

    detail::require_overlap(probe.id(), anchor, 0, image, inv_sqrt2, tol);
    for (int b = 1; b < a; ++b)
      detail::require_overlap(probe.id(), out.columns[static_cast<std::size_t>(b)],
                              b, image, 0.0, tol);

    const ComplexVector fixed = fix_phase(image, anchor, tol);
    out.columns.push_back(Complex(std::sqrt(2.0)) * fixed - anchor);
    out.xi_images.push_back(fixed);

    if (report != nullptr) {
      report->xi_residuals[{0, a}] =
          std::abs(std::abs(inner_product(anchor, image)) - inv_sqrt2);
      report->pivot_choices[probe.id()] = 0;
    }
  }

  const double defect = orthonormality_defect(from_columns(out.columns));
  if (defect > tol)
    throw probe_error("columns",
                      "oracle is not an isometry: basis images must be orthonormal",
                      Complex(defect), Complex(0.0));
  return out;
}

/// Probes ray(phi(alpha,beta)) and reads the coefficient c of column beta
/// after phase-fixing against column alpha. An honest oracle yields c = +i
/// (linear lift) or c = -i (antilinear lift); anything else is rejected.
inline Complex classify_pair(RayMapOracle& oracle,
                             const std::vector<ComplexVector>& columns,
                             int alpha, int beta, double tol,
                             double tol_class = kDefaultClassTol,
                             ReconstructionReport* report = nullptr) {
  const int n = oracle.dim_in();
  if (alpha == beta || alpha < 0 || beta < 0 || alpha >= n || beta >= n)
    throw std::invalid_argument("classify_pair: bad index pair");
  if (static_cast<int>(columns.size()) != n)
    throw std::invalid_argument("classify_pair: need one column per input dim");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  const ProbeVector probe = phi_probe(alpha, beta, n);
  const ComplexVector image = oracle.image(ray_from_vector(probe.vector)).rep();

  for (int g = 0; g < n; ++g) {
    const double expected = (g == alpha || g == beta) ? inv_sqrt2 : 0.0;
    detail::require_overlap(probe.id(), columns[static_cast<std::size_t>(g)], g,
                            image, expected, tol);
  }

  const ComplexVector fixed =
      fix_phase(image, columns[static_cast<std::size_t>(alpha)], tol);
  const Complex c = std::sqrt(2.0) *
                    inner_product(columns[static_cast<std::size_t>(beta)], fixed);

  if (!unit_phase_imaginary_unit(c, tol_class))
    throw probe_error(probe.id(), "oracle violates |1+c| = |1+i| constraint", c,
                      Complex(0.0, 1.0));
  if (report != nullptr) {
    report->classification_values[{alpha, beta}] = c;
    report->pivot_choices[probe.id()] = alpha;
  }
  return c;
}

/// The pair set whose classifications pin down the dichotomy. Exhaustive for
/// dim <= 8; beyond that, a spanning set that still connects every pair
/// through the three chain moves (shared second index, swap, shared first
/// index).
inline std::vector<std::pair<int, int>> chain_pair_set(int dim) {
  std::vector<std::pair<int, int>> pairs;
  if (dim < 2) return pairs;
  if (dim <= 8) {
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        if (a != b) pairs.emplace_back(a, b);
    return pairs;
  }
  for (int b = 1; b < dim; ++b) pairs.emplace_back(0, b);
  for (int b = 1; b < dim; ++b) pairs.emplace_back(b, 0);
  for (int a = 1; a + 1 < dim; ++a) pairs.emplace_back(a, a + 1);
  return pairs;
}

/// Classifies every requested pair and demands one common value: all c_{ab}
/// within tol_class of the same element of {+i, -i}. A mix certifies that
/// the oracle is not a ray isometry.
inline OperatorKind chain_consistency(RayMapOracle& oracle,
                                      const std::vector<ComplexVector>& columns,
                                      const std::vector<std::pair<int, int>>& pairs,
                                      double tol, ReconstructionReport& report,
                                      double tol_class = kDefaultClassTol) {
  if (pairs.empty())
    throw std::invalid_argument("chain_consistency: empty pair set");
  std::optional<Complex> common;
  for (const auto& [a, b] : pairs) {
    const Complex c = classify_pair(oracle, columns, a, b, tol, tol_class, &report);
    const Complex unit = *unit_phase_imaginary_unit(c, tol_class);
    if (!common) {
      common = unit;
    } else if (unit != *common) {
      throw probe_error("phi(" + std::to_string(a) + "," + std::to_string(b) + ")",
                        "inconsistent linearity type: not a ray isometry", c,
                        *common);
    }
  }
  return common->imag() > 0 ? OperatorKind::Linear : OperatorKind::Antilinear;
}

struct TripleResiduals {
  std::map<std::pair<int, int>, double> eta;  // keyed (alpha, beta), both >= 1
  std::map<std::pair<int, int>, double> xi;

  double max() const {
    double best = 0.0;
    for (const auto& [key, r] : eta)
      if (r > best) best = r;
    for (const auto& [key, r] : xi)
      if (r > best) best = r;
    return best;
  }
};

/// The index pairs (alpha < beta, both nonzero) probed by validate_triples:
/// all of them up to dim 8, consecutive pairs beyond.
inline std::vector<std::pair<int, int>> triple_pair_set(int dim) {
  std::vector<std::pair<int, int>> pairs;
  if (dim <= 8) {
    for (int a = 1; a < dim; ++a)
      for (int b = a + 1; b < dim; ++b) pairs.emplace_back(a, b);
    return pairs;
  }
  for (int a = 1; a + 1 < dim; ++a) pairs.emplace_back(a, a + 1);
  return pairs;
}

/// Confirms the real-superposition phase coherence the proof derives from
/// |1 + c| = 2: eta(a,b) images must carry coefficient +1 on columns a and b
/// once fixed against column 0, and xi(a,b) images coefficient +1 on column b
/// once fixed against column a. Deviations beyond tol throw; the measured
/// residuals are returned (and recorded in the report when given).
inline TripleResiduals validate_triples(RayMapOracle& oracle,
                                        const std::vector<ComplexVector>& columns,
                                        double tol,
                                        ReconstructionReport* report = nullptr) {
  const int n = oracle.dim_in();
  if (n < 3)
    throw std::invalid_argument("validate_triples: dim_in must be >= 3");
  if (static_cast<int>(columns.size()) != n)
    throw std::invalid_argument("validate_triples: need one column per input dim");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);

  TripleResiduals residuals;
  for (const auto& [a, b] : triple_pair_set(n)) {
    {
      const ProbeVector probe = eta_probe(a, b, n);
      const ComplexVector image =
          oracle.image(ray_from_vector(probe.vector)).rep();
      for (int g = 0; g < n; ++g) {
        const double expected = (g == 0 || g == a || g == b) ? inv_sqrt3 : 0.0;
        detail::require_overlap(probe.id(), columns[static_cast<std::size_t>(g)],
                                g, image, expected, tol);
      }
      const ComplexVector fixed = fix_phase(image, columns[0], tol);
      const Complex ca = std::sqrt(3.0) *
                         inner_product(columns[static_cast<std::size_t>(a)], fixed);
      const Complex cb = std::sqrt(3.0) *
                         inner_product(columns[static_cast<std::size_t>(b)], fixed);
      const double deviation =
          std::max(distance_to_one(ca), distance_to_one(cb));
      residuals.eta[{a, b}] = deviation;
      if (report != nullptr) {
        report->eta_residuals[{a, b}] = deviation;
        report->pivot_choices[probe.id()] = 0;
      }
      if (deviation > tol)
        throw probe_error(probe.id(), "triple-sum phase coherence violated",
                          distance_to_one(ca) >= distance_to_one(cb) ? ca : cb,
                          Complex(1.0));
    }
    {
      const ProbeVector probe = xi_probe(a, b, n);
      const ComplexVector image =
          oracle.image(ray_from_vector(probe.vector)).rep();
      for (int g = 0; g < n; ++g) {
        const double expected = (g == a || g == b) ? inv_sqrt2 : 0.0;
        detail::require_overlap(probe.id(), columns[static_cast<std::size_t>(g)],
                                g, image, expected, tol);
      }
      const ComplexVector fixed =
          fix_phase(image, columns[static_cast<std::size_t>(a)], tol);
      const Complex c = std::sqrt(2.0) *
                        inner_product(columns[static_cast<std::size_t>(b)], fixed);
      const double deviation = distance_to_one(c);
      residuals.xi[{a, b}] = deviation;
      if (report != nullptr) {
        report->xi_residuals[{a, b}] = deviation;
        report->pivot_choices[probe.id()] = a;
      }
      if (deviation > tol)
        throw probe_error(probe.id(), "triple-sum phase coherence violated", c,
                          Complex(1.0));
    }
  }
  return residuals;
}

struct ReconstructionResult {
  WignerOperator op;
  ReconstructionReport report;
};

/// Runs the full pipeline against a black-box oracle:
///   dim 1: a single image representative, flag Degenerate (the dichotomy is
///          vacuous: both conventions lift the map).
///   dim 2: basis images, then classification of (0,1) and (1,0) only; the
///          triple step has nothing to probe.
///   dim >= 3: basis images, triple validation, chain-consistent
///             classification over chain_pair_set.
/// Throws probe_error (with the offending probe named) if the oracle is not
/// an isometry at tolerance tol.
inline ReconstructionResult reconstruct(RayMapOracle& oracle, double tol,
                                        double tol_class = kDefaultClassTol) {
  const std::uint64_t calls_before = oracle.calls_made();
  ReconstructionResult result;
  result.report.tolerance_used = tol;
  const int n = oracle.dim_in();

  if (n == 1) {
    const Ray image = oracle.image(Ray(standard_basis_vector(1, 0)));
    result.op.matrix = from_columns({image.rep()});
    result.op.flag = OperatorKind::Degenerate;
    result.report.oracle_calls = oracle.calls_made() - calls_before;
    return result;
  }

  BasisImages basis = reconstruct_basis_images(oracle, tol, &result.report);
  if (n >= 3) validate_triples(oracle, basis.columns, tol, &result.report);
  result.op.flag = chain_consistency(oracle, basis.columns, chain_pair_set(n),
                                     tol, result.report, tol_class);
  result.op.matrix = from_columns(basis.columns);
  result.report.oracle_calls = oracle.calls_made() - calls_before;
  return result;
}

inline ReconstructionResult reconstruct(RayMapOracle& oracle) {
  return reconstruct(oracle, default_tol(oracle.dim_in()));
}

/// The theorem's final step, as a measurement: for an arbitrary nonzero psi
/// with coefficients c_a, the oracle's image of ray(psi), phase-fixed so the
/// pivot coefficient matches c_pivot (Linear) or conj(c_pivot) (Antilinear),
/// must reproduce every other coefficient the same way. Returns the max
/// coefficient mismatch. The pivot is argmax |c_a| (lowest index on ties),
/// which keeps the phase fix away from the near-zero overlaps that make the
/// naive "any nonzero c_a" choice numerically fragile.
inline double coefficient_match_check(const WignerOperator& w,
                                      RayMapOracle& oracle,
                                      const ComplexVector& psi, double tol,
                                      ReconstructionReport* report = nullptr) {
  if (w.flag == OperatorKind::Degenerate)
    throw std::invalid_argument("coefficient_match_check: Degenerate flag");
  if (psi.dim() != w.dim_in())
    throw std::invalid_argument("coefficient_match_check: dimension mismatch");
  const double n = norm(psi);
  if (n == 0.0)
    throw std::invalid_argument("coefficient_match_check: zero vector");
  const ComplexVector unit = Complex(1.0 / n) * psi;

  int pivot = 0;
  for (int a = 1; a < unit.dim(); ++a)
    if (std::abs(unit[a]) > std::abs(unit[pivot])) pivot = a;
  if (std::abs(unit[pivot]) <= tol)
    throw std::invalid_argument("coefficient_match_check: pivot coefficient below tolerance");

  const bool antilinear = w.flag == OperatorKind::Antilinear;
  const auto expected = [&](int a) {
    return antilinear ? std::conj(unit[a]) : unit[a];
  };

  const ComplexVector image = oracle.image(ray_from_vector(psi)).rep();
  const Complex pivot_overlap = inner_product(w.matrix.column(pivot), image);
  if (std::abs(pivot_overlap) <= tol)
    throw probe_error("psi",
                      "pivot coefficient vanished in the image: not a ray isometry",
                      pivot_overlap, expected(pivot));

  // Rotate the image so the pivot coefficient agrees with the expected one
  // in phase; the theorem then promises agreement of all coefficients.
  const double theta = std::arg(expected(pivot)) - std::arg(pivot_overlap);
  const ComplexVector fixed = std::polar(1.0, theta) * image;

  double residual = 0.0;
  for (int b = 0; b < w.dim_in(); ++b) {
    const double d =
        std::abs(inner_product(w.matrix.column(b), fixed) - expected(b));
    if (d > residual) residual = d;
  }
  if (report != nullptr)
    report->pivot_choices["psi@" +
                          std::to_string(report->pivot_choices.size())] = pivot;
  return residual;
}

}  // namespace raylift
