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
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace raylift {

using Complex = std::complex<double>;

// CONVENTION: inner products are conjugate-linear in the FIRST argument and
// linear in the second, <u,v> = sum_a conj(u_a) * v_a  (physics convention).
// Every phase-fixing step and every frozen test value in this library assumes
// it; do not flip it.

/// Default tolerance for dimension-`dim` arithmetic. Rounding accumulates
/// across dim-length sums, so tolerances scale linearly with dim.
inline double default_tol(int dim) { return 1e-10 * static_cast<double>(dim); }

/// Finite-dimensional complex coefficient tuple.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(int dim) : components_(check_dim(dim)) {}
  ComplexVector(std::initializer_list<Complex> values) : components_(values) {}
  explicit ComplexVector(std::vector<Complex> values)
      : components_(std::move(values)) {}

  int dim() const { return static_cast<int>(components_.size()); }
  Complex& operator[](int i) { return components_[static_cast<std::size_t>(i)]; }
  const Complex& operator[](int i) const {
    return components_[static_cast<std::size_t>(i)];
  }
  const std::vector<Complex>& components() const { return components_; }

  bool operator==(const ComplexVector&) const = default;

 private:
  static std::size_t check_dim(int dim) {
    if (dim < 1) throw std::invalid_argument("ComplexVector: dim must be >= 1");
    return static_cast<std::size_t>(dim);
  }

  std::vector<Complex> components_;
};

/// Dimension tag for a finite-dimensional complex Hilbert space.
struct HilbertSpaceDesc {
  int dim;
  explicit HilbertSpaceDesc(int d) : dim(d) {
    if (d < 1) throw std::invalid_argument("HilbertSpaceDesc: dim must be >= 1");
  }
};

inline bool all_finite(const ComplexVector& v) {
  for (const Complex& c : v.components())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

inline ComplexVector operator+(const ComplexVector& u, const ComplexVector& v) {
  if (u.dim() != v.dim())
    throw std::invalid_argument("vector addition: dimension mismatch");
  ComplexVector out(u.dim());
  for (int i = 0; i < u.dim(); ++i) out[i] = u[i] + v[i];
  return out;
}

inline ComplexVector operator-(const ComplexVector& u, const ComplexVector& v) {
  if (u.dim() != v.dim())
    throw std::invalid_argument("vector subtraction: dimension mismatch");
  ComplexVector out(u.dim());
  for (int i = 0; i < u.dim(); ++i) out[i] = u[i] - v[i];
  return out;
}

inline ComplexVector operator*(Complex scale, const ComplexVector& v) {
  ComplexVector out(v.dim());
  for (int i = 0; i < v.dim(); ++i) out[i] = scale * v[i];
  return out;
}

inline ComplexVector conjugate(const ComplexVector& v) {
  ComplexVector out(v.dim());
  for (int i = 0; i < v.dim(); ++i) out[i] = std::conj(v[i]);
  return out;
}

/// <u,v> = sum_a conj(u_a) * v_a; conjugate-linear in u, linear in v.
inline Complex inner_product(const ComplexVector& u, const ComplexVector& v) {
  if (u.dim() != v.dim())
    throw std::invalid_argument("inner_product: dimension mismatch");
  Complex sum = 0.0;
  for (int i = 0; i < u.dim(); ++i) sum += std::conj(u[i]) * v[i];
  return sum;
}

inline double norm_squared(const ComplexVector& v) {
  double sum = 0.0;
  for (const Complex& c : v.components()) sum += std::norm(c);
  return sum;
}

inline double norm(const ComplexVector& v) { return std::sqrt(norm_squared(v)); }

inline ComplexVector standard_basis_vector(int dim, int index) {
  if (index < 0 || index >= dim)
    throw std::invalid_argument("standard_basis_vector: index out of range");
  ComplexVector e(dim);
  e[index] = 1.0;
  return e;
}

inline std::vector<ComplexVector> standard_basis(HilbertSpaceDesc space) {
  std::vector<ComplexVector> basis;
  basis.reserve(static_cast<std::size_t>(space.dim));
  for (int i = 0; i < space.dim; ++i)
    basis.push_back(standard_basis_vector(space.dim, i));
  return basis;
}

/// Coefficients <basis_a, v> of the expansion of v in an orthonormal set.
/// The caller is responsible for orthonormality (see check_orthonormal);
/// when the set is a complete basis, sum_a coeff_a * basis_a reproduces v.
inline std::vector<Complex> fourier_coefficients(
    const ComplexVector& v, const std::vector<ComplexVector>& basis) {
  std::vector<Complex> coeffs;
  coeffs.reserve(basis.size());
  for (const ComplexVector& b : basis) coeffs.push_back(inner_product(b, v));
  return coeffs;
}

/// True iff |<v_i, v_j> - delta_ij| <= tol for all pairs. Empty input is
/// vacuously orthonormal.
inline bool check_orthonormal(const std::vector<ComplexVector>& vectors,
                              double tol) {
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i; j < vectors.size(); ++j) {
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(inner_product(vectors[i], vectors[j]) - expected) > tol)
        return false;
    }
  }
  return true;
}

/// ||v||^2 - sum_a |<psi_a, v>|^2 over an orthonormal set. Nonnegative up to
/// rounding; zero exactly when v lies in the span of the set.
inline double parseval_gap(const ComplexVector& v,
                           const std::vector<ComplexVector>& orthonormal_set) {
  double sum = 0.0;
  for (const ComplexVector& b : orthonormal_set)
    sum += std::norm(inner_product(b, v));
  return norm_squared(v) - sum;
}

/// Orthonormalizes `vectors` (span preserved, order respected). Two projection
/// passes per vector; classical single-pass Gram-Schmidt loses orthogonality
/// at modest dimensions. Throws if a residual drops below tol (rank-deficient
/// input).
inline std::vector<ComplexVector> gram_schmidt(
    const std::vector<ComplexVector>& vectors, double tol) {
  std::vector<ComplexVector> basis;
  basis.reserve(vectors.size());
  for (const ComplexVector& v : vectors) {
    ComplexVector w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const ComplexVector& b : basis) w = w - inner_product(b, w) * b;
    const double residual = norm(w);
    if (residual < tol)
      throw std::invalid_argument(
          "gram_schmidt: rank deficiency (residual norm " +
          std::to_string(residual) + " below tolerance)");
    basis.push_back(Complex(1.0 / residual) * w);
  }
  return basis;
}

}  // namespace raylift
