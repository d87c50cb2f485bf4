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
#include <vector>

#include "raylift/hilbert.hpp"

namespace raylift {

/// Dense complex matrix, row-major. Sized for desk-scale dimensions; nothing
/// here is tuned, everything is exact-arithmetic-order deterministic.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(check(rows) * check(cols))) {}

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Complex& at(int i, int j) {
    return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                 static_cast<std::size_t>(j)];
  }
  const Complex& at(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
                 static_cast<std::size_t>(j)];
  }

  ComplexVector column(int j) const {
    ComplexVector v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
  }

  ComplexVector row(int i) const {
    ComplexVector v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
  }

  void set_column(int j, const ComplexVector& v) {
    if (v.dim() != rows_)
      throw std::invalid_argument("set_column: dimension mismatch");
    for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m.at(j, i) = std::conj(at(i, j));
    return m;
  }

  bool operator==(const ComplexMatrix&) const = default;

 private:
  static int check(int n) {
    if (n < 1) throw std::invalid_argument("ComplexMatrix: size must be >= 1");
    return n;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix product: shape mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a.at(i, k);
      for (int j = 0; j < b.cols(); ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

inline ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v) {
  if (m.cols() != v.dim())
    throw std::invalid_argument("matrix-vector product: shape mismatch");
  ComplexVector out(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    Complex sum = 0.0;
    for (int j = 0; j < m.cols(); ++j) sum += m.at(i, j) * v[j];
    out[i] = sum;
  }
  return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix subtraction: shape mismatch");
  ComplexMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j) - b.at(i, j);
  return out;
}

inline ComplexMatrix operator*(Complex scale, const ComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) = scale * m.at(i, j);
  return out;
}

inline Complex trace(const ComplexMatrix& m) {
  const int n = m.rows() < m.cols() ? m.rows() : m.cols();
  Complex sum = 0.0;
  for (int i = 0; i < n; ++i) sum += m.at(i, i);
  return sum;
}

/// Largest entry modulus (the max norm used by every comparison here).
inline double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const double a = std::abs(m.at(i, j));
      if (a > best) best = a;
    }
  return best;
}

inline ComplexMatrix from_columns(const std::vector<ComplexVector>& columns) {
  if (columns.empty())
    throw std::invalid_argument("from_columns: no columns");
  ComplexMatrix m(columns.front().dim(), static_cast<int>(columns.size()));
  for (int j = 0; j < m.cols(); ++j)
    m.set_column(j, columns[static_cast<std::size_t>(j)]);
  return m;
}

/// ||M^dagger M - I||_max: how far the columns are from orthonormal.
inline double orthonormality_defect(const ComplexMatrix& m) {
  return max_abs(m.adjoint() * m - ComplexMatrix::identity(m.cols()));
}

}  // namespace raylift
