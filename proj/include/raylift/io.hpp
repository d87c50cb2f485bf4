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

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "raylift/hilbert.hpp"
#include "raylift/matrix.hpp"
#include "raylift/oracle.hpp"
#include "raylift/reconstruct.hpp"
#include "raylift/verify.hpp"

namespace raylift {

// Text formats. Everything is line-oriented UTF-8; numbers are written with
// 17 significant digits so that every finite double round-trips bit-exactly.
//
//   vector line:    re,im pairs separated by single spaces
//                     1.0,0.0 0.0,-1.0
//   ray line:       "ray " + vector line
//   truth file:     wigner-truth v1
//                   <dim_out> <dim_in> <Linear|Antilinear> <gauge_seed>
//                   dim_out rows of dim_in re,im entries
//   operator file:  wigner-operator v1
//                   <dim_out> <dim_in> <Linear|Antilinear|Degenerate>
//                   dim_out rows of dim_in re,im entries
//   check report:   passed=<bool> max_violation=<float> samples=<int>
//                   followed by the witness vectors, one per line, if any

class format_error : public std::runtime_error {
 public:
  explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string format_vector(const ComplexVector& v) {
  std::string out;
  for (int i = 0; i < v.dim(); ++i) {
    if (i > 0) out += ' ';
    out += format_double(v[i].real());
    out += ',';
    out += format_double(v[i].imag());
  }
  return out;
}

namespace detail {

inline double parse_finite_double(const std::string& token, const char** rest) {
  const char* begin = token.c_str() + (*rest - token.c_str());
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) throw format_error("bad number in '" + token + "'");
  if (!std::isfinite(value))
    throw format_error("non-finite component in '" + token + "'");
  *rest = end;
  return value;
}

/// One "re,im" token -> Complex.
inline Complex parse_complex_token(const std::string& token) {
  const char* cursor = token.c_str();
  const double re = parse_finite_double(token, &cursor);
  if (*cursor != ',')
    throw format_error("expected ',' between re and im in '" + token + "'");
  ++cursor;
  const double im = parse_finite_double(token, &cursor);
  if (*cursor != '\0')
    throw format_error("trailing characters in '" + token + "'");
  return {re, im};
}

}  // namespace detail

inline ComplexVector parse_vector(const std::string& line) {
  std::istringstream in(line);
  std::vector<Complex> components;
  std::string token;
  while (in >> token) components.push_back(detail::parse_complex_token(token));
  if (components.empty()) throw format_error("empty vector line");
  return ComplexVector(std::move(components));
}

inline std::string format_ray(const Ray& r) {
  return "ray " + format_vector(r.rep());
}

inline Ray parse_ray(const std::string& line) {
  if (line.rfind("ray ", 0) != 0)
    throw format_error("ray line must start with 'ray '");
  return Ray(parse_vector(line.substr(4)));
}

inline OperatorKind parse_operator_kind(std::string token) {
  for (char& c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (token == "linear") return OperatorKind::Linear;
  if (token == "antilinear") return OperatorKind::Antilinear;
  if (token == "degenerate") return OperatorKind::Degenerate;
  throw format_error("unknown operator kind '" + token + "'");
}

namespace detail {

inline std::string read_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line))
    throw format_error(std::string("unexpected end of input reading ") + what);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

inline ComplexMatrix read_matrix_rows(std::istream& in, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const ComplexVector row = parse_vector(read_line(in, "matrix row"));
    if (row.dim() != cols)
      throw format_error("matrix row has " + std::to_string(row.dim()) +
                         " entries, expected " + std::to_string(cols));
    for (int j = 0; j < cols; ++j) m.at(i, j) = row[j];
  }
  return m;
}

inline void write_matrix_rows(std::ostream& out, const ComplexMatrix& m) {
  for (int i = 0; i < m.rows(); ++i) out << format_vector(m.row(i)) << '\n';
}

}  // namespace detail

inline void write_ground_truth(std::ostream& out, const GroundTruth& truth) {
  out << "wigner-truth v1\n"
      << truth.dim_out() << ' ' << truth.dim_in() << ' '
      << to_string(truth.flag) << ' ' << truth.gauge_seed << '\n';
  detail::write_matrix_rows(out, truth.matrix);
}

inline GroundTruth read_ground_truth(std::istream& in) {
  if (detail::read_line(in, "truth header") != "wigner-truth v1")
    throw format_error("not a wigner-truth v1 file");
  std::istringstream header(detail::read_line(in, "truth dimensions"));
  int dim_out = 0, dim_in = 0;
  std::string kind_token, seed_token;
  if (!(header >> dim_out >> dim_in >> kind_token >> seed_token))
    throw format_error("bad truth dimension line");
  if (dim_out < 1 || dim_in < 1 || dim_out < dim_in)
    throw format_error("bad truth dimensions: need dim_out >= dim_in >= 1");
  GroundTruth truth;
  truth.flag = parse_operator_kind(kind_token);
  truth.gauge_seed = std::strtoull(seed_token.c_str(), nullptr, 10);
  truth.matrix = detail::read_matrix_rows(in, dim_out, dim_in);
  try {
    validate_ground_truth(truth);
  } catch (const std::invalid_argument& e) {
    throw format_error(e.what());
  }
  return truth;
}

inline void write_wigner_operator(std::ostream& out, const WignerOperator& w) {
  out << "wigner-operator v1\n"
      << w.dim_out() << ' ' << w.dim_in() << ' ' << to_string(w.flag) << '\n';
  detail::write_matrix_rows(out, w.matrix);
}

inline WignerOperator read_wigner_operator(std::istream& in) {
  if (detail::read_line(in, "operator header") != "wigner-operator v1")
    throw format_error("not a wigner-operator v1 file");
  std::istringstream header(detail::read_line(in, "operator dimensions"));
  int dim_out = 0, dim_in = 0;
  std::string kind_token;
  if (!(header >> dim_out >> dim_in >> kind_token))
    throw format_error("bad operator dimension line");
  if (dim_out < 1 || dim_in < 1)
    throw format_error("bad operator dimensions");
  WignerOperator w;
  w.flag = parse_operator_kind(kind_token);
  w.matrix = detail::read_matrix_rows(in, dim_out, dim_in);
  try {
    validate_wigner_operator(w, default_tol(dim_in) + 1e-9);
  } catch (const std::invalid_argument& e) {
    throw format_error(e.what());
  }
  return w;
}

inline std::string format_check_report(const CheckReport& report) {
  std::string out = std::string("passed=") + (report.passed ? "true" : "false") +
                    " max_violation=" + format_double(report.max_violation) +
                    " samples=" + std::to_string(report.samples_used);
  for (const ComplexVector& witness : report.worst_witness)
    out += '\n' + format_vector(witness);
  return out;
}

// Path convenience wrappers.

template <typename T, typename Writer>
inline void save_to_file(const std::string& path, const T& value, Writer writer) {
  std::ofstream out(path);
  if (!out) throw format_error("cannot open '" + path + "' for writing");
  writer(out, value);
  if (!out) throw format_error("failed writing '" + path + "'");
}

inline void save_ground_truth(const std::string& path, const GroundTruth& t) {
  save_to_file(path, t, [](std::ostream& o, const GroundTruth& v) {
    write_ground_truth(o, v);
  });
}

inline GroundTruth load_ground_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open '" + path + "'");
  return read_ground_truth(in);
}

inline void save_wigner_operator(const std::string& path, const WignerOperator& w) {
  save_to_file(path, w, [](std::ostream& o, const WignerOperator& v) {
    write_wigner_operator(o, v);
  });
}

inline WignerOperator load_wigner_operator(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open '" + path + "'");
  return read_wigner_operator(in);
}

}  // namespace raylift
