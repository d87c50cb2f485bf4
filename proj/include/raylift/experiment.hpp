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

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "raylift/io.hpp"
#include "raylift/oracle.hpp"
#include "raylift/reconstruct.hpp"
#include "raylift/verify.hpp"

namespace raylift {

// Batch round-trip experiments: for every (dim_in, extra, flag) cell, run
// generate -> reconstruct -> verify cycles with seeds derived from one master
// seed. The serialized report is a pure function of the config: all seeds are
// derived from cell content (not iteration order), and wall times stay out of
// the report text.

struct Tolerances {
  double tol_residual = 1e-9;  // probe/orthonormality tolerance in reconstruct
  double tol_class = 1e-6;     // distance from {+i,-i} for classification
  double tol_verify = 1e-9;    // phase distance and ray compatibility
};

struct ExperimentConfig {
  std::vector<int> dims_in = {1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<int> extra_dims_out = {0, 3};  // dim_out = dim_in + extra
  std::vector<OperatorKind> flags = {OperatorKind::Linear,
                                     OperatorKind::Antilinear};
  int trials_per_cell = 10;
  std::uint64_t master_seed = 20260801;
  int compat_samples = 100;
  Tolerances tolerances;
};

inline ExperimentConfig default_experiment_config() { return {}; }

struct CellOutcome {
  int dim_in = 0;
  int extra = 0;
  OperatorKind flag = OperatorKind::Linear;
  double flag_accuracy = 0.0;
  double max_phase_distance = 0.0;
  double max_compat_violation = 0.0;
  double wall_time_s = 0.0;  // diagnostics only; never serialized
  bool passed = false;
  std::vector<int> failing_trials;
  std::string first_failure;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<CellOutcome> cells;
  bool overall_pass = false;
};

namespace detail {

/// Seed chain for one trial; content-derived so that report bytes do not
/// depend on config list ordering. purpose: 0 = truth matrix, 1 = gauge,
/// 2 = compatibility sampling.
inline std::uint64_t trial_seed(std::uint64_t master, int dim_in, int extra,
                                OperatorKind flag, int trial, int purpose) {
  std::uint64_t s = derive_seed(master, static_cast<std::uint64_t>(dim_in));
  s = derive_seed(s, static_cast<std::uint64_t>(extra));
  s = derive_seed(s, flag == OperatorKind::Antilinear ? 1u : 0u);
  s = derive_seed(s, static_cast<std::uint64_t>(trial));
  return derive_seed(s, static_cast<std::uint64_t>(purpose));
}

template <typename T>
inline std::string join_list(const std::vector<T>& values,
                             std::string (*show)(const T&)) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += show(values[i]);
  }
  return out;
}

inline std::string show_int(const int& v) { return std::to_string(v); }
inline std::string show_kind(const OperatorKind& k) { return to_string(k); }

}  // namespace detail

inline std::string format_experiment_config(const ExperimentConfig& c) {
  return "dims_in=" + detail::join_list(c.dims_in, detail::show_int) +
         " extra_dims_out=" + detail::join_list(c.extra_dims_out, detail::show_int) +
         " flags=" + detail::join_list(c.flags, detail::show_kind) +
         " trials_per_cell=" + std::to_string(c.trials_per_cell) +
         " master_seed=" + std::to_string(c.master_seed) +
         " compat_samples=" + std::to_string(c.compat_samples) +
         " tol_residual=" + format_double(c.tolerances.tol_residual) +
         " tol_class=" + format_double(c.tolerances.tol_class) +
         " tol_verify=" + format_double(c.tolerances.tol_verify);
}

/// Parses the line-oriented `key = value` config format. Lists are
/// comma-separated; blank lines and lines starting with '#' are skipped.
/// Unknown keys are rejected. Lists are normalized (sorted, deduplicated) so
/// equivalent configs produce identical reports.
inline ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    const auto first = std::find_if(line.begin(), line.end(), not_space);
    if (first == line.end() || *first == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw format_error("config line " + std::to_string(line_no) +
                         ": expected 'key = value'");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw format_error("config line " + std::to_string(line_no) +
                         ": empty value for '" + key + "'");

    auto split = [&](const std::string& s) {
      std::vector<std::string> parts;
      std::istringstream ss(s);
      std::string part;
      while (std::getline(ss, part, ',')) parts.push_back(trim(part));
      return parts;
    };
    auto to_int = [&](const std::string& s) {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size())
        throw format_error("config line " + std::to_string(line_no) +
                           ": bad integer '" + s + "'");
      return v;
    };

    if (key == "dims_in" || key == "extra_dims_out") {
      std::vector<int> values;
      for (const std::string& part : split(value)) values.push_back(to_int(part));
      const int lower_bound = key == "dims_in" ? 1 : 0;
      for (int v : values)
        if (v < lower_bound)
          throw format_error("config line " + std::to_string(line_no) +
                             ": value out of range for " + key);
      (key == "dims_in" ? config.dims_in : config.extra_dims_out) = values;
    } else if (key == "flags") {
      std::vector<OperatorKind> kinds;
      for (const std::string& part : split(value)) {
        const OperatorKind k = parse_operator_kind(part);
        if (k == OperatorKind::Degenerate)
          throw format_error("config line " + std::to_string(line_no) +
                             ": Degenerate is not a generator flag");
        kinds.push_back(k);
      }
      config.flags = kinds;
    } else if (key == "trials_per_cell") {
      config.trials_per_cell = to_int(value);
      if (config.trials_per_cell < 1)
        throw format_error("trials_per_cell must be >= 1");
    } else if (key == "compat_samples") {
      config.compat_samples = to_int(value);
      if (config.compat_samples < 1)
        throw format_error("compat_samples must be >= 1");
    } else if (key == "master_seed") {
      config.master_seed = std::strtoull(value.c_str(), nullptr, 10);
    } else if (key == "tol_residual" || key == "tol_class" || key == "tol_verify") {
      const double v = std::strtod(value.c_str(), nullptr);
      if (!(v > 0.0))
        throw format_error("config line " + std::to_string(line_no) +
                           ": tolerance must be > 0");
      if (key == "tol_residual") config.tolerances.tol_residual = v;
      if (key == "tol_class") config.tolerances.tol_class = v;
      if (key == "tol_verify") config.tolerances.tol_verify = v;
    } else {
      throw format_error("config line " + std::to_string(line_no) +
                         ": unknown key '" + key + "'");
    }
  }

  auto normalize = [](std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  normalize(config.dims_in);
  normalize(config.extra_dims_out);
  std::sort(config.flags.begin(), config.flags.end(),
            [](OperatorKind a, OperatorKind b) {
              return static_cast<int>(a) < static_cast<int>(b);
            });
  config.flags.erase(std::unique(config.flags.begin(), config.flags.end()),
                     config.flags.end());
  if (config.dims_in.empty() || config.extra_dims_out.empty() ||
      config.flags.empty())
    throw format_error("config must keep dims_in, extra_dims_out and flags nonempty");
  return config;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open '" + path + "'");
  return parse_experiment_config(in);
}

/// Runs every cell of the grid. Each trial: draw a ground truth, wrap it in a
/// gauge-noised oracle, reconstruct, then demand the correct flag (Degenerate
/// at dim 1), phase distance <= tol_verify against the truth matrix, and ray
/// compatibility at tol_verify. Deterministic given the config.
inline RunReport run_roundtrip(const ExperimentConfig& config) {
  RunReport report;
  report.config = config;
  report.overall_pass = true;

  for (int n : config.dims_in) {
    for (int extra : config.extra_dims_out) {
      for (OperatorKind flag : config.flags) {
        CellOutcome cell;
        cell.dim_in = n;
        cell.extra = extra;
        cell.flag = flag;
        const auto start = std::chrono::steady_clock::now();
        int correct_flags = 0;

        for (int trial = 0; trial < config.trials_per_cell; ++trial) {
          const std::uint64_t truth_seed =
              detail::trial_seed(config.master_seed, n, extra, flag, trial, 0);
          const std::uint64_t gauge_seed =
              detail::trial_seed(config.master_seed, n, extra, flag, trial, 1);
          const std::uint64_t compat_seed =
              detail::trial_seed(config.master_seed, n, extra, flag, trial, 2);

          const GroundTruth truth =
              random_ground_truth(n, n + extra, flag, truth_seed, gauge_seed);
          RayMapOracle oracle = make_oracle(truth);
          bool trial_ok = false;
          std::string failure;
          try {
            const ReconstructionResult result = reconstruct(
                oracle, config.tolerances.tol_residual, config.tolerances.tol_class);
            const OperatorKind expected_flag =
                n == 1 ? OperatorKind::Degenerate : flag;
            const bool flag_ok = result.op.flag == expected_flag;
            if (flag_ok) ++correct_flags;

            const double distance =
                distance_up_to_global_phase(result.op.matrix, truth.matrix);
            cell.max_phase_distance =
                std::max(cell.max_phase_distance, distance);

            const CheckReport compat = check_ray_compatibility(
                result.op, oracle, config.compat_samples, compat_seed,
                config.tolerances.tol_verify);
            cell.max_compat_violation =
                std::max(cell.max_compat_violation, compat.max_violation);

            trial_ok = flag_ok && distance <= config.tolerances.tol_verify &&
                       compat.passed;
            if (!trial_ok)
              failure = !flag_ok ? "wrong flag"
                        : distance > config.tolerances.tol_verify
                            ? "phase distance above tol_verify"
                            : "ray compatibility failed";
          } catch (const probe_error& e) {
            failure = e.what();
          }
          if (!trial_ok) {
            cell.failing_trials.push_back(trial);
            if (cell.first_failure.empty())
              cell.first_failure = failure + " [truth_seed=" +
                                   std::to_string(truth_seed) + " gauge_seed=" +
                                   std::to_string(gauge_seed) + "]";
          }
        }

        cell.flag_accuracy =
            static_cast<double>(correct_flags) / config.trials_per_cell;
        cell.passed = cell.failing_trials.empty();
        cell.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        report.overall_pass = report.overall_pass && cell.passed;
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

/// Deterministic text form: one config line, one line per cell, one overall
/// line. Wall times are deliberately absent (identical config must yield
/// byte-identical reports).
inline std::string format_run_report(const RunReport& report) {
  std::string out = "wigner-roundtrip v1\n";
  out += "config " + format_experiment_config(report.config) + '\n';
  for (const CellOutcome& cell : report.cells) {
    out += "cell dim_in=" + std::to_string(cell.dim_in) +
           " extra=" + std::to_string(cell.extra) +
           " flag=" + to_string(cell.flag) +
           " flag_accuracy=" + format_double(cell.flag_accuracy) +
           " max_phase_distance=" + format_double(cell.max_phase_distance) +
           " max_compat_violation=" + format_double(cell.max_compat_violation) +
           " pass=" + (cell.passed ? "true" : "false");
    if (!cell.failing_trials.empty()) {
      out += " failing_trials=" +
             detail::join_list(cell.failing_trials, detail::show_int);
      out += " error=\"" + cell.first_failure + "\"";
    }
    out += '\n';
  }
  out += std::string("overall pass=") + (report.overall_pass ? "true" : "false") +
         '\n';
  return out;
}

}  // namespace raylift
