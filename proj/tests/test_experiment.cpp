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

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "raylift/experiment.hpp"

using namespace raylift;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.dims_in = {1, 2, 3};
  config.extra_dims_out = {0, 2};
  config.trials_per_cell = 2;
  config.compat_samples = 50;
  config.master_seed = 424242;
  return config;
}

}  // namespace

TEST_CASE("config parsing", "[experiment]") {
  SECTION("round trip through the key = value format") {
    std::istringstream in(
        "# comment\n"
        "dims_in = 3,1,2,2\n"
        "extra_dims_out = 0, 2\n"
        "flags = antilinear\n"
        "trials_per_cell = 4\n"
        "master_seed = 99\n"
        "compat_samples = 25\n"
        "tol_residual = 1e-8\n"
        "tol_class = 1e-5\n"
        "tol_verify = 1e-8\n");
    const ExperimentConfig config = parse_experiment_config(in);
    CHECK(config.dims_in == std::vector<int>{1, 2, 3});  // sorted, deduped
    CHECK(config.extra_dims_out == std::vector<int>{0, 2});
    CHECK(config.flags == std::vector<OperatorKind>{OperatorKind::Antilinear});
    CHECK(config.trials_per_cell == 4);
    CHECK(config.master_seed == 99);
    CHECK(config.compat_samples == 25);
    CHECK(config.tolerances.tol_residual == 1e-8);
    CHECK(config.tolerances.tol_class == 1e-5);
    CHECK(config.tolerances.tol_verify == 1e-8);
  }
  SECTION("defaults survive an empty config") {
    std::istringstream in("\n# nothing here\n");
    const ExperimentConfig config = parse_experiment_config(in);
    CHECK(config.dims_in == default_experiment_config().dims_in);
    CHECK(config.trials_per_cell == 10);
  }
  SECTION("rejects malformed input") {
    std::istringstream bad_key("frobs = 3\n");
    CHECK_THROWS_AS(parse_experiment_config(bad_key), format_error);
    std::istringstream bad_tol("tol_residual = -1\n");
    CHECK_THROWS_AS(parse_experiment_config(bad_tol), format_error);
    std::istringstream bad_flag("flags = degenerate\n");
    CHECK_THROWS_AS(parse_experiment_config(bad_flag), format_error);
    std::istringstream bad_dim("dims_in = 0\n");
    CHECK_THROWS_AS(parse_experiment_config(bad_dim), format_error);
    std::istringstream no_eq("dims_in 3\n");
    CHECK_THROWS_AS(parse_experiment_config(no_eq), format_error);
  }
}

TEST_CASE("roundtrip grid passes on a small config", "[experiment]") {
  const RunReport report = run_roundtrip(small_config());
  CHECK(report.overall_pass);
  CHECK(report.cells.size() == 3 * 2 * 2);
  for (const CellOutcome& cell : report.cells) {
    CHECK(cell.flag_accuracy == 1.0);
    CHECK(cell.max_phase_distance <= 1e-9);
    CHECK(cell.max_compat_violation <= 1e-9);
    CHECK(cell.passed);
  }
}

TEST_CASE("roundtrip reports are byte-identical across runs", "[experiment]") {
  const ExperimentConfig config = small_config();
  const std::string first = format_run_report(run_roundtrip(config));
  const std::string second = format_run_report(run_roundtrip(config));
  CHECK(first == second);
  CHECK(first.rfind("wigner-roundtrip v1\n", 0) == 0);
  CHECK(first.find("overall pass=true") != std::string::npos);
}

TEST_CASE("unsatisfiable tolerance fails with a diagnosis", "[experiment]") {
  ExperimentConfig config = small_config();
  config.dims_in = {3};
  config.tolerances.tol_residual = 1e-30;
  const RunReport report = run_roundtrip(config);
  CHECK_FALSE(report.overall_pass);
  const std::string text = format_run_report(report);
  CHECK(text.find("pass=false") != std::string::npos);
  CHECK(text.find("error=\"") != std::string::npos);
  CHECK(text.find("measured") != std::string::npos);  // probe diagnosis
}
