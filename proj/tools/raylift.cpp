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

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "raylift/raylift.hpp"

// Exit codes: 0 = all checks passed, 1 = verification/reconstruction failure,
// 2 = usage or file-format error. Reports go to stdout, diagnostics to stderr.

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

raylift::OperatorKind parse_generator_flag(const std::string& token) {
  const raylift::OperatorKind kind = raylift::parse_operator_kind(token);
  if (kind == raylift::OperatorKind::Degenerate)
    throw raylift::format_error("generator flag must be linear or antilinear");
  return kind;
}

int cmd_generate(int n, int m, const std::string& flag_token,
                 std::uint64_t seed, const std::string& out_path) {
  if (m < n) {
    std::cerr << "error: no isometry into smaller space (m = " << m << " < n = "
              << n << ")\n";
    return kExitUsage;
  }
  const raylift::OperatorKind flag = parse_generator_flag(flag_token);
  // The same seed feeds the matrix draw (directly) and the oracle gauge
  // noise (via per-call derivation), so the file records exactly the seed
  // the user passed.
  const raylift::GroundTruth truth =
      raylift::random_ground_truth(n, m, flag, seed, seed);
  raylift::save_ground_truth(out_path, truth);
  std::cout << "wrote " << out_path << ": " << m << "x" << n << " "
            << raylift::to_string(flag) << " gauge_seed=" << truth.gauge_seed
            << "\n";
  return kExitPass;
}

int cmd_reconstruct(const std::string& truth_path, const std::string& out_path,
                    double tol, double tol_class, bool has_seed,
                    std::uint64_t seed, bool strict_gauge) {
  raylift::GroundTruth truth = raylift::load_ground_truth(truth_path);
  if (has_seed) truth.gauge_seed = seed;
  raylift::RayMapOracle oracle = raylift::make_oracle(
      truth, strict_gauge ? raylift::GaugeMode::PerRay
                          : raylift::GaugeMode::PerCall);
  const double probe_tol = tol > 0.0 ? tol : raylift::default_tol(truth.dim_in());

  try {
    const raylift::ReconstructionResult result =
        raylift::reconstruct(oracle, probe_tol, tol_class);
    raylift::save_wigner_operator(out_path, result.op);
    std::cout << "flag=" << raylift::to_string(result.op.flag)
              << " oracle_calls=" << result.report.oracle_calls
              << " max_xi_residual="
              << raylift::format_double(result.report.max_xi_residual())
              << " max_eta_residual="
              << raylift::format_double(result.report.max_eta_residual())
              << " tol=" << raylift::format_double(probe_tol) << "\n";
    return kExitPass;
  } catch (const raylift::probe_error& e) {
    std::cerr << "reconstruction failed at probe " << e.probe << ": "
              << e.constraint << "\n  measured " << raylift::detail::show(e.measured)
              << ", expected " << raylift::detail::show(e.expected) << "\n";
    return kExitFailure;
  }
}

int cmd_verify(const std::string& operator_path, const std::string& truth_path,
               int samples, std::uint64_t seed, double tol, bool strict_gauge) {
  const raylift::WignerOperator w = raylift::load_wigner_operator(operator_path);
  const raylift::GroundTruth truth = raylift::load_ground_truth(truth_path);
  if (w.dim_in() != truth.dim_in() || w.dim_out() != truth.dim_out()) {
    std::cerr << "error: operator is " << w.dim_out() << "x" << w.dim_in()
              << " but truth is " << truth.dim_out() << "x" << truth.dim_in()
              << "\n";
    return kExitUsage;
  }
  raylift::RayMapOracle oracle = raylift::make_oracle(
      truth, strict_gauge ? raylift::GaugeMode::PerRay
                          : raylift::GaugeMode::PerCall);

  bool all_passed = true;
  if (w.flag == raylift::OperatorKind::Degenerate) {
    std::cout << "check=operator_law skipped=degenerate\n";
  } else {
    const raylift::CheckReport law = raylift::check_operator_law(
        w, samples, raylift::derive_seed(seed, 1), tol);
    std::cout << "check=operator_law " << raylift::format_check_report(law)
              << "\n";
    all_passed = all_passed && law.passed;
  }

  const raylift::CheckReport compat = raylift::check_ray_compatibility(
      w, oracle, samples, raylift::derive_seed(seed, 2), tol);
  std::cout << "check=ray_compatibility " << raylift::format_check_report(compat)
            << "\n";
  all_passed = all_passed && compat.passed;

  const double distance =
      raylift::distance_up_to_global_phase(w.matrix, truth.matrix);
  const bool distance_ok = distance <= tol;
  std::cout << "distance_up_to_global_phase=" << raylift::format_double(distance)
            << " passed=" << (distance_ok ? "true" : "false") << "\n";
  all_passed = all_passed && distance_ok;

  std::cout << "overall passed=" << (all_passed ? "true" : "false") << "\n";
  return all_passed ? kExitPass : kExitFailure;
}

int cmd_roundtrip(const std::string& config_path, const std::string& out_path) {
  const raylift::ExperimentConfig config =
      config_path.empty() ? raylift::default_experiment_config()
                          : raylift::load_experiment_config(config_path);
  const raylift::RunReport report = raylift::run_roundtrip(config);
  const std::string text = raylift::format_run_report(report);
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw raylift::format_error("cannot open '" + out_path + "'");
    out << text;
  }
  double total = 0.0;
  for (const raylift::CellOutcome& cell : report.cells) total += cell.wall_time_s;
  std::cerr << "roundtrip wall time: " << total << " s over "
            << report.cells.size() << " cells\n";
  return report.overall_pass ? kExitPass : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"raylift: reconstructs the unitary or antiunitary operator behind "
               "a black-box ray map and certifies the result"};
  app.require_subcommand(1);

  int gen_n = 0, gen_m = 0;
  std::string gen_flag;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  CLI::App* generate = app.add_subcommand(
      "generate", "draw a random isometric ground truth and write it to a file");
  generate->add_option("n", gen_n, "input dimension")->required();
  generate->add_option("m", gen_m, "output dimension (m >= n)")->required();
  generate->add_option("flag", gen_flag, "linear | antilinear")->required();
  generate->add_option("seed", gen_seed, "generator seed")->required();
  generate->add_option("out", gen_out, "output path")->required();

  std::string rec_truth, rec_out;
  double rec_tol = -1.0, rec_tol_class = raylift::kDefaultClassTol;
  std::uint64_t rec_seed = 0;
  bool rec_strict = false;
  CLI::App* reconstruct = app.add_subcommand(
      "reconstruct", "rebuild the operator from a gauge-noised oracle over a truth file");
  reconstruct->add_option("truth", rec_truth, "ground-truth file")->required();
  reconstruct->add_option("out", rec_out, "operator output path")->required();
  reconstruct->add_option("--tol", rec_tol,
                          "probe tolerance (default: 1e-10 * dim)");
  reconstruct->add_option("--tol-class", rec_tol_class,
                          "classification tolerance (default 1e-6)");
  CLI::Option* rec_seed_opt = reconstruct->add_option(
      "--seed", rec_seed, "override the gauge seed from the truth file");
  reconstruct->add_flag("--strict-gauge", rec_strict,
                        "per-ray deterministic reply phases");

  std::string ver_op, ver_truth;
  int ver_samples = 1000;
  std::uint64_t ver_seed = 1;
  double ver_tol = 1e-9;
  bool ver_strict = false;
  CLI::App* verify = app.add_subcommand(
      "verify", "check an operator file against a truth file");
  verify->add_option("operator", ver_op, "operator file")->required();
  verify->add_option("truth", ver_truth, "ground-truth file")->required();
  verify->add_option("--samples", ver_samples, "samples per check (default 1000)");
  verify->add_option("--seed", ver_seed, "sampling seed (default 1)");
  verify->add_option("--tol", ver_tol, "verification tolerance (default 1e-9)");
  verify->add_flag("--strict-gauge", ver_strict,
                   "per-ray deterministic reply phases");

  std::string rt_config, rt_out;
  CLI::App* roundtrip = app.add_subcommand(
      "roundtrip", "run the batch generate/reconstruct/verify grid");
  roundtrip->add_option("config", rt_config,
                        "config file (key = value; defaults when omitted)");
  roundtrip->add_option("--out", rt_out, "also write the report to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (generate->parsed())
      return cmd_generate(gen_n, gen_m, gen_flag, gen_seed, gen_out);
    if (reconstruct->parsed())
      return cmd_reconstruct(rec_truth, rec_out, rec_tol, rec_tol_class,
                             rec_seed_opt->count() > 0, rec_seed, rec_strict);
    if (verify->parsed())
      return cmd_verify(ver_op, ver_truth, ver_samples, ver_seed, ver_tol,
                        ver_strict);
    if (roundtrip->parsed()) return cmd_roundtrip(rt_config, rt_out);
  } catch (const raylift::format_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
