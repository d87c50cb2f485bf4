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

#include <cmath>
#include <complex>

#include "raylift/oracle.hpp"
#include "raylift/reconstruct.hpp"
#include "raylift/verify.hpp"

using namespace raylift;

namespace {

const Complex kI(0.0, 1.0);

GroundTruth identity_truth(int n, OperatorKind flag, std::uint64_t gauge_seed) {
  return GroundTruth{ComplexMatrix::identity(n), flag, gauge_seed};
}

/// Dishonest fixture: conjugates one fixed component of the representative.
/// Not a ray isometry; produces mixed classification values.
RayMapOracle partial_conjugation_oracle(int n, int component) {
  return RayMapOracle(n, n, [component](const Ray& r, std::uint64_t) {
    ComplexVector v = r.rep();
    v[component] = std::conj(v[component]);
    return ray_from_vector(v);
  });
}

}  // namespace

TEST_CASE("probe vectors", "[reconstruct]") {
  const ProbeVector xi = xi_probe(0, 2, 4);
  const ProbeVector eta = eta_probe(1, 3, 4);
  const ProbeVector phi = phi_probe(2, 1, 4);
  CHECK(std::abs(norm(xi.vector) - 1.0) <= 1e-15);
  CHECK(std::abs(norm(eta.vector) - 1.0) <= 1e-15);
  CHECK(std::abs(norm(phi.vector) - 1.0) <= 1e-15);
  CHECK(xi.id() == "xi(0,2)");
  CHECK(eta.id() == "eta(1,3)");
  CHECK(phi.id() == "phi(2,1)");
  CHECK_THROWS_AS(xi_probe(1, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(eta_probe(0, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(phi_probe(2, 2, 3), std::invalid_argument);
}

TEST_CASE("fix_phase", "[reconstruct]") {
  const ComplexVector e1 = standard_basis_vector(2, 0);
  SECTION("restores a rotated basis vector") {
    const ComplexVector rotated = std::polar(1.0, 2.1) * e1;
    CHECK(norm(fix_phase(rotated, e1, 1e-10) - e1) <= 1e-15);
  }
  SECTION("restores positive overlap for superpositions") {
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexVector diag{Complex(s), Complex(s)};
    const ComplexVector rotated = std::polar(1.0, std::numbers::pi / 3) * diag;
    CHECK(norm(fix_phase(rotated, e1, 1e-10) - diag) <= 1e-15);
  }
  SECTION("orthogonal reference is rejected") {
    const ComplexVector e2 = standard_basis_vector(2, 1);
    CHECK_THROWS_WITH(fix_phase(e1, e2, 1e-10),
                      "phase undetermined: orthogonal reference");
  }
  SECTION("norm is unchanged") {
    const ComplexVector v{Complex(1.0, 2.0), Complex(-0.5, 0.25)};
    CHECK(std::abs(norm(fix_phase(v, e1, 1e-10)) - norm(v)) <= 1e-15);
  }
}

TEST_CASE("phase-algebra deductions", "[reconstruct]") {
  SECTION("|1+c| = 2 pins c to 1 with quadratic sensitivity") {
    for (double tol : {1e-6, 1e-10}) {
      const double eps = 1.9 * std::sqrt(tol);
      const Complex c = std::polar(1.0, eps);
      CHECK(std::abs(std::abs(1.0 + c) - 2.0) <= tol);
      CHECK(distance_to_one(c) <= 2.0 * std::sqrt(tol));
    }
    CHECK(unit_phase_is_one(Complex(1.0), 1e-6));
    CHECK_FALSE(unit_phase_is_one(std::polar(1.0, 2e-3), 1e-6));
  }
  SECTION("|1+c| = |1+i| pins c to +i or -i") {
    CHECK(unit_phase_imaginary_unit(kI, 1e-6).value() == kI);
    CHECK(unit_phase_imaginary_unit(-kI, 1e-6).value() == -kI);
    CHECK_FALSE(unit_phase_imaginary_unit(Complex(1.0), 1e-6).has_value());
    CHECK_FALSE(
        unit_phase_imaginary_unit(std::polar(1.0, std::numbers::pi / 2 + 2e-3), 1e-6)
            .has_value());
    CHECK(distance_to_imaginary_units(kI) == 0.0);
    CHECK(distance_to_imaginary_units(Complex(1.0)) ==
          Catch::Approx(std::sqrt(2.0)));
  }
}

TEST_CASE("reconstruct_basis_images on the identity", "[reconstruct]") {
  RayMapOracle oracle = make_oracle(identity_truth(2, OperatorKind::Linear, 71));
  const BasisImages basis = reconstruct_basis_images(oracle, 1e-9);
  REQUIRE(basis.columns.size() == 2);
  // One overall phase on column 0, none on column 1 relative to it.
  const Complex phase = basis.columns[0][0];
  CHECK(std::abs(std::abs(phase) - 1.0) <= 1e-12);
  CHECK(std::abs(basis.columns[0][1]) <= 1e-12);
  CHECK(std::abs(basis.columns[1][1] - phase) <= 1e-12);
  CHECK(std::abs(basis.columns[1][0]) <= 1e-12);
  // The xi image sits halfway between the recovered columns.
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(norm(basis.xi_images[0] -
             Complex(s) * (basis.columns[0] + basis.columns[1])) <= 1e-12);
}

TEST_CASE("basis images match the generator columns as rays",
          "[reconstruct][property]") {
  for (OperatorKind flag : {OperatorKind::Linear, OperatorKind::Antilinear}) {
    const GroundTruth truth = random_ground_truth(4, 6, flag, 81, 82);
    RayMapOracle oracle = make_oracle(truth);
    const BasisImages basis = reconstruct_basis_images(oracle, 1e-9);
    for (int a = 0; a < 4; ++a)
      CHECK(ray_equal(ray_from_vector(basis.columns[a]),
                      ray_from_vector(truth.matrix.column(a)), 1e-10));
    CHECK(check_orthonormal(basis.columns, 1e-10));
  }
}

TEST_CASE("reconstruct_basis_images rejects the collapse oracle",
          "[reconstruct]") {
  RayMapOracle oracle = collapse_oracle(3);
  try {
    reconstruct_basis_images(oracle, 1e-9);
    FAIL("expected probe_error");
  } catch (const probe_error& e) {
    CHECK(e.probe == "xi(0,1)");
    CHECK(e.constraint.find("not an isometry") != std::string::npos);
    CHECK(std::abs(e.measured.real() - 1.0) <= 1e-12);   // measured overlap 1
    CHECK(std::abs(e.expected.real() - 1.0 / std::sqrt(2.0)) <= 1e-12);
  }
}

TEST_CASE("classify_pair", "[reconstruct]") {
  SECTION("identity oracle gives c = +i") {
    RayMapOracle oracle = make_oracle(identity_truth(3, OperatorKind::Linear, 91));
    const BasisImages basis = reconstruct_basis_images(oracle, 1e-9);
    const Complex c = classify_pair(oracle, basis.columns, 0, 1, 1e-9);
    CHECK(std::abs(c - kI) <= 1e-12);
  }
  SECTION("conjugation oracle gives c = -i") {
    RayMapOracle oracle =
        make_oracle(identity_truth(3, OperatorKind::Antilinear, 92));
    const BasisImages basis = reconstruct_basis_images(oracle, 1e-9);
    const Complex c = classify_pair(oracle, basis.columns, 1, 2, 1e-9);
    CHECK(std::abs(c + kI) <= 1e-12);
  }
  SECTION("a strongly perturbed oracle is rejected") {
    const GroundTruth truth = random_ground_truth(3, 3, OperatorKind::Linear, 93, 94);
    RayMapOracle clean = make_oracle(truth);
    const BasisImages basis = reconstruct_basis_images(clean, 1e-9);
    RayMapOracle noisy = perturbed_oracle(truth, 0.3);
    CHECK_THROWS_AS(classify_pair(noisy, basis.columns, 0, 1, 1e-9), probe_error);
  }
}

TEST_CASE("chain consistency", "[reconstruct]") {
  SECTION("all pairs agree with the generator flag in dim 4") {
    for (OperatorKind flag : {OperatorKind::Linear, OperatorKind::Antilinear}) {
      const GroundTruth truth = random_ground_truth(4, 4, flag, 101, 102);
      RayMapOracle oracle = make_oracle(truth);
      const BasisImages basis = reconstruct_basis_images(oracle, 1e-9);
      ReconstructionReport report;
      const OperatorKind found = chain_consistency(
          oracle, basis.columns, chain_pair_set(4), 1e-9, report);
      CHECK(found == flag);
      CHECK(report.classification_values.size() == 12);
      const Complex expected = flag == OperatorKind::Linear ? kI : -kI;
      for (const auto& [pair, c] : report.classification_values)
        CHECK(std::abs(c - expected) <= 1e-10);
    }
  }
  SECTION("swapped pairs take the same option in dim 2") {
    const GroundTruth truth = random_ground_truth(2, 2, OperatorKind::Linear, 103, 104);
    RayMapOracle oracle = make_oracle(truth);
    const BasisImages basis = reconstruct_basis_images(oracle, 1e-9);
    ReconstructionReport report;
    chain_consistency(oracle, basis.columns, {{0, 1}, {1, 0}}, 1e-9, report);
    CHECK(std::abs(report.classification_values.at({0, 1}) -
                   report.classification_values.at({1, 0})) <= 1e-10);
  }
  SECTION("a partial conjugation produces mixed values and is rejected") {
    RayMapOracle oracle = partial_conjugation_oracle(3, 2);
    const BasisImages basis = reconstruct_basis_images(oracle, 1e-9);
    ReconstructionReport report;
    CHECK_THROWS_WITH(
        chain_consistency(oracle, basis.columns, chain_pair_set(3), 1e-9, report),
        Catch::Matchers::ContainsSubstring("inconsistent linearity type"));
  }
}

TEST_CASE("chain pair sets", "[reconstruct]") {
  CHECK(chain_pair_set(2) ==
        std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
  CHECK(chain_pair_set(4).size() == 12);   // exhaustive
  CHECK(chain_pair_set(12).size() == 32);  // spanning: 11 + 11 + 10
  CHECK(triple_pair_set(5).size() == 6);   // all pairs from {1..4}
  CHECK(triple_pair_set(12).size() == 10); // consecutive only
}

TEST_CASE("validate_triples", "[reconstruct]") {
  SECTION("identity oracle, dim 3") {
    RayMapOracle oracle = make_oracle(identity_truth(3, OperatorKind::Linear, 111));
    const BasisImages basis = reconstruct_basis_images(oracle, 1e-9);
    const TripleResiduals residuals = validate_triples(oracle, basis.columns, 1e-9);
    CHECK(residuals.max() <= 1e-12);
  }
  SECTION("random generator, dim 5, all triples") {
    const GroundTruth truth = random_ground_truth(5, 5, OperatorKind::Antilinear, 112, 113);
    RayMapOracle oracle = make_oracle(truth);
    const BasisImages basis = reconstruct_basis_images(oracle, 1e-9);
    const TripleResiduals residuals = validate_triples(oracle, basis.columns, 1e-9);
    CHECK(residuals.eta.size() == 6);
    CHECK(residuals.xi.size() == 6);
    CHECK(residuals.max() <= 1e-9);
  }
}

TEST_CASE("reconstruct end to end", "[reconstruct]") {
  SECTION("identity oracle recovers the identity, Linear") {
    RayMapOracle oracle = make_oracle(identity_truth(4, OperatorKind::Linear, 121));
    const ReconstructionResult result = reconstruct(oracle, 1e-9);
    CHECK(result.op.flag == OperatorKind::Linear);
    CHECK(distance_up_to_global_phase(result.op.matrix,
                                      ComplexMatrix::identity(4)) <= 1e-12);
  }
  SECTION("conjugation oracle recovers the identity, Antilinear") {
    RayMapOracle oracle =
        make_oracle(identity_truth(4, OperatorKind::Antilinear, 122));
    const ReconstructionResult result = reconstruct(oracle, 1e-9);
    CHECK(result.op.flag == OperatorKind::Antilinear);
    CHECK(distance_up_to_global_phase(result.op.matrix,
                                      ComplexMatrix::identity(4)) <= 1e-12);
  }
  SECTION("gauge-noised rectangular antilinear round trip") {
    const GroundTruth truth = random_ground_truth(3, 5, OperatorKind::Antilinear, 123, 124);
    RayMapOracle oracle = make_oracle(truth);
    const ReconstructionResult result = reconstruct(oracle, 1e-9);
    CHECK(result.op.flag == OperatorKind::Antilinear);
    CHECK(result.op.dim_out() == 5);
    CHECK(distance_up_to_global_phase(result.op.matrix, truth.matrix) <= 1e-9);
    CHECK(orthonormality_defect(result.op.matrix) <= 1e-9);
  }
  SECTION("dim 1 is Degenerate with a valid image column") {
    const GroundTruth truth = random_ground_truth(1, 4, OperatorKind::Linear, 125, 126);
    RayMapOracle oracle = make_oracle(truth);
    const ReconstructionResult result = reconstruct(oracle, 1e-9);
    CHECK(result.op.flag == OperatorKind::Degenerate);
    CHECK(result.report.oracle_calls == 1);
    CHECK(ray_equal(ray_from_vector(result.op.matrix.column(0)),
                    ray_from_vector(truth.matrix.column(0)), 1e-10));
  }
  SECTION("dim 2 skips the triple step and still classifies") {
    const GroundTruth truth = random_ground_truth(2, 2, OperatorKind::Antilinear, 127, 128);
    RayMapOracle oracle = make_oracle(truth);
    const ReconstructionResult result = reconstruct(oracle, 1e-9);
    CHECK(result.op.flag == OperatorKind::Antilinear);
    CHECK(result.report.eta_residuals.empty());
    CHECK(result.report.oracle_calls == 4);  // 2 basis + 2 classification
  }
  SECTION("oracle call counts are the documented probe complexity") {
    // dim 4 exhaustive: 4 basis + 2 * C(3,2) triples + 12 classification.
    const GroundTruth truth = random_ground_truth(4, 4, OperatorKind::Linear, 129, 130);
    RayMapOracle oracle = make_oracle(truth);
    CHECK(reconstruct(oracle, 1e-9).report.oracle_calls == 22);
    // dim 9 spanning: 9 basis + 2 * 7 triples + (8 + 8 + 7) classification.
    const GroundTruth big = random_ground_truth(9, 9, OperatorKind::Linear, 131, 132);
    RayMapOracle big_oracle = make_oracle(big);
    CHECK(reconstruct(big_oracle, 1e-9).report.oracle_calls == 46);
  }
  SECTION("reconstruction is robust to the gauge seed") {
    for (OperatorKind flag : {OperatorKind::Linear, OperatorKind::Antilinear}) {
      GroundTruth truth = random_ground_truth(5, 5, flag, 133, 134);
      RayMapOracle first = make_oracle(truth);
      truth.gauge_seed = 999;
      RayMapOracle second = make_oracle(truth);
      const ReconstructionResult r1 = reconstruct(first, 1e-9);
      const ReconstructionResult r2 = reconstruct(second, 1e-9);
      CHECK(r1.op.flag == r2.op.flag);
      CHECK(distance_up_to_global_phase(r1.op.matrix, r2.op.matrix) <= 1e-9);
    }
  }
  SECTION("tolerance too tight for float arithmetic is diagnosed") {
    const GroundTruth truth = random_ground_truth(4, 4, OperatorKind::Linear, 135, 136);
    RayMapOracle oracle = make_oracle(truth);
    CHECK_THROWS_AS(reconstruct(oracle, 1e-30), probe_error);
  }
}

TEST_CASE("apply", "[reconstruct]") {
  const WignerOperator lin{ComplexMatrix::identity(2), OperatorKind::Linear};
  const WignerOperator anti{ComplexMatrix::identity(2), OperatorKind::Antilinear};
  const double s = 1.0 / std::sqrt(2.0);
  const ComplexVector psi{Complex(s), s * kI};

  CHECK(norm(apply(lin, psi) - psi) == 0.0);
  CHECK(norm(apply(anti, psi) - ComplexVector{Complex(s), -s * kI}) == 0.0);
  // Antilinearity: U(i psi) = -i U(psi).
  CHECK(norm(apply(anti, kI * psi) - (-kI) * apply(anti, psi)) <= 1e-15);
  // Norm preservation.
  CHECK(std::abs(norm(apply(anti, psi)) - norm(psi)) <= 1e-15);
  CHECK_THROWS_AS(apply(lin, ComplexVector(3)), std::invalid_argument);
}

TEST_CASE("coefficient_match_check", "[reconstruct]") {
  SECTION("identity oracle reproduces coefficients") {
    RayMapOracle oracle = make_oracle(identity_truth(3, OperatorKind::Linear, 141));
    const ReconstructionResult result = reconstruct(oracle, 1e-9);
    const ComplexVector psi{Complex(1.0), Complex(2.0), Complex(0.0, 3.0)};
    CHECK(coefficient_match_check(result.op, oracle, psi, 1e-9) <= 1e-10);
  }
  SECTION("basis vector forces a nonzero pivot") {
    RayMapOracle oracle = make_oracle(identity_truth(3, OperatorKind::Linear, 142));
    const ReconstructionResult result = reconstruct(oracle, 1e-9);
    ReconstructionReport report;
    const ComplexVector e2 = standard_basis_vector(3, 1);
    CHECK(coefficient_match_check(result.op, oracle, e2, 1e-9, &report) <= 1e-10);
    CHECK(report.pivot_choices.at("psi@0") == 1);
  }
  SECTION("random truths across dims and flags") {
    Prng rng(143);
    for (int dim = 2; dim <= 6; ++dim) {
      for (OperatorKind flag : {OperatorKind::Linear, OperatorKind::Antilinear}) {
        const GroundTruth truth =
            random_ground_truth(dim, dim + 1, flag, 144 + dim, 145 + dim);
        RayMapOracle oracle = make_oracle(truth);
        const ReconstructionResult result = reconstruct(oracle, 1e-9);
        for (int i = 0; i < 100; ++i) {
          const ComplexVector psi = rng.gaussian_vector(dim);
          CHECK(coefficient_match_check(result.op, oracle, psi, 1e-9) <= 1e-9);
        }
      }
    }
  }
  SECTION("preconditions") {
    RayMapOracle oracle = make_oracle(identity_truth(2, OperatorKind::Linear, 146));
    const ReconstructionResult result = reconstruct(oracle, 1e-9);
    CHECK_THROWS_AS(
        coefficient_match_check(result.op, oracle, ComplexVector(2), 1e-9),
        std::invalid_argument);
    const WignerOperator degenerate{ComplexMatrix::identity(1),
                                    OperatorKind::Degenerate};
    RayMapOracle tiny = make_oracle(identity_truth(1, OperatorKind::Linear, 147));
    CHECK_THROWS_AS(coefficient_match_check(degenerate, tiny,
                                            standard_basis_vector(1, 0), 1e-9),
                    std::invalid_argument);
  }
}

TEST_CASE("WignerOperator invariants", "[reconstruct]") {
  WignerOperator bad{ComplexMatrix::identity(3), OperatorKind::Degenerate};
  CHECK_THROWS_AS(validate_wigner_operator(bad, 1e-9), std::invalid_argument);
  WignerOperator skew{ComplexMatrix::identity(2), OperatorKind::Linear};
  skew.matrix.at(0, 1) = Complex(0.3);
  CHECK_THROWS_AS(validate_wigner_operator(skew, 1e-9), std::invalid_argument);
  const WignerOperator ok{ComplexMatrix::identity(1), OperatorKind::Degenerate};
  CHECK_NOTHROW(validate_wigner_operator(ok, 1e-9));
}
