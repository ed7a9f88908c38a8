/*
 Copyright 2026 The nnsc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include <doctest.h>

#include <random>

#include "nnsc/controllability.hpp"
#include "nnsc/errors.hpp"
#include "nnsc/generate.hpp"
#include "support/oracles.hpp"

using namespace nnsc;

namespace {

Mat diag_a() {
  Mat a = Mat::Zero(3, 3);
  a(0, 0) = -1;
  a(1, 1) = -1;
  return a;
}

Mat example_b() {
  Mat b(3, 4);
  b << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, -1;
  return b;
}

Mat example_phi() {
  Mat phi(4, 4);
  phi << 1, 0, 0, 0, 0, 1, 1, 0, 0, -1, -1, 0, 0, 0, 0, 1;
  return phi;
}

SystemPair example() { return SystemPair(diag_a(), example_b()); }
SystemPair example_phi_system() { return apply_input_basis(example(), example_phi()); }

Mat scalar(double v) { return Mat::Constant(1, 1, v); }

// Cosine between a certificate z and a real direction.
double cosine(const CVec& z, const Vec& d) {
  return std::abs(z.dot(d.cast<Complex>())) / (z.norm() * d.norm());
}

}  // namespace

TEST_CASE("system pair validation") {
  CHECK_THROWS_AS(SystemPair(Mat::Zero(2, 3), Mat::Zero(2, 1)), InputError);
  CHECK_THROWS_AS(SystemPair(Mat::Zero(2, 2), Mat::Zero(3, 1)), InputError);
  CHECK_THROWS_AS(SystemPair(Mat::Zero(2, 2), Mat::Zero(2, 0)), InputError);
  CHECK_THROWS_AS(SparsityLevel(0), InputError);
  CHECK_THROWS_AS(check_nonneg_sparse(example(), SparsityLevel(5)), InputError);
}

TEST_CASE("condition (i): PBH") {
  CHECK(check_condition_i(example()).passed);

  const ConditionOutcome zero_b =
      check_condition_i(SystemPair(Mat::Identity(2, 2), Mat::Zero(2, 1)));
  CHECK_FALSE(zero_b.passed);
  REQUIRE(zero_b.certificate.has_value());
  CHECK(zero_b.certificate->kind == CertificateKind::kViolatesConditionI);
  CHECK(std::abs(zero_b.certificate->lambda - Complex(1, 0)) < 1e-12);

  Mat shift = Mat::Zero(2, 2);
  shift(0, 1) = 1;
  const ConditionOutcome wrong_node = check_condition_i(SystemPair(shift, Mat(Vec::Unit(2, 0))));
  CHECK_FALSE(wrong_node.passed);
  REQUIRE(wrong_node.certificate.has_value());
  CHECK(std::abs(wrong_node.certificate->lambda) < 1e-8);
  CHECK(cosine(wrong_node.certificate->z, Vec::Unit(2, 1)) > 1 - 1e-8);
}

TEST_CASE("condition (ii): sign test at nonnegative eigenvalues") {
  CHECK(check_condition_ii(example()).passed);

  const ConditionOutcome phi = check_condition_ii(example_phi_system());
  CHECK_FALSE(phi.passed);
  REQUIRE(phi.certificate.has_value());
  CHECK(std::abs(phi.certificate->lambda) <= 1e-8);
  CHECK(cosine(phi.certificate->z, Vec::Unit(3, 2)) >= 1 - 1e-8);

  const ConditionOutcome integrator = check_condition_ii(SystemPair(scalar(1), scalar(1)));
  CHECK_FALSE(integrator.passed);
  REQUIRE(integrator.certificate.has_value());
  CHECK(integrator.certificate->z(0).real() == doctest::Approx(-1.0));
  CHECK(integrator.certificate->lambda.real() == doctest::Approx(1.0));

  CHECK(check_condition_ii(SystemPair(-Mat::Identity(2, 2), Mat::Identity(2, 2))).passed);

  // Left eigenvector e1 for lambda = 1 is computed with ~1e-17 noise in the
  // second entry; e1^T B = [2, 0, 0, 1] must still count as sign-definite.
  Mat a(2, 2);
  a << 1, 0, -3, -2;
  Mat b(2, 4);
  b << 2, 0, 0, 1, 2, -1, 1, 0;
  const ConditionOutcome noisy = check_condition_ii(SystemPair(a, b));
  CHECK_FALSE(noisy.passed);
  REQUIRE(noisy.certificate.has_value());
  CHECK(cosine(noisy.certificate->z, Vec::Unit(2, 0)) > 1 - 1e-8);
}

TEST_CASE("condition (iii): sparsity against the rank deficiency") {
  CHECK(check_condition_iii(example(), SparsityLevel(1)).passed);
  const SystemPair zero(Mat::Zero(2, 2), Mat::Identity(2, 2));
  CHECK(check_condition_iii(zero, SparsityLevel(2)).passed);
  const SparsityOutcome fail = check_condition_iii(zero, SparsityLevel(1));
  CHECK_FALSE(fail.passed);
  CHECK(fail.state_dim == 2);
  CHECK(fail.rank_a == 0);
}

TEST_CASE("combined verdicts") {
  SUBCASE("basis change flips the verdict") {
    const ControllabilityReport before = check_nonneg_sparse(example(), SparsityLevel(1));
    CHECK(before.controllable());
    CHECK_FALSE(before.certificate().has_value());

    const ControllabilityReport after = check_nonneg_sparse(example_phi_system(), SparsityLevel(1));
    CHECK_FALSE(after.controllable());
    const auto cert = after.certificate();
    REQUIRE(cert.has_value());
    CHECK(cert->kind == CertificateKind::kViolatesConditionII);
    CHECK(verify_certificate(example_phi_system(), *cert).valid);
  }
  SUBCASE("stable diagonal system") {
    CHECK(check_nonneg_sparse(SystemPair(-Mat::Identity(2, 2), Mat::Identity(2, 2)),
                              SparsityLevel(1))
              .controllable());
  }
  SUBCASE("nonnegative without sparsity") {
    CHECK(check_nonneg(example()).controllable());
    CHECK_FALSE(check_nonneg(SystemPair(scalar(1), scalar(1))).controllable());
    const ControllabilityReport r = check_nonneg(SystemPair(scalar(0.5), scalar(-1)));
    CHECK_FALSE(r.controllable());
    REQUIRE(r.certificate().has_value());
    CHECK(r.certificate()->lambda.real() == doctest::Approx(0.5));
  }
  SUBCASE("sparse with signed inputs") {
    CHECK(check_sparse(example(), SparsityLevel(1)).controllable());
    CHECK_FALSE(check_sparse(SystemPair(Mat::Zero(2, 2), Mat::Identity(2, 2)), SparsityLevel(1))
                    .controllable());
    CHECK(check_sparse(SystemPair(Mat::Identity(2, 2), Mat::Identity(2, 2)), SparsityLevel(1))
              .controllable());
  }
  SUBCASE("eigenvalue table") {
    const ControllabilityReport r = check_nonneg(example());
    REQUIRE(r.eigenvalues.size() == 2);
    CHECK(r.eigenvalues[0].geometric_multiplicity == 2);
    CHECK(r.eigenvalues[1].real_nonnegative);
    CHECK(r.tolerances.ineq_tol == 1e-8);
  }
}

TEST_CASE("minimum sparsity") {
  CHECK(min_sparsity(example()) == 1);
  Mat b(1, 2);
  b << 1, -1;
  CHECK(min_sparsity(SystemPair(scalar(0), b)) == 1);
  CHECK(min_sparsity(SystemPair(-Mat::Identity(2, 2), Mat::Identity(2, 2))) == 1);
  CHECK_FALSE(min_sparsity(SystemPair(scalar(1), scalar(1))).has_value());
  // N - rank(A) = 2 > m = 1, but the PBH test already fails at lambda = 0.
  CHECK_FALSE(min_sparsity(SystemPair(Mat::Zero(2, 2), Mat(Vec::Unit(2, 0)))).has_value());

  std::mt19937_64 rng(4);
  for (int seed = 0; seed < 20; ++seed) {
    const SystemFile f =
        generate_system(GeneratorKind::kPlantedRankDeficient, 3, 4, seed, 1 + seed % 2);
    const SystemPair sys = f.system();
    const int deficiency = 3 - oracle::exact_rank(f.a);
    CHECK(deficiency == 1 + seed % 2);
    const auto s_min = min_sparsity(sys);
    if (s_min) {
      CHECK(*s_min == std::max(1, deficiency));
      CHECK(check_nonneg_sparse(sys, SparsityLevel(*s_min)).controllable());
      if (*s_min > 1) CHECK_FALSE(check_nonneg_sparse(sys, SparsityLevel(*s_min - 1)).controllable());
    }
  }
}

TEST_CASE("corollary bound") {
  CHECK(corollary_bound_check(example()));
  CHECK(check_nonneg_sparse(example(), SparsityLevel(3)).controllable());
  Mat b(1, 2);
  b << 1, -1;
  CHECK(corollary_bound_check(SystemPair(scalar(0), b)));
  CHECK(corollary_bound_check(SystemPair(scalar(1), scalar(1))));
}

TEST_CASE("certificate verification") {
  Certificate e3;
  e3.kind = CertificateKind::kViolatesConditionII;
  e3.lambda = Complex(0, 0);
  e3.z = Vec::Unit(3, 2).cast<Complex>();
  CHECK(verify_certificate(example_phi_system(), e3).valid);

  const CertificateCheck rejected = verify_certificate(example(), e3);
  CHECK_FALSE(rejected.valid);
  CHECK_FALSE(rejected.failures.empty());
  CHECK(rejected.max_zb == doctest::Approx(1.0));

  Certificate scalar_cert;
  scalar_cert.lambda = Complex(1, 0);
  scalar_cert.z = CVec::Constant(1, Complex(-1, 0));
  CHECK(verify_certificate(SystemPair(scalar(1), scalar(1)), scalar_cert).valid);

  Certificate wrong_lambda = e3;
  wrong_lambda.lambda = Complex(0.5, 0);
  CHECK_FALSE(verify_certificate(example_phi_system(), wrong_lambda).valid);

  Certificate negative = e3;
  negative.lambda = Complex(-1, 0);
  negative.z = Vec::Unit(3, 0).cast<Complex>();
  CHECK_FALSE(verify_certificate(example_phi_system(), negative).valid);
}

TEST_CASE("input basis change") {
  const SystemPair same = apply_input_basis(example(), Mat::Identity(4, 4));
  CHECK(same.b() == example_b());
  Mat expected(3, 4);
  expected << 1, 0, 0, 0, 0, 1, 1, 0, 0, -1, -1, -1;
  CHECK(example_phi_system().b() == expected);
  CHECK(apply_input_basis(example(), 2 * Mat::Identity(4, 4)).b() == 2 * example_b());
  CHECK_THROWS_AS(apply_input_basis(example(), Mat::Identity(3, 3)), InputError);
}

TEST_CASE("verdict properties on generated systems") {
  const GeneratorKind kinds[] = {GeneratorKind::kPlantedUncontrollableII,
                                 GeneratorKind::kPlantedRankDeficient,
                                 GeneratorKind::kRandomNonsingularPaired};
  for (int idx = 0; idx < 60; ++idx) {
    const GeneratorKind kind = kinds[idx % 3];
    const int n = 2 + (idx / 3) % 3;
    const int m = 2 + (idx / 9) % 3;
    const SystemFile f = generate_system(kind, n, m, 100 + idx, 1 + idx % 2);
    const SystemPair sys = f.system();
    const SystemPair neg(sys.a(), -sys.b());
    CAPTURE(idx);
    const bool nonneg = check_nonneg(sys).controllable();
    bool previous = false;
    for (int s = 1; s <= m; ++s) {
      const ControllabilityReport r = check_nonneg_sparse(sys, SparsityLevel(s));
      // Monotone in s.
      if (previous) CHECK(r.controllable());
      previous = r.controllable();
      CHECK(r.controllable() == check_nonneg_sparse(neg, SparsityLevel(s)).controllable());
      const bool sparse = check_sparse(sys, SparsityLevel(s)).controllable();
      CHECK(r.controllable() == (sparse && check_condition_ii(sys).passed));
      if (!r.controllable() && r.certificate()) {
        CHECK(verify_certificate(sys, *r.certificate()).valid);
      }
      if (!r.controllable() && !r.certificate()) {
        REQUIRE(r.condition_iii.has_value());
        CHECK_FALSE(r.condition_iii->passed);
      }
    }
    const bool at_m = check_nonneg_sparse(sys, SparsityLevel(m)).controllable();
    CHECK(at_m == (nonneg && m >= n - oracle::exact_rank(f.a)));
    if (kind == GeneratorKind::kPlantedUncontrollableII) {
      CHECK_FALSE(nonneg);
    }
  }
}

TEST_CASE("planted certificates match the recorded direction") {
  for (int seed = 0; seed < 30; ++seed) {
    const int n = 2 + seed % 3;
    const SystemFile f = generate_system(GeneratorKind::kPlantedUncontrollableII, n, 2, seed);
    REQUIRE(f.planted.has_value());
    const ControllabilityReport r = check_nonneg(f.system());
    REQUIRE_FALSE(r.controllable());
    const auto cert = r.certificate();
    REQUIRE(cert.has_value());
    CHECK(cert->kind == CertificateKind::kViolatesConditionII);
    CHECK(std::abs(cert->lambda - Complex(f.planted->lambda, 0)) < 1e-8);
    CHECK(cosine(cert->z, f.planted->z) > 1 - 1e-8);
  }
}
