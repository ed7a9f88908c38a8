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

#ifndef NNSC_CONTROLLABILITY_HPP
#define NNSC_CONTROLLABILITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "nnsc/matrix_core.hpp"

namespace nnsc {

/// The pair (A, B) of x_k = A x_{k-1} + B u_k.
class SystemPair {
 public:
  /// Throws InputError unless A is square, rows(B) == rows(A), m >= 1 and
  /// all entries are finite.
  SystemPair(Mat a, Mat b);

  const Mat& a() const { return a_; }
  const Mat& b() const { return b_; }
  int state_dim() const { return static_cast<int>(a_.rows()); }
  int input_dim() const { return static_cast<int>(b_.cols()); }

 private:
  Mat a_;
  Mat b_;
};

/// Number of nonzero input entries allowed per step; s >= 1. The upper
/// bound s <= m is checked against a concrete system.
class SparsityLevel {
 public:
  explicit SparsityLevel(int s);
  int value() const { return s_; }

 private:
  int s_;
};

enum class CertificateKind { kViolatesConditionI, kViolatesConditionII };

/// Witness (lambda, z) of uncontrollability: z^T A = lambda z^T together with
/// z^T B = 0 (kind i) or z^T B <= 0 with lambda real and >= 0 (kind ii).
struct Certificate {
  CertificateKind kind = CertificateKind::kViolatesConditionII;
  Complex lambda;
  CVec z;  ///< normalized so the largest-modulus entry equals 1
  double residual_eig = 0.0;
  double max_zb = 0.0;  ///< kind i: ||z^T B||_inf; kind ii: max_j (z^T B)_j
};

struct ConditionOutcome {
  bool passed = true;
  std::optional<Certificate> certificate;
  /// Every eigenvalue at which the condition failed, in eigen-table order.
  std::vector<Complex> violating_eigenvalues;
};

struct SparsityOutcome {
  bool passed = true;
  int s = 0;
  int state_dim = 0;
  int rank_a = 0;
};

struct EigenTableRow {
  Complex lambda;
  int algebraic_multiplicity = 0;
  int geometric_multiplicity = 0;
  bool real_nonnegative = false;
  bool merged = false;
  double residual = 0.0;
};

enum class Verdict { kControllable, kUncontrollable };

struct ControllabilityReport {
  std::optional<ConditionOutcome> condition_i;
  std::optional<ConditionOutcome> condition_ii;
  std::optional<SparsityOutcome> condition_iii;
  Verdict verdict = Verdict::kControllable;
  Tolerances tolerances;
  std::vector<EigenTableRow> eigenvalues;
  bool clusters_merged = false;

  bool controllable() const { return verdict == Verdict::kControllable; }
  /// Certificate from condition (ii) if present, else from condition (i).
  std::optional<Certificate> certificate() const;
};

ConditionOutcome check_condition_i(const SystemPair& sys, const Tolerances& tol = {});
ConditionOutcome check_condition_ii(const SystemPair& sys, const Tolerances& tol = {});
SparsityOutcome check_condition_iii(const SystemPair& sys, SparsityLevel s,
                                    const Tolerances& tol = {});

/// Conditions (i), (ii) and (iii): nonnegative s-sparse controllability.
ControllabilityReport check_nonneg_sparse(const SystemPair& sys, SparsityLevel s,
                                          const Tolerances& tol = {});
/// Conditions (i) and (ii): nonnegative controllability.
ControllabilityReport check_nonneg(const SystemPair& sys, const Tolerances& tol = {});
/// Conditions (i) and (iii): s-sparse controllability with signed inputs.
ControllabilityReport check_sparse(const SystemPair& sys, SparsityLevel s,
                                   const Tolerances& tol = {});

/// Smallest s making the system nonnegative s-sparse controllable, or
/// nullopt when it is not nonnegative controllable at all. Throws
/// NoFeasibleSparsityError when N - rank(A) > m.
std::optional<int> min_sparsity(const SystemPair& sys, const Tolerances& tol = {});

/// For a nonnegative controllable system, checks that s = max(1, m - 1)
/// already suffices. Vacuously true otherwise.
bool corollary_bound_check(const SystemPair& sys, const Tolerances& tol = {});

struct CertificateCheck {
  bool valid = false;
  double residual_eig = 0.0;
  double residual_bound = 0.0;
  double max_zb = 0.0;
  std::vector<std::string> failures;
};

/// Re-evaluates a certificate against (A, B) after normalizing z.
CertificateCheck verify_certificate(const SystemPair& sys, const Certificate& cert,
                                    const Tolerances& tol = {});

/// (A, B Phi) for a square m x m basis Phi.
SystemPair apply_input_basis(const SystemPair& sys, const Mat& phi);

std::string to_string(CertificateKind kind);
std::string to_string(Verdict verdict);

}  // namespace nnsc

#endif  // NNSC_CONTROLLABILITY_HPP
