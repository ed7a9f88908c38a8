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

#ifndef NNSC_CONE_LP_HPP
#define NNSC_CONE_LP_HPP

#include <optional>

#include "nnsc/matrix_core.hpp"

namespace nnsc {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Vec x;               ///< primal solution (basic), valid when feasible
  double objective = 0.0;
  double infeasibility = 0.0;  ///< phase-I optimum (sum of artificials)
  int iterations = 0;
};

/**
 * Dense two-phase simplex for  min c^T x  s.t.  A x = b, x >= 0.
 *
 * Bland's smallest-index rule is used for both entering and leaving
 * variables, so the method terminates on degenerate problems. An iteration
 * guard turns pathological numerical cycling into a NumericError.
 */
LpSolution solve_standard_form(const Mat& a, const Vec& b, const Vec& c);

struct ConeMembershipResult {
  bool member = false;
  /// Nonnegative coefficients u with M u = x (basic feasible solution); set iff member.
  std::optional<Vec> coefficients;
  /// ||M u - x|| for the best basic solution found.
  double residual = 0.0;
};

/// Decides whether x lies in Span_+{columns of M}; returns a BFS when it does.
ConeMembershipResult feasible_nonneg_solution(const Mat& m, const Vec& x,
                                              const Tolerances& tol = {});

struct HomogeneousWitness {
  Vec rho;                    ///< nonzero, ||rho||_inf == 1
  double max_entry_norm = 1.0;
  double max_violation = 0.0;  ///< max_i (M rho)_i after normalization
};

/// A nonzero rho with M rho <= 0 if the cone {rho : M rho <= 0} is not {0}.
/// Solves max +-rho_i over the box [-1, 1]^g for each coordinate. Rows with
/// norm <= ineq_tol times the largest row norm are treated as zero.
std::optional<HomogeneousWitness> homogeneous_nonzero(const Mat& m, const Tolerances& tol = {});

/// Sparse nonnegative combination: alpha >= 0 with Z alpha = z and at most
/// rank(Z) nonzeros. Throws NotInConeError when z is not in cone(Z).
Vec sparsify_positive_combination(const Mat& z_gen, const Vec& z, const Tolerances& tol = {});

/// True iff cone(Z) equals the column space of Z.
bool is_positive_spanning_subspace(const Mat& z_gen, const Tolerances& tol = {});

/// Count of entries strictly above `threshold`.
int count_positive(const Vec& v, double threshold);

}  // namespace nnsc

#endif  // NNSC_CONE_LP_HPP
