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

#ifndef NNSC_JORDAN_HPP
#define NNSC_JORDAN_HPP

#include <string>
#include <vector>

#include "nnsc/matrix_core.hpp"

namespace nnsc {

/**
 * Jordan structure of the zero eigenvalue, read off the rank sequence
 * b_k = rank(A^k).
 *
 *   n          size of the largest zero block (0 when A is nonsingular)
 *   q          dimension of the part on which A is invertible (= b_n)
 *   blocks_of_size[i-1]  number of zero blocks of size exactly i, i = 1..n
 *   tail_counts[k-1]     number of zero blocks of size >= k,    k = 1..n
 *   rank_sequence        b_0 .. b_{n+1}
 */
struct ZeroStructure {
  int n = 0;
  int q = 0;
  std::vector<int> blocks_of_size;
  std::vector<int> tail_counts;
  std::vector<int> rank_sequence;
  int state_dim = 0;
  int rank_a = 0;
};

/// Throws NumericError (naming the offending k) if the computed rank
/// sequence is not a valid nilpotent rank profile.
ZeroStructure zero_structure(const Mat& a, const Tolerances& tol = {});

/**
 * An invertible P splitting A into a nonsingular part and its zero-eigenvalue
 * chains:
 *   P = [P0; 0] + sum_i Pi,   P0 A^k = J^k P0,   Pi A^k = 0 for k >= i,
 *   rank(Pi) = rank(Pi A^{i-1}) <= N - rank(A).
 */
struct ChainDecomposition {
  Mat p;                  ///< N x N invertible
  Mat j;                  ///< q x q nonsingular
  Mat p0;                 ///< q x N, the first q rows of P
  std::vector<Mat> pi;    ///< pi[i-1] is N x N, nonzero only on r_i rows
  std::vector<std::vector<int>> pi_rows;  ///< row indices of P carried by pi[i-1]
  Mat basis;              ///< P^{-1} = [range(A^n) | zero chains]
  ZeroStructure structure;
};

ChainDecomposition build_decomposition(const Mat& a, const Tolerances& tol = {});

struct PropertyCheck {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double bound = 0.0;
};

struct DecompositionReport {
  std::vector<PropertyCheck> checks;
  bool all_passed() const;
  const PropertyCheck* find(const std::string& name) const;
};

/// Re-checks the decomposition identities with relative residuals against
/// ineq_tol. Failures are reported, never thrown.
DecompositionReport verify_decomposition(const Mat& a, const ChainDecomposition& dec,
                                         const Tolerances& tol = {});

}  // namespace nnsc

#endif  // NNSC_JORDAN_HPP
