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

#ifndef NNSC_ORACLE_HPP
#define NNSC_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "nnsc/controllability.hpp"

namespace nnsc {

// Brute-force reachability evidence. Everything here works directly from
// x_K = sum_k A^{K-k} B u_k with s-sparse nonnegative u_k and shares no code
// with the eigenvector-based decision procedures.

struct OracleConfig {
  int k_max = 6;
  int n_directions = 64;
  std::uint64_t seed = 0;
  bool include_axes = true;

  void validate() const;
};

using Support = std::vector<int>;  ///< 0-based input indices, ascending

inline constexpr std::size_t kMaxSupports = 10'000;
inline constexpr std::size_t kMaxSequences = 100'000;

/// All size-s subsets of {0..m-1} in lexicographic order. Refuses (InputError)
/// when C(m, s) exceeds kMaxSupports.
std::vector<Support> enumerate_supports(int m, int s);

struct ReachWitness {
  std::vector<Support> supports;  ///< S_1 .. S_K
  std::vector<Vec> inputs;        ///< u_1 .. u_K, each of length m, >= 0
};

struct ReachabilityResult {
  std::optional<ReachWitness> witness;
  std::size_t lp_count = 0;
};

/// Searches every support sequence of length K for x in
/// Span_+[A^{K-1} B_{S_1}, ..., B_{S_K}]; returns the first hit.
ReachabilityResult reachable_membership(const SystemPair& sys, SparsityLevel s, int horizon,
                                        const Vec& x, const Tolerances& tol = {});

struct OracleVerdict {
  bool covered = false;
  int covered_at = 0;  ///< smallest K covering every probe; valid when covered
  std::vector<Vec> uncovered_directions;
  int k_used = 0;
  std::size_t lp_count = 0;
  int probe_count = 0;
};

/// The probe set: seeded random unit vectors, then +e_i, -e_i per axis.
std::vector<Vec> probe_directions(int state_dim, const OracleConfig& cfg);

/**
 * Tests every probe direction for reachability at horizons K = 1..k_max.
 * A covered verdict is positive evidence of controllability; an uncovered
 * verdict is inconclusive on its own.
 */
OracleVerdict coverage_probe(const SystemPair& sys, SparsityLevel s, const OracleConfig& cfg,
                             const Tolerances& tol = {});

/// x_K from zero initial state with K random inputs in Omega_{s+}:
/// uniformly random support of size s, entries uniform on [0, input_scale].
Vec random_rollout(const SystemPair& sys, SparsityLevel s, int horizon, std::uint64_t seed,
                   double input_scale = 1.0);

}  // namespace nnsc

#endif  // NNSC_ORACLE_HPP
