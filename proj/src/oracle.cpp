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

#include "nnsc/oracle.hpp"

#include <numeric>
#include <random>
#include <string>

#include "nnsc/cone_lp.hpp"
#include "nnsc/errors.hpp"

namespace nnsc {

namespace {

std::size_t binomial(int m, int s) {
  std::size_t r = 1;
  for (int i = 1; i <= s; ++i) {
    r = r * static_cast<std::size_t>(m - s + i) / static_cast<std::size_t>(i);
  }
  return r;
}

// count^k, saturating just above `cap`.
std::size_t bounded_power(std::size_t count, int k, std::size_t cap) {
  std::size_t r = 1;
  for (int i = 0; i < k; ++i) {
    r *= count;
    if (r > cap) return cap + 1;
  }
  return r;
}

std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

void check_sparsity(const SystemPair& sys, SparsityLevel s) {
  if (s.value() > sys.input_dim()) {
    throw InputError("sparsity s = " + std::to_string(s.value()) + " exceeds m = " +
                     std::to_string(sys.input_dim()));
  }
}

void check_sequence_guard(std::size_t supports, int horizon) {
  if (bounded_power(supports, horizon, kMaxSequences) > kMaxSequences) {
    throw InputError("oracle: " + std::to_string(supports) + "^" + std::to_string(horizon) +
                     " support sequences exceed the limit of " + std::to_string(kMaxSequences) +
                     "; lower the horizon or the sparsity level");
  }
}

}  // namespace

void OracleConfig::validate() const {
  if (k_max < 1) throw InputError("oracle: k_max must be >= 1");
  if (n_directions < 1) throw InputError("oracle: n_directions must be >= 1");
}

std::vector<Support> enumerate_supports(int m, int s) {
  if (s < 1 || s > m) {
    throw InputError("enumerate_supports: need 1 <= s <= m, got s = " + std::to_string(s) +
                     ", m = " + std::to_string(m));
  }
  if (binomial(m, s) > kMaxSupports) {
    throw InputError("enumerate_supports: C(" + std::to_string(m) + ", " + std::to_string(s) +
                     ") exceeds the limit of " + std::to_string(kMaxSupports));
  }
  std::vector<Support> out;
  Support cur(static_cast<std::size_t>(s));
  std::iota(cur.begin(), cur.end(), 0);
  for (;;) {
    out.push_back(cur);
    int i = s - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == m - s + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < s; ++j) {
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

ReachabilityResult reachable_membership(const SystemPair& sys, SparsityLevel s, int horizon,
                                        const Vec& x, const Tolerances& tol) {
  if (horizon < 1) throw InputError("reachable_membership: horizon K must be >= 1");
  if (x.size() != sys.state_dim()) {
    throw InputError("reachable_membership: target has length " + std::to_string(x.size()) +
                     ", expected " + std::to_string(sys.state_dim()));
  }
  check_sparsity(sys, s);
  const std::vector<Support> supports = enumerate_supports(sys.input_dim(), s.value());
  check_sequence_guard(supports.size(), horizon);

  const Eigen::Index n = sys.state_dim();
  const Eigen::Index m = sys.input_dim();
  const int sv = s.value();
  // gains[j] = A^j B
  std::vector<Mat> gains;
  gains.push_back(sys.b());
  for (int j = 1; j < horizon; ++j) gains.push_back(sys.a() * gains.back());

  ReachabilityResult result;

  // Every sparse cone sits inside the unrestricted one.
  Mat full(n, m * horizon);
  for (int k = 0; k < horizon; ++k) {
    full.middleCols(k * m, m) = gains[static_cast<std::size_t>(horizon - 1 - k)];
  }
  ++result.lp_count;
  if (!feasible_nonneg_solution(full, x, tol).member) return result;

  std::vector<std::size_t> idx(static_cast<std::size_t>(horizon), 0);
  Mat gen(n, static_cast<Eigen::Index>(sv) * horizon);
  for (;;) {
    for (int k = 0; k < horizon; ++k) {
      const Support& sup = supports[idx[static_cast<std::size_t>(k)]];
      const Mat& g = gains[static_cast<std::size_t>(horizon - 1 - k)];
      for (int j = 0; j < sv; ++j) {
        gen.col(k * sv + j) = g.col(sup[static_cast<std::size_t>(j)]);
      }
    }
    ++result.lp_count;
    const ConeMembershipResult mem = feasible_nonneg_solution(gen, x, tol);
    if (mem.member) {
      ReachWitness w;
      for (int k = 0; k < horizon; ++k) {
        const Support& sup = supports[idx[static_cast<std::size_t>(k)]];
        Vec u = Vec::Zero(m);
        for (int j = 0; j < sv; ++j) {
          u(sup[static_cast<std::size_t>(j)]) = (*mem.coefficients)(k * sv + j);
        }
        w.supports.push_back(sup);
        w.inputs.push_back(std::move(u));
      }
      result.witness = std::move(w);
      return result;
    }
    int pos = horizon - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 == supports.size()) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
  }
  return result;
}

std::vector<Vec> probe_directions(int state_dim, const OracleConfig& cfg) {
  std::vector<Vec> probes;
  for (int p = 0; p < cfg.n_directions; ++p) {
    auto rng = stream_for(cfg.seed, static_cast<std::uint64_t>(p));
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec v(state_dim);
    do {
      for (int i = 0; i < state_dim; ++i) v(i) = normal(rng);
    } while (v.norm() == 0.0);
    probes.push_back(v / v.norm());
  }
  if (cfg.include_axes) {
    for (int i = 0; i < state_dim; ++i) {
      probes.push_back(Vec::Unit(state_dim, i));
      probes.push_back(-Vec::Unit(state_dim, i));
    }
  }
  return probes;
}

OracleVerdict coverage_probe(const SystemPair& sys, SparsityLevel s, const OracleConfig& cfg,
                             const Tolerances& tol) {
  cfg.validate();
  check_sparsity(sys, s);
  check_sequence_guard(enumerate_supports(sys.input_dim(), s.value()).size(), cfg.k_max);

  const std::vector<Vec> probes = probe_directions(sys.state_dim(), cfg);
  OracleVerdict verdict;
  verdict.probe_count = static_cast<int>(probes.size());
  std::vector<std::size_t> alive(probes.size());
  std::iota(alive.begin(), alive.end(), 0);

  // Reachable cones only grow with K (zero inputs are admissible), so a
  // covered probe never needs re-testing.
  for (int k = 1; k <= cfg.k_max && !alive.empty(); ++k) {
    verdict.k_used = k;
    std::vector<std::size_t> still;
    for (std::size_t p : alive) {
      const ReachabilityResult r = reachable_membership(sys, s, k, probes[p], tol);
      verdict.lp_count += r.lp_count;
      if (!r.witness) still.push_back(p);
    }
    alive = std::move(still);
    if (alive.empty()) {
      verdict.covered = true;
      verdict.covered_at = k;
    }
  }
  for (std::size_t p : alive) verdict.uncovered_directions.push_back(probes[p]);
  return verdict;
}

Vec random_rollout(const SystemPair& sys, SparsityLevel s, int horizon, std::uint64_t seed,
                   double input_scale) {
  if (horizon < 1) throw InputError("random_rollout: horizon K must be >= 1");
  check_sparsity(sys, s);
  const int m = sys.input_dim();
  auto rng = stream_for(seed, 0);
  std::uniform_real_distribution<double> magnitude(0.0, 1.0);
  std::vector<int> order(static_cast<std::size_t>(m));
  Vec x = Vec::Zero(sys.state_dim());
  for (int k = 0; k < horizon; ++k) {
    std::iota(order.begin(), order.end(), 0);
    Vec u = Vec::Zero(m);
    for (int j = 0; j < s.value(); ++j) {
      std::uniform_int_distribution<int> pick(j, m - 1);
      std::swap(order[static_cast<std::size_t>(j)],
                order[static_cast<std::size_t>(pick(rng))]);
      u(order[static_cast<std::size_t>(j)]) = input_scale * magnitude(rng);
    }
    x = sys.a() * x + sys.b() * u;
  }
  return x;
}

}  // namespace nnsc
