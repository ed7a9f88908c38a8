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

#include "nnsc/generate.hpp"

#include <cmath>
#include <random>

#include "nnsc/errors.hpp"

namespace nnsc {

namespace {

Mat random_integer_matrix(Eigen::Index rows, Eigen::Index cols, int bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
  }
  return m;
}

Mat random_nonzero_columns(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  Mat c(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    do {
      c.col(j) = random_integer_matrix(rows, 1, 3, rng);
    } while (c.col(j).isZero());
  }
  return c;
}

// [C | -C], plus one extra column when m is odd.
Mat paired_inputs(int n, int m, std::mt19937_64& rng) {
  const int half = m / 2;
  const Mat c = random_nonzero_columns(n, half, rng);
  Mat b(n, m);
  b.leftCols(half) = c;
  b.middleCols(half, half) = -c;
  if (m % 2 == 1) b.col(m - 1) = random_nonzero_columns(n, 1, rng);
  return b;
}

Mat gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
  }
  return m;
}

SystemFile planted_uncontrollable(int n, int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> lambda_step(0, 4);
  std::uniform_real_distribution<double> slack(0.0, 1.0);
  const double lambda = 0.5 * lambda_step(rng);

  Vec z;
  do {
    z = gaussian_matrix(n, 1, rng);
  } while (z.norm() < 1e-3);
  z /= z.norm();

  // Negative definite symmetric part keeps every other eigenvalue in the
  // open left half plane, so lambda is the only real nonnegative one.
  const Mat g = gaussian_matrix(n, n, rng);
  const Mat k = gaussian_matrix(n, n, rng);
  const Mat w = -(g * g.transpose() + Mat::Identity(n, n)) + 0.5 * (k - k.transpose());
  const Mat proj = z * z.transpose();
  const Mat a_t = lambda * proj + w * (Mat::Identity(n, n) - proj);

  Mat b(n, m);
  for (int j = 0; j < m; ++j) {
    const Vec r = gaussian_matrix(n, 1, rng);
    b.col(j) = r - (z.dot(r) + slack(rng)) * z;
  }
  SystemFile f;
  f.a = a_t.transpose();
  f.b = b;
  f.planted = PlantedTruth{lambda, z};
  return f;
}

SystemFile planted_rank_deficient(int n, int m, int d, std::mt19937_64& rng) {
  const int r = n - d;
  Mat a = Mat::Zero(n, n);
  if (r > 0) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 1000) throw NumericError("gen: could not draw a rank-" + std::to_string(r) +
                                             " factorization");
      a = random_integer_matrix(n, r, 2, rng) * random_integer_matrix(r, n, 2, rng);
      if (rank(a) == r) break;
    }
  }
  SystemFile f;
  f.a = a;
  f.b = paired_inputs(n, m, rng);
  return f;
}

SystemFile random_nonsingular(int n, int m, std::mt19937_64& rng) {
  Mat a;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 1000) throw NumericError("gen: could not draw a nonsingular matrix");
    a = random_integer_matrix(n, n, 3, rng);
    if (std::abs(a.determinant()) >= 0.5) break;
  }
  SystemFile f;
  f.a = a;
  f.b = paired_inputs(n, m, rng);
  return f;
}

}  // namespace

GeneratorKind parse_generator_kind(std::string_view name) {
  if (name == "planted_uncontrollable_ii") return GeneratorKind::kPlantedUncontrollableII;
  if (name == "planted_rank_deficient") return GeneratorKind::kPlantedRankDeficient;
  if (name == "random_nonsingular_paired") return GeneratorKind::kRandomNonsingularPaired;
  throw InputError("unknown generator kind \"" + std::string(name) +
                   "\" (expected planted_uncontrollable_ii, planted_rank_deficient or "
                   "random_nonsingular_paired)");
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kPlantedUncontrollableII:
      return "planted_uncontrollable_ii";
    case GeneratorKind::kPlantedRankDeficient:
      return "planted_rank_deficient";
    case GeneratorKind::kRandomNonsingularPaired:
      return "random_nonsingular_paired";
  }
  return "unknown";
}

SystemFile generate_system(GeneratorKind kind, int state_dim, int input_dim, std::uint64_t seed,
                           int deficiency) {
  if (state_dim < 1 || input_dim < 1) {
    throw InputError("gen: need N >= 1 and m >= 1, got N = " + std::to_string(state_dim) +
                     ", m = " + std::to_string(input_dim));
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(kind)};
  std::mt19937_64 rng(seq);
  SystemFile f;
  std::string name = to_string(kind) + "_n" + std::to_string(state_dim) + "_m" +
                     std::to_string(input_dim);
  switch (kind) {
    case GeneratorKind::kPlantedUncontrollableII:
      f = planted_uncontrollable(state_dim, input_dim, rng);
      break;
    case GeneratorKind::kPlantedRankDeficient:
      if (deficiency < 1 || deficiency > state_dim) {
        throw InputError("gen: rank deficiency d must satisfy 1 <= d <= N, got " +
                         std::to_string(deficiency));
      }
      f = planted_rank_deficient(state_dim, input_dim, deficiency, rng);
      name += "_d" + std::to_string(deficiency);
      break;
    case GeneratorKind::kRandomNonsingularPaired:
      f = random_nonsingular(state_dim, input_dim, rng);
      break;
  }
  f.name = name + "_seed" + std::to_string(seed);
  return f;
}

}  // namespace nnsc
