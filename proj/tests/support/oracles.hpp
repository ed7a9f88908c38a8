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

#ifndef NNSC_TESTS_ORACLES_HPP
#define NNSC_TESTS_ORACLES_HPP

// Reference computations for the tests. None of these call into the library
// under test; they use exact integer arithmetic or plain enumeration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using IntMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

inline IntMat to_int(const Mat& m) {
  IntMat r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (v != std::round(v) || std::abs(v) > 1e15) {
        throw std::invalid_argument("oracle: matrix is not integer valued");
      }
      r(i, j) = static_cast<std::int64_t>(v);
    }
  }
  return r;
}

inline Mat to_double(const IntMat& m) { return m.cast<double>(); }

// Fraction-free Gaussian elimination; every intermediate value is a minor of
// the input, so 128-bit arithmetic is exact for the small matrices used here.
inline int exact_rank(const IntMat& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  std::vector<std::vector<__int128>> a(rows, std::vector<__int128>(cols));
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) a[i][j] = m(i, j);
  }
  __int128 prev = 1;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

inline int exact_rank(const Mat& m) { return exact_rank(to_int(m)); }

inline IntMat int_pow(const IntMat& m, int k) {
  IntMat r = IntMat::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

// b_k = rank(A^k) for k = 0..upto, exactly.
inline std::vector<int> exact_rank_sequence(const IntMat& a, int upto) {
  std::vector<int> b;
  for (int k = 0; k <= upto; ++k) b.push_back(exact_rank(int_pow(a, k)));
  return b;
}

inline Mat random_int_matrix(Eigen::Index rows, Eigen::Index cols, int bound,
                             std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-bound, bound);
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = d(rng);
  }
  return m;
}

inline Mat random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = d(rng);
  }
  return m;
}

// Integer matrix with determinant 1 and integer inverse: unit lower times
// unit upper triangular with entries in [-1, 1].
struct Unimodular {
  IntMat s;
  IntMat s_inv;
};

inline Unimodular random_unimodular(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-1, 1);
  IntMat l = IntMat::Identity(n, n);
  IntMat u = IntMat::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      l(i, j) = d(rng);
      u(j, i) = d(rng);
    }
  }
  // Triangular inverses by forward substitution.
  auto unit_lower_inverse = [n](const IntMat& t) {
    IntMat inv = IntMat::Identity(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        std::int64_t acc = 0;
        for (int k = j; k < i; ++k) acc += t(i, k) * inv(k, j);
        inv(i, j) = -acc;
      }
    }
    return inv;
  };
  const IntMat l_inv = unit_lower_inverse(l);
  const IntMat u_inv = unit_lower_inverse(u.transpose()).transpose();
  return {l * u, u_inv * l_inv};
}

// S * D * S^{-1} where D = diag(nonsingular block, nilpotent shift blocks).
struct PlantedJordan {
  IntMat a;
  std::vector<int> zero_blocks;  // sizes of the nilpotent shift blocks
  int nonsingular_dim = 0;
};

inline PlantedJordan planted_jordan(int nonsingular_dim, const std::vector<int>& zero_blocks,
                                    std::mt19937_64& rng) {
  int n = nonsingular_dim;
  for (int b : zero_blocks) n += b;
  IntMat d = IntMat::Zero(n, n);
  if (nonsingular_dim > 0) {
    // Upper triangular with nonzero diagonal: nonsingular by construction.
    std::uniform_int_distribution<int> diag(1, 3);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_int_distribution<int> off(-2, 2);
    for (int i = 0; i < nonsingular_dim; ++i) {
      d(i, i) = diag(rng) * (sign(rng) ? 1 : -1);
      for (int j = i + 1; j < nonsingular_dim; ++j) d(i, j) = off(rng);
    }
  }
  int offset = nonsingular_dim;
  for (int b : zero_blocks) {
    for (int i = 0; i + 1 < b; ++i) d(offset + i, offset + i + 1) = 1;
    offset += b;
  }
  const Unimodular u = random_unimodular(n, rng);
  return {u.s * d * u.s_inv, zero_blocks, nonsingular_dim};
}

// Carathéodory enumeration: x is in cone(M) iff it is a nonnegative
// combination of some linearly independent subset of the columns.
inline bool in_cone_by_enumeration(const Mat& m, const Vec& x, double tol) {
  const double scale = 1.0 + x.norm();
  if (x.norm() <= tol * scale) return true;
  const int cols = static_cast<int>(m.cols());
  const int max_size = static_cast<int>(std::min(m.rows(), m.cols()));
  for (int size = 1; size <= max_size; ++size) {
    std::vector<bool> pick(cols, false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
      Mat sub(m.rows(), size);
      int c = 0;
      for (int j = 0; j < cols; ++j) {
        if (pick[j]) sub.col(c++) = m.col(j);
      }
      Eigen::FullPivLU<Mat> lu(sub);
      if (lu.rank() < size) continue;
      const Vec coef = sub.colPivHouseholderQr().solve(x);
      if (coef.minCoeff() >= -tol && (sub * coef - x).norm() <= tol * scale) return true;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return false;
}

// Sign-definiteness of a single row vector w = z^T B: either w <= 0 or -w <= 0.
inline bool two_sided_sign_test(const Vec& w, double tol) {
  return w.size() == 0 || w.maxCoeff() <= tol || (-w).maxCoeff() <= tol;
}

}  // namespace oracle

#endif  // NNSC_TESTS_ORACLES_HPP
