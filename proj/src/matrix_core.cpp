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

#include "nnsc/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nnsc/errors.hpp"

namespace nnsc {

namespace {

template <typename Derived>
double sigma_threshold(const Eigen::MatrixBase<Derived>& singular_values, double reference_norm,
                       const Tolerances& tol) {
  const double sigma_max = singular_values.size() > 0 ? singular_values(0) : 0.0;
  return tol.rank_rtol * std::max(sigma_max, reference_norm);
}

template <typename MatrixType>
int rank_impl(const MatrixType& m, double reference_norm, const Tolerances& tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<MatrixType> svd(m);
  const auto& sv = svd.singularValues();
  const double thr = sigma_threshold(sv, reference_norm, tol);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > thr) ++r;
  }
  return r;
}

template <typename MatrixType>
MatrixType null_impl(const MatrixType& m, double reference_norm, const Tolerances& tol) {
  const Eigen::Index n = m.cols();
  if (n == 0) return MatrixType(0, 0);
  if (m.rows() == 0) return MatrixType::Identity(n, n);
  Eigen::JacobiSVD<MatrixType> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thr = sigma_threshold(sv, reference_norm, tol);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > thr) ++r;
  }
  return svd.matrixV().rightCols(n - r);
}

// Null basis, or the smallest right singular vector when the numerical
// kernel is empty. Used at cluster centres where a near-null direction is
// known to exist.
CMat near_null_basis(const CMat& m, const Tolerances& tol) {
  CMat basis = null_impl(m, 0.0, tol);
  if (basis.cols() > 0) return basis;
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(1);
}

CMat shifted_transpose(const Mat& a, Complex lambda) {
  const Eigen::Index n = a.rows();
  return a.transpose().cast<Complex>() - lambda * CMat::Identity(n, n);
}

double max_overlap(const CMat& p, const CMat& q) {
  if (p.cols() == 0 || q.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(p.adjoint() * q);
  return svd.singularValues()(0);
}

Complex mean_of(const std::vector<Complex>& vals, const std::vector<int>& members) {
  Complex sum{0.0, 0.0};
  for (int i : members) sum += vals[static_cast<std::size_t>(i)];
  return sum / static_cast<double>(members.size());
}

}  // namespace

void Tolerances::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
      throw InputError(std::string("tolerance ") + name + " must lie in (0, 1), got " +
                       std::to_string(v));
    }
  };
  check(rank_rtol, "rank_rtol");
  check(eig_imag_tol, "eig_imag_tol");
  check(ineq_tol, "ineq_tol");
}

void require_finite(const Mat& m, std::string_view what) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!std::isfinite(m(i, j))) {
        throw InputError(std::string(what) + ": non-finite entry at row " + std::to_string(i + 1) +
                         ", column " + std::to_string(j + 1));
      }
    }
  }
}

int rank(const Mat& m, const Tolerances& tol) {
  require_finite(m, "rank");
  return rank_impl(m, 0.0, tol);
}

int rank(const CMat& m, const Tolerances& tol) {
  if (!m.allFinite()) throw InputError("rank: non-finite entry");
  return rank_impl(m, 0.0, tol);
}

int rank_with_reference(const Mat& m, double reference_norm, const Tolerances& tol) {
  require_finite(m, "rank");
  return rank_impl(m, reference_norm, tol);
}

Mat null_space_basis(const Mat& m, const Tolerances& tol) {
  require_finite(m, "null_space_basis");
  return null_impl(m, 0.0, tol);
}

CMat null_space_basis(const CMat& m, const Tolerances& tol) {
  if (!m.allFinite()) throw InputError("null_space_basis: non-finite entry");
  return null_impl(m, 0.0, tol);
}

Mat null_space_basis_with_reference(const Mat& m, double reference_norm, const Tolerances& tol) {
  require_finite(m, "null_space_basis");
  return null_impl(m, reference_norm, tol);
}

Mat range_basis(const Mat& m, const Tolerances& tol) {
  require_finite(m, "range_basis");
  if (m.rows() == 0 || m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const int r = rank_impl(m, 0.0, tol);
  return svd.matrixU().leftCols(r);
}

Mat orthogonal_complement(const Mat& q) {
  const Eigen::Index n = q.rows();
  if (q.cols() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(q, Eigen::ComputeFullU);
  return svd.matrixU().rightCols(n - q.cols());
}

Mat mat_pow(const Mat& m, int k) {
  if (m.rows() != m.cols()) throw InputError("mat_pow: matrix must be square");
  if (k < 0) throw InputError("mat_pow: exponent must be nonnegative");
  Mat result = Mat::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) result = result * m;
  return result;
}

double norm2(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

bool is_real_nonnegative(Complex lambda, const Tolerances& tol) {
  return std::abs(lambda.imag()) <= tol.eig_imag_tol && lambda.real() >= -tol.eig_imag_tol;
}

double eig_residual_bound(const Mat& a, const Tolerances& tol) {
  return 100.0 * tol.eig_imag_tol * (1.0 + norm2(a));
}

LeftEigenSystem left_eigensystem(const Mat& a, const Tolerances& tol) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw InputError("left_eigensystem: matrix must be square and nonempty");
  }
  require_finite(a, "left_eigensystem");
  tol.validate();

  Eigen::EigenSolver<Mat> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("left_eigensystem: eigenvalue iteration did not converge");
  }
  const Eigen::Index n = a.rows();
  std::vector<Complex> vals(static_cast<std::size_t>(n));
  double rho = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    vals[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    rho = std::max(rho, std::abs(solver.eigenvalues()(i)));
  }

  // Pass 1: single-linkage clustering at radius eig_imag_tol * (1 + rho).
  const double radius = tol.eig_imag_tol * (1.0 + rho);
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(vals[static_cast<std::size_t>(i)] - vals[static_cast<std::size_t>(j)]) <=
          radius) {
        parent[static_cast<std::size_t>(find(j))] = find(i);
      }
    }
  }
  std::vector<std::vector<int>> clusters;
  {
    std::vector<int> slot(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
      const int root = find(i);
      if (slot[static_cast<std::size_t>(root)] < 0) {
        slot[static_cast<std::size_t>(root)] = static_cast<int>(clusters.size());
        clusters.emplace_back();
      }
      clusters[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])].push_back(i);
    }
  }
  std::vector<bool> merged(clusters.size(), false);
  for (std::size_t c = 0; c < clusters.size(); ++c) merged[c] = clusters[c].size() > 1 &&
      std::any_of(clusters[c].begin(), clusters[c].end(), [&](int i) {
        return vals[static_cast<std::size_t>(i)] != vals[static_cast<std::size_t>(clusters[c][0])];
      });

  // Pass 2: a defective eigenvalue splits by roughly eps^(1/k); such fragments
  // lie within a looser radius and share (nearly) the same left eigenvector.
  const double loose_radius = std::sqrt(tol.eig_imag_tol) * (1.0 + rho);
  const double overlap_floor = 1.0 - std::sqrt(tol.eig_imag_tol);
  for (;;) {
    std::vector<Complex> centres;
    std::vector<CMat> bases;
    for (const auto& c : clusters) {
      centres.push_back(mean_of(vals, c));
      bases.push_back(near_null_basis(shifted_transpose(a, centres.back()), tol));
    }
    double best = loose_radius;
    int best_i = -1;
    int best_j = -1;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double d = std::abs(centres[i] - centres[j]);
        if (d <= best && max_overlap(bases[i], bases[j]) >= overlap_floor) {
          best = d;
          best_i = static_cast<int>(i);
          best_j = static_cast<int>(j);
        }
      }
    }
    if (best_i < 0) break;
    auto& target = clusters[static_cast<std::size_t>(best_i)];
    const auto& source = clusters[static_cast<std::size_t>(best_j)];
    target.insert(target.end(), source.begin(), source.end());
    merged[static_cast<std::size_t>(best_i)] = true;
    clusters.erase(clusters.begin() + best_j);
    merged.erase(merged.begin() + best_j);
  }

  LeftEigenSystem out;
  out.spectral_radius = rho;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    EigenGroup g;
    Complex lambda = mean_of(vals, clusters[c]);
    g.algebraic_multiplicity = static_cast<int>(clusters[c].size());
    g.merged = merged[c];
    if (std::abs(lambda.imag()) <= tol.eig_imag_tol) {
      lambda = Complex(lambda.real(), 0.0);
      g.is_real = true;
      const Mat shifted = a.transpose() - lambda.real() * Mat::Identity(n, n);
      Mat basis = null_impl(shifted, 0.0, tol);
      if (basis.cols() == 0) {
        Eigen::JacobiSVD<Mat> svd(shifted, Eigen::ComputeFullV);
        basis = svd.matrixV().rightCols(1);
      }
      g.left_basis = basis.cast<Complex>();
    } else {
      g.left_basis = near_null_basis(shifted_transpose(a, lambda), tol);
    }
    g.lambda = lambda;
    g.geometric_multiplicity = static_cast<int>(g.left_basis.cols());
    const CMat ac = a.cast<Complex>();
    for (Eigen::Index k = 0; k < g.left_basis.cols(); ++k) {
      const CVec z = g.left_basis.col(k);
      const double res = (z.transpose() * ac - lambda * z.transpose()).norm() / z.norm();
      g.residual = std::max(g.residual, res);
    }
    out.any_merged = out.any_merged || g.merged;
    out.groups.push_back(std::move(g));
  }
  std::sort(out.groups.begin(), out.groups.end(), [](const EigenGroup& x, const EigenGroup& y) {
    if (x.lambda.real() != y.lambda.real()) return x.lambda.real() < y.lambda.real();
    return x.lambda.imag() < y.lambda.imag();
  });
  return out;
}

int pbh_rank(const Mat& a, const Mat& b, Complex lambda, const Tolerances& tol) {
  if (a.rows() != a.cols()) throw InputError("pbh_rank: A must be square");
  if (b.rows() != a.rows()) {
    throw InputError("pbh_rank: B has " + std::to_string(b.rows()) + " rows, expected " +
                     std::to_string(a.rows()));
  }
  require_finite(a, "pbh_rank A");
  require_finite(b, "pbh_rank B");
  const Eigen::Index n = a.rows();
  if (lambda.imag() == 0.0) {
    Mat m(n, n + b.cols());
    m << lambda.real() * Mat::Identity(n, n) - a, b;
    return rank_impl(m, 0.0, tol);
  }
  CMat m(n, n + b.cols());
  m << lambda * CMat::Identity(n, n) - a.cast<Complex>(), b.cast<Complex>();
  return rank_impl(m, 0.0, tol);
}

}  // namespace nnsc
