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

#include "nnsc/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "nnsc/errors.hpp"

namespace nnsc {

namespace {

struct KernelChain {
  std::vector<Mat> bases;  // bases[k] spans ker(A^k), k = 0..n
  std::vector<int> dims;   // dims[k] for k = 0..n+1
};

// ker(A^k) = { x : A x in ker(A^{k-1}) }, so each step only needs A itself;
// no powers are formed and every rank decision is judged against ||A||.
KernelChain kernel_chain(const Mat& a, const Tolerances& tol) {
  const Eigen::Index n = a.rows();
  const double a_norm = norm2(a);
  KernelChain chain;
  chain.bases.push_back(Mat(n, 0));
  chain.dims.push_back(0);
  for (int k = 1; k <= n + 1; ++k) {
    const Mat& prev = chain.bases.back();
    const Mat projected = a - prev * (prev.transpose() * a);
    Mat next = null_space_basis_with_reference(projected, a_norm, tol);
    const int d = static_cast<int>(next.cols());
    if (d < chain.dims.back()) {
      throw NumericError("zero_structure: rank sequence increases at k = " + std::to_string(k));
    }
    chain.dims.push_back(d);
    if (d == chain.dims[chain.dims.size() - 2]) return chain;
    chain.bases.push_back(std::move(next));
  }
  throw NumericError("zero_structure: kernel chain failed to stabilize");
}

ZeroStructure structure_from(const KernelChain& chain, int state_dim) {
  ZeroStructure zs;
  zs.state_dim = state_dim;
  zs.n = static_cast<int>(chain.bases.size()) - 1;
  for (int d : chain.dims) zs.rank_sequence.push_back(state_dim - d);
  const auto& b = zs.rank_sequence;
  zs.q = b[static_cast<std::size_t>(zs.n)];
  zs.rank_a = b[1];
  for (int i = 1; i <= zs.n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const int count = (b[iu - 1] - b[iu]) - (b[iu] - b[iu + 1]);
    if (count < 0) {
      throw NumericError("zero_structure: rank differences increase at k = " + std::to_string(i));
    }
    zs.blocks_of_size.push_back(count);
    zs.tail_counts.push_back(b[iu - 1] - b[iu]);
  }
  return zs;
}

double rel(double num, double den) { return den > 0.0 ? num / den : num; }

}  // namespace

ZeroStructure zero_structure(const Mat& a, const Tolerances& tol) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw InputError("zero_structure: matrix must be square and nonempty");
  }
  require_finite(a, "zero_structure");
  return structure_from(kernel_chain(a, tol), static_cast<int>(a.rows()));
}

ChainDecomposition build_decomposition(const Mat& a, const Tolerances& tol) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw InputError("build_decomposition: matrix must be square and nonempty");
  }
  require_finite(a, "build_decomposition");
  const Eigen::Index dim = a.rows();
  const KernelChain chain = kernel_chain(a, tol);
  ChainDecomposition dec;
  dec.structure = structure_from(chain, static_cast<int>(dim));
  const ZeroStructure& zs = dec.structure;

  // range(A^n) = ker((A^T)^n)^perp.
  const KernelChain left = kernel_chain(Mat(a.transpose()), tol);
  const Mat& left_kernel = left.bases[std::min(left.bases.size() - 1,
                                               static_cast<std::size_t>(zs.n))];
  if (left_kernel.cols() != dim - zs.q) {
    throw NumericError("build_decomposition: ker((A^T)^n) has dimension " +
                       std::to_string(left_kernel.cols()) + ", expected " +
                       std::to_string(dim - zs.q));
  }
  const Mat range_part = orthogonal_complement(left_kernel);

  // Descending completion: at level k pick tops in ker(A^k) independent of
  // ker(A^{k-1}) plus the level-k images of the longer chains.
  struct Chain {
    Vec top;
    int length;
  };
  std::vector<Chain> chains;
  for (int k = zs.n; k >= 1; --k) {
    const auto ku = static_cast<std::size_t>(k);
    const int wanted = zs.blocks_of_size[ku - 1];
    if (wanted == 0) continue;
    const Mat& kernel_k = chain.bases[ku];
    Mat spanned(dim, chain.bases[ku - 1].cols() + static_cast<Eigen::Index>(chains.size()));
    spanned.leftCols(chain.bases[ku - 1].cols()) = chain.bases[ku - 1];
    Eigen::Index col = chain.bases[ku - 1].cols();
    for (const Chain& c : chains) spanned.col(col++) = mat_pow(a, c.length - k) * c.top;
    const Mat w = range_basis(spanned, tol);
    const Mat residual = kernel_k - w * (w.transpose() * kernel_k);
    const int available = rank_with_reference(residual, 1.0, tol);
    if (available != wanted) {
      throw NumericError("build_decomposition: chain completion at level " + std::to_string(k) +
                         " found " + std::to_string(available) + " new directions, expected " +
                         std::to_string(wanted));
    }
    Eigen::JacobiSVD<Mat> svd(residual, Eigen::ComputeThinU);
    for (int t = 0; t < wanted; ++t) chains.push_back({svd.matrixU().col(t), k});
  }

  dec.basis = Mat(dim, dim);
  dec.basis.leftCols(zs.q) = range_part;
  std::vector<Eigen::Index> offsets;
  Eigen::Index col = zs.q;
  for (const Chain& c : chains) {
    offsets.push_back(col);
    for (int p = c.length - 1; p >= 0; --p) dec.basis.col(col++) = mat_pow(a, p) * c.top;
  }
  if (col != dim) {
    throw NumericError("build_decomposition: basis has " + std::to_string(col) +
                       " columns, expected " + std::to_string(dim));
  }
  Eigen::FullPivLU<Mat> lu(dec.basis);
  if (!lu.isInvertible()) throw NumericError("build_decomposition: chain basis is singular");
  dec.p = lu.inverse();
  dec.p0 = dec.p.topRows(zs.q);
  dec.j = dec.p0 * a * range_part;

  for (int i = 1; i <= zs.n; ++i) {
    Mat pi = Mat::Zero(dim, dim);
    std::vector<int> rows;
    for (std::size_t c = 0; c < chains.size(); ++c) {
      if (chains[c].length < i) continue;
      const Eigen::Index row = offsets[c] + chains[c].length - i;
      pi.row(row) = dec.p.row(row);
      rows.push_back(static_cast<int>(row));
    }
    dec.pi.push_back(std::move(pi));
    dec.pi_rows.push_back(std::move(rows));
  }
  return dec;
}

bool DecompositionReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
}

const PropertyCheck* DecompositionReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

DecompositionReport verify_decomposition(const Mat& a, const ChainDecomposition& dec,
                                         const Tolerances& tol) {
  DecompositionReport report;
  auto add = [&](std::string name, bool passed, double residual, double bound) {
    report.checks.push_back({std::move(name), passed, residual, bound});
  };
  const Eigen::Index dim = a.rows();
  const Eigen::Index q = dec.p0.rows();
  const int n = static_cast<int>(dec.pi.size());
  const bool shapes_ok =
      a.cols() == dim && dec.p.rows() == dim && dec.p.cols() == dim && dec.p0.cols() == dim &&
      dec.j.rows() == q && dec.j.cols() == q &&
      std::all_of(dec.pi.begin(), dec.pi.end(),
                  [&](const Mat& m) { return m.rows() == dim && m.cols() == dim; });
  add("shapes", shapes_ok, 0.0, 0.0);
  if (!shapes_ok) return report;

  const double bound = tol.ineq_tol;
  const double a_norm = norm2(a);
  const int rank_a = rank(a, tol);

  Mat sum = Mat::Zero(dim, dim);
  sum.topRows(q) = dec.p0;
  for (const Mat& pi : dec.pi) sum += pi;
  const double sum_res = rel((dec.p - sum).norm(), dec.p.norm());
  add("sum_identity", sum_res <= bound, sum_res, bound);

  add("p_invertible", rank(dec.p, tol) == dim, 0.0, 0.0);
  add("c1_rank_p0", rank(dec.p0, tol) == q, 0.0, 0.0);
  add("c1_j_nonsingular", rank(dec.j, tol) == q, 0.0, 0.0);

  const double j_norm = norm2(dec.j);
  for (int k = 0; k <= n + 1; ++k) {
    double res = 0.0;
    if (q > 0) {
      const double scale =
          dec.p0.norm() * std::max({1.0, std::pow(a_norm, k), std::pow(j_norm, k)});
      res = rel((dec.p0 * mat_pow(a, k) - mat_pow(dec.j, k) * dec.p0).norm(), scale);
    }
    add("c1_intertwining_k" + std::to_string(k), res <= bound, res, bound);
  }

  for (int i = 1; i <= n; ++i) {
    const Mat& pi = dec.pi[static_cast<std::size_t>(i - 1)];
    const double pi_norm = pi.norm();
    const Mat lifted = pi * mat_pow(a, i - 1);
    const int r_pi = rank(pi, tol);
    const int r_lifted =
        rank_with_reference(lifted, pi_norm * std::pow(std::max(1.0, a_norm), i - 1), tol);
    add("c2_rank_i" + std::to_string(i), r_pi == r_lifted && r_pi <= dim - rank_a,
        static_cast<double>(r_pi), static_cast<double>(dim - rank_a));
    for (int k = i; k <= n + 1; ++k) {
      const double res =
          rel((pi * mat_pow(a, k)).norm(), pi_norm * std::max(1.0, std::pow(a_norm, k)));
      add("c2_annihilation_i" + std::to_string(i) + "_k" + std::to_string(k), res <= bound, res,
          bound);
    }
  }
  return report;
}

}  // namespace nnsc
