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

#include "nnsc/cone_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "nnsc/errors.hpp"

namespace nnsc {

namespace {

constexpr double kCostTol = 1e-11;
constexpr double kPivotTol = 1e-11;
constexpr double kRatioTieTol = 1e-12;

// Dense simplex tableau. Row i holds B^{-1}[A | I_art | b]; the last column
// is the right-hand side.
class Tableau {
 public:
  Tableau(const Mat& a, const Vec& b) : rows_(a.rows()), structural_(a.cols()) {
    const Eigen::Index total = structural_ + rows_;
    t_ = Mat::Zero(rows_, total + 1);
    basis_.resize(static_cast<std::size_t>(rows_));
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const double sign = b(i) < 0.0 ? -1.0 : 1.0;
      t_.row(i).head(structural_) = sign * a.row(i);
      t_(i, structural_ + i) = 1.0;
      t_(i, total) = sign * b(i);
      basis_[static_cast<std::size_t>(i)] = structural_ + i;
    }
    scale_ = std::max(1.0, a.cwiseAbs().maxCoeff());
  }

  Eigen::Index rows() const { return rows_; }
  Eigen::Index rhs_col() const { return t_.cols() - 1; }
  bool is_artificial(Eigen::Index j) const { return j >= structural_; }

  // Runs Bland-rule simplex minimizing cost^T x over the columns allowed by
  // `allow`. Returns false if the problem is unbounded.
  template <typename Allow>
  bool optimize(const Vec& cost, Allow allow, int& iterations) {
    const int guard = 50 * static_cast<int>(rows_ + t_.cols()) + 1000;
    for (int iter = 0;; ++iter) {
      if (iter > guard) {
        throw NumericError("simplex: iteration guard exceeded (possible numerical cycling)");
      }
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < rhs_col(); ++j) {
        if (!allow(j) || is_basic(j)) continue;
        double reduced = cost(j);
        for (Eigen::Index i = 0; i < rows_; ++i) {
          reduced -= cost(basis_[static_cast<std::size_t>(i)]) * t_(i, j);
        }
        if (reduced < -kCostTol * scale_) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;

      Eigen::Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const double piv = t_(i, entering);
        if (piv <= kPivotTol * scale_) continue;
        const double ratio = std::max(0.0, t_(i, rhs_col())) / piv;
        if (ratio < best_ratio - kRatioTieTol ||
            (std::abs(ratio - best_ratio) <= kRatioTieTol &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          best_ratio = std::min(ratio, best_ratio);
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, entering);
      ++iterations;
    }
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Pivot basic artificials out where possible; drop rows that are
  // redundant (no usable structural entry).
  void expel_artificials() {
    for (Eigen::Index i = 0; i < rows_;) {
      if (!is_artificial(basis_[static_cast<std::size_t>(i)])) {
        ++i;
        continue;
      }
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < structural_; ++j) {
        if (!is_basic(j) && std::abs(t_(i, j)) > kPivotTol * scale_) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col);
        ++i;
      } else {
        remove_row(i);
      }
    }
  }

  Vec structural_solution() const {
    Vec x = Vec::Zero(structural_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index j = basis_[static_cast<std::size_t>(i)];
      if (j < structural_) x(j) = std::max(0.0, t_(i, rhs_col()));
    }
    return x;
  }

  double artificial_sum() const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (is_artificial(basis_[static_cast<std::size_t>(i)])) s += std::abs(t_(i, rhs_col()));
    }
    return s;
  }

  Eigen::Index total_cols() const { return rhs_col(); }

 private:
  bool is_basic(Eigen::Index j) const {
    return std::find(basis_.begin(), basis_.end(), j) != basis_.end();
  }

  void remove_row(Eigen::Index r) {
    Mat shrunk(rows_ - 1, t_.cols());
    shrunk.topRows(r) = t_.topRows(r);
    shrunk.bottomRows(rows_ - 1 - r) = t_.bottomRows(rows_ - 1 - r);
    t_ = std::move(shrunk);
    basis_.erase(basis_.begin() + r);
    --rows_;
  }

  Eigen::Index rows_;
  Eigen::Index structural_;
  Mat t_;
  std::vector<Eigen::Index> basis_;
  double scale_ = 1.0;
};

}  // namespace

LpSolution solve_standard_form(const Mat& a, const Vec& b, const Vec& c) {
  if (b.size() != a.rows() || c.size() != a.cols()) {
    throw InputError("solve_standard_form: dimension mismatch");
  }
  require_finite(a, "solve_standard_form A");
  LpSolution out;
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) {
    out.x = Vec::Zero(n);
    if ((c.array() < 0.0).any()) {
      out.status = LpStatus::kUnbounded;
      return out;
    }
    out.status = LpStatus::kOptimal;
    return out;
  }

  Tableau tab(a, b);
  Vec phase1_cost = Vec::Zero(tab.total_cols());
  phase1_cost.tail(a.rows()).setOnes();
  tab.optimize(phase1_cost, [](Eigen::Index) { return true; }, out.iterations);
  out.infeasibility = tab.artificial_sum();
  out.x = tab.structural_solution();
  const double feas_tol = 1e-9 * (1.0 + b.cwiseAbs().maxCoeff());
  if (out.infeasibility > feas_tol) {
    out.status = LpStatus::kInfeasible;
    return out;
  }

  tab.expel_artificials();
  Vec phase2_cost = Vec::Zero(tab.total_cols());
  phase2_cost.head(n) = c;
  const bool bounded =
      tab.optimize(phase2_cost, [&](Eigen::Index j) { return !tab.is_artificial(j); },
                   out.iterations);
  out.x = tab.structural_solution();
  out.objective = c.dot(out.x);
  out.status = bounded ? LpStatus::kOptimal : LpStatus::kUnbounded;
  return out;
}

int count_positive(const Vec& v, double threshold) {
  return static_cast<int>((v.array() > threshold).count());
}

ConeMembershipResult feasible_nonneg_solution(const Mat& m, const Vec& x, const Tolerances& tol) {
  if (m.rows() != x.size()) {
    throw InputError("feasible_nonneg_solution: M has " + std::to_string(m.rows()) +
                     " rows but x has length " + std::to_string(x.size()));
  }
  require_finite(m, "feasible_nonneg_solution M");
  require_finite(x, "feasible_nonneg_solution x");

  ConeMembershipResult out;
  const double x_norm = x.norm();
  const double accept = tol.ineq_tol * (1.0 + x_norm);
  if (x_norm == 0.0) {
    out.member = true;
    out.coefficients = Vec::Zero(m.cols());
    return out;
  }

  // Drop zero generators, normalize the rest and the target.
  std::vector<Eigen::Index> kept;
  const double max_col = m.cols() > 0 ? m.colwise().norm().maxCoeff() : 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double cn = m.col(j).norm();
    if (cn > tol.rank_rtol * max_col && cn > 0.0) kept.push_back(j);
  }
  if (kept.empty()) {
    out.member = false;
    out.residual = x_norm;
    return out;
  }
  Mat scaled(m.rows(), static_cast<Eigen::Index>(kept.size()));
  Vec col_norm(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    col_norm(kk) = m.col(kept[k]).norm();
    scaled.col(kk) = m.col(kept[k]) / col_norm(kk);
  }
  const LpSolution lp =
      solve_standard_form(scaled, x / x_norm, Vec::Zero(static_cast<Eigen::Index>(kept.size())));

  Vec u = Vec::Zero(m.cols());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    u(kept[k]) = std::max(lp.x(kk), 0.0) * x_norm / col_norm(kk);
  }
  out.residual = (m * u - x).norm();
  out.member = out.residual <= accept;
  if (out.member) out.coefficients = std::move(u);
  return out;
}

std::optional<HomogeneousWitness> homogeneous_nonzero(const Mat& m, const Tolerances& tol) {
  const Eigen::Index g = m.cols();
  if (g < 1) throw InputError("homogeneous_nonzero: need at least one column");
  require_finite(m, "homogeneous_nonzero");

  // Rows scaled to unit norm. Rows that are zero up to roundoff, relative to
  // the largest row, impose nothing; normalizing them would amplify noise.
  const double max_row = m.rows() > 0 ? m.rowwise().norm().maxCoeff() : 0.0;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double rn = m.row(i).norm();
    if (rn > 0.0 && rn > tol.ineq_tol * max_row) kept.push_back(i);
  }
  const auto r = static_cast<Eigen::Index>(kept.size());
  if (r == 0) {
    HomogeneousWitness w;
    w.rho = Vec::Unit(g, 0);
    return w;
  }
  Mat mn(r, g);
  for (Eigen::Index k = 0; k < r; ++k) {
    mn.row(k) = m.row(kept[static_cast<std::size_t>(k)]) /
                m.row(kept[static_cast<std::size_t>(k)]).norm();
  }

  // rho = y - 1 with y in [0, 2]^g:
  //   Mn y + s = Mn 1,  y + t = 2,  y, s, t >= 0.
  const Eigen::Index nvar = g + r + g;
  Mat a = Mat::Zero(r + g, nvar);
  Vec b(r + g);
  a.block(0, 0, r, g) = mn;
  a.block(0, g, r, r).setIdentity();
  a.block(r, 0, g, g).setIdentity();
  a.block(r, g + r, g, g).setIdentity();
  b.head(r) = mn.rowwise().sum();
  b.tail(g).setConstant(2.0);

  for (Eigen::Index i = 0; i < g; ++i) {
    for (double sign : {1.0, -1.0}) {
      Vec c = Vec::Zero(nvar);
      c(i) = -sign;
      const LpSolution lp = solve_standard_form(a, b, c);
      if (lp.status != LpStatus::kOptimal) {
        throw NumericError("homogeneous_nonzero: box-bounded LP did not reach an optimum");
      }
      Vec rho = lp.x.head(g) - Vec::Ones(g);
      if (sign * rho(i) <= tol.ineq_tol) continue;
      const double inf_norm = rho.cwiseAbs().maxCoeff();
      rho /= inf_norm;
      const double violation = (mn * rho).maxCoeff();
      if (violation > tol.ineq_tol) continue;
      HomogeneousWitness w;
      w.rho = rho;
      w.max_entry_norm = rho.cwiseAbs().maxCoeff();
      w.max_violation = (m * rho).maxCoeff();
      return w;
    }
  }
  return std::nullopt;
}

Vec sparsify_positive_combination(const Mat& z_gen, const Vec& z, const Tolerances& tol) {
  const ConeMembershipResult res = feasible_nonneg_solution(z_gen, z, tol);
  if (!res.member) {
    throw NotInConeError("sparsify_positive_combination: target is not in the positive span "
                         "(best residual " + std::to_string(res.residual) + ")");
  }
  const Vec& alpha = *res.coefficients;
  const int d = rank(z_gen, tol);
  if (count_positive(alpha, tol.ineq_tol) > d) {
    throw NumericError("sparsify_positive_combination: basic solution exceeds rank(Z) nonzeros");
  }
  return alpha;
}

bool is_positive_spanning_subspace(const Mat& z_gen, const Tolerances& tol) {
  require_finite(z_gen, "is_positive_spanning_subspace");
  for (Eigen::Index j = 0; j < z_gen.cols(); ++j) {
    if (z_gen.col(j).norm() == 0.0) continue;
    if (!feasible_nonneg_solution(z_gen, -z_gen.col(j), tol).member) return false;
  }
  return true;
}

}  // namespace nnsc
