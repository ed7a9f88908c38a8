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

#include "nnsc/controllability.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/SVD>

#include "nnsc/cone_lp.hpp"
#include "nnsc/errors.hpp"

namespace nnsc {

namespace {

// Index of the violation kept as the certificate: largest |lambda|; among
// equal moduli the later entry in (re, im) order wins.
std::size_t pick_largest(const std::vector<Complex>& lambdas) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (std::abs(lambdas[i]) >= std::abs(lambdas[best])) best = i;
  }
  return best;
}

CVec scale_to_unit_max(const CVec& z) {
  Eigen::Index idx = 0;
  z.cwiseAbs().maxCoeff(&idx);
  return z / z(idx);
}

double eig_residual(const Mat& a, Complex lambda, const CVec& z) {
  return (z.transpose() * a.cast<Complex>() - lambda * z.transpose()).norm();
}

Certificate condition_i_certificate(const SystemPair& sys, Complex lambda, const Tolerances& tol) {
  const Eigen::Index n = sys.state_dim();
  const Eigen::Index m = sys.input_dim();
  CVec z;
  if (lambda.imag() == 0.0) {
    Mat pbh(n, n + m);
    pbh << lambda.real() * Mat::Identity(n, n) - sys.a(), sys.b();
    Mat basis = null_space_basis(Mat(pbh.transpose()), tol);
    if (basis.cols() == 0) {
      Eigen::JacobiSVD<Mat> svd(pbh.transpose(), Eigen::ComputeFullV);
      basis = svd.matrixV().rightCols(1);
    }
    z = basis.col(0).cast<Complex>();
  } else {
    CMat pbh(n, n + m);
    pbh << lambda * CMat::Identity(n, n) - sys.a().cast<Complex>(), sys.b().cast<Complex>();
    CMat basis = null_space_basis(CMat(pbh.transpose()), tol);
    if (basis.cols() == 0) {
      Eigen::JacobiSVD<CMat> svd(pbh.transpose(), Eigen::ComputeFullV);
      basis = svd.matrixV().rightCols(1);
    }
    z = basis.col(0);
  }
  // Any complex rescaling keeps z^T B = 0; dividing by the dominant entry
  // makes real-lambda certificates real.
  z = scale_to_unit_max(z);
  if (lambda.imag() == 0.0) z = z.real().cast<Complex>();

  Certificate cert;
  cert.kind = CertificateKind::kViolatesConditionI;
  cert.lambda = lambda;
  cert.z = z;
  cert.residual_eig = eig_residual(sys.a(), lambda, z);
  cert.max_zb = (z.transpose() * sys.b().cast<Complex>()).cwiseAbs().maxCoeff();
  return cert;
}

ConditionOutcome condition_i_from(const SystemPair& sys, const LeftEigenSystem& es,
                                  const Tolerances& tol) {
  ConditionOutcome out;
  for (const EigenGroup& g : es.groups) {
    if (pbh_rank(sys.a(), sys.b(), g.lambda, tol) < sys.state_dim()) {
      out.violating_eigenvalues.push_back(g.lambda);
    }
  }
  if (!out.violating_eigenvalues.empty()) {
    out.passed = false;
    const Complex lambda = out.violating_eigenvalues[pick_largest(out.violating_eigenvalues)];
    out.certificate = condition_i_certificate(sys, lambda, tol);
  }
  return out;
}

ConditionOutcome condition_ii_from(const SystemPair& sys, const LeftEigenSystem& es,
                                   const Tolerances& tol) {
  ConditionOutcome out;
  std::vector<Certificate> found;
  for (const EigenGroup& g : es.groups) {
    if (!g.is_real || !is_real_nonnegative(g.lambda, tol)) continue;
    const Mat z_basis = g.real_left_basis();
    Mat cone_rows = sys.b().transpose() * z_basis;
    // Entries of z^T b_j below roundoff relative to ||b_j|| are exact zeros.
    for (Eigen::Index j = 0; j < cone_rows.rows(); ++j) {
      const double scale = tol.ineq_tol * sys.b().col(j).norm();
      for (Eigen::Index c = 0; c < cone_rows.cols(); ++c) {
        if (std::abs(cone_rows(j, c)) <= scale) cone_rows(j, c) = 0.0;
      }
    }
    const auto witness = homogeneous_nonzero(cone_rows, tol);
    if (!witness) continue;

    Vec z = z_basis * witness->rho;
    z /= z.cwiseAbs().maxCoeff();
    Certificate cert;
    cert.kind = CertificateKind::kViolatesConditionII;
    cert.lambda = g.lambda;
    cert.z = z.cast<Complex>();
    cert.residual_eig = eig_residual(sys.a(), g.lambda, cert.z);
    cert.max_zb = (z.transpose() * sys.b()).maxCoeff();
    out.violating_eigenvalues.push_back(g.lambda);
    found.push_back(std::move(cert));
  }
  if (!found.empty()) {
    out.passed = false;
    out.certificate = found[pick_largest(out.violating_eigenvalues)];
  }
  return out;
}

void fill_eigen_table(ControllabilityReport& report, const LeftEigenSystem& es,
                      const Tolerances& tol) {
  for (const EigenGroup& g : es.groups) {
    EigenTableRow row;
    row.lambda = g.lambda;
    row.algebraic_multiplicity = g.algebraic_multiplicity;
    row.geometric_multiplicity = g.geometric_multiplicity;
    row.real_nonnegative = g.is_real && is_real_nonnegative(g.lambda, tol);
    row.merged = g.merged;
    row.residual = g.residual;
    report.eigenvalues.push_back(row);
  }
  report.clusters_merged = es.any_merged;
}

void check_sparsity_bounds(const SystemPair& sys, SparsityLevel s) {
  if (s.value() > sys.input_dim()) {
    throw InputError("sparsity s = " + std::to_string(s.value()) + " exceeds input dimension m = " +
                     std::to_string(sys.input_dim()));
  }
}

ControllabilityReport assemble(const SystemPair& sys, std::optional<SparsityLevel> s,
                               bool with_sign_condition, const Tolerances& tol) {
  tol.validate();
  if (s) check_sparsity_bounds(sys, *s);
  const LeftEigenSystem es = left_eigensystem(sys.a(), tol);
  ControllabilityReport report;
  report.tolerances = tol;
  fill_eigen_table(report, es, tol);
  report.condition_i = condition_i_from(sys, es, tol);
  if (with_sign_condition) report.condition_ii = condition_ii_from(sys, es, tol);
  if (s) report.condition_iii = check_condition_iii(sys, *s, tol);

  const bool ok = report.condition_i->passed &&
                  (!report.condition_ii || report.condition_ii->passed) &&
                  (!report.condition_iii || report.condition_iii->passed);
  report.verdict = ok ? Verdict::kControllable : Verdict::kUncontrollable;
  return report;
}

}  // namespace

SystemPair::SystemPair(Mat a, Mat b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() == 0 || a_.rows() != a_.cols()) {
    throw InputError("A must be a nonempty square matrix, got " + std::to_string(a_.rows()) + "x" +
                     std::to_string(a_.cols()));
  }
  if (b_.rows() != a_.rows()) {
    throw InputError("B has " + std::to_string(b_.rows()) + " rows, expected " +
                     std::to_string(a_.rows()));
  }
  if (b_.cols() < 1) throw InputError("B must have at least one column");
  require_finite(a_, "A");
  require_finite(b_, "B");
}

SparsityLevel::SparsityLevel(int s) : s_(s) {
  if (s < 1) {
    throw InputError("sparsity s must be a positive integer, got " + std::to_string(s));
  }
}

std::optional<Certificate> ControllabilityReport::certificate() const {
  if (condition_ii && condition_ii->certificate) return condition_ii->certificate;
  if (condition_i && condition_i->certificate) return condition_i->certificate;
  return std::nullopt;
}

ConditionOutcome check_condition_i(const SystemPair& sys, const Tolerances& tol) {
  tol.validate();
  return condition_i_from(sys, left_eigensystem(sys.a(), tol), tol);
}

ConditionOutcome check_condition_ii(const SystemPair& sys, const Tolerances& tol) {
  tol.validate();
  return condition_ii_from(sys, left_eigensystem(sys.a(), tol), tol);
}

SparsityOutcome check_condition_iii(const SystemPair& sys, SparsityLevel s, const Tolerances& tol) {
  check_sparsity_bounds(sys, s);
  SparsityOutcome out;
  out.s = s.value();
  out.state_dim = sys.state_dim();
  out.rank_a = rank(sys.a(), tol);
  out.passed = out.s >= out.state_dim - out.rank_a;
  return out;
}

ControllabilityReport check_nonneg_sparse(const SystemPair& sys, SparsityLevel s,
                                          const Tolerances& tol) {
  return assemble(sys, s, /*with_sign_condition=*/true, tol);
}

ControllabilityReport check_nonneg(const SystemPair& sys, const Tolerances& tol) {
  return assemble(sys, std::nullopt, /*with_sign_condition=*/true, tol);
}

ControllabilityReport check_sparse(const SystemPair& sys, SparsityLevel s, const Tolerances& tol) {
  return assemble(sys, s, /*with_sign_condition=*/false, tol);
}

std::optional<int> min_sparsity(const SystemPair& sys, const Tolerances& tol) {
  if (!check_nonneg(sys, tol).controllable()) return std::nullopt;
  const int deficiency = sys.state_dim() - rank(sys.a(), tol);
  if (deficiency > sys.input_dim()) {
    throw NoFeasibleSparsityError("no feasible sparsity: N - rank(A) = " +
                                  std::to_string(deficiency) + " exceeds m = " +
                                  std::to_string(sys.input_dim()));
  }
  return std::max(1, deficiency);
}

bool corollary_bound_check(const SystemPair& sys, const Tolerances& tol) {
  if (!check_nonneg(sys, tol).controllable()) return true;
  const SparsityLevel s(std::max(1, sys.input_dim() - 1));
  return check_nonneg_sparse(sys, s, tol).controllable();
}

CertificateCheck verify_certificate(const SystemPair& sys, const Certificate& cert,
                                    const Tolerances& tol) {
  CertificateCheck out;
  out.residual_bound = eig_residual_bound(sys.a(), tol);
  if (cert.z.size() != sys.state_dim()) {
    out.failures.push_back("z has length " + std::to_string(cert.z.size()) + ", expected " +
                           std::to_string(sys.state_dim()));
    return out;
  }
  if (!cert.z.allFinite() || !std::isfinite(cert.lambda.real()) ||
      !std::isfinite(cert.lambda.imag())) {
    out.failures.push_back("certificate has non-finite entries");
    return out;
  }
  const double zmax = cert.z.cwiseAbs().maxCoeff();
  if (zmax == 0.0) {
    out.failures.push_back("z is the zero vector");
    return out;
  }
  const CVec z = cert.z / zmax;
  out.residual_eig = eig_residual(sys.a(), cert.lambda, z);
  if (out.residual_eig > out.residual_bound) {
    out.failures.push_back("z^T A != lambda z^T (residual " + std::to_string(out.residual_eig) +
                           ")");
  }
  const CVec zb = (z.transpose() * sys.b().cast<Complex>()).transpose();
  if (cert.kind == CertificateKind::kViolatesConditionI) {
    out.max_zb = zb.cwiseAbs().maxCoeff();
    if (out.max_zb > tol.ineq_tol) out.failures.push_back("z^T B is not zero");
  } else {
    if (!is_real_nonnegative(cert.lambda, tol)) {
      out.failures.push_back("lambda is not real and nonnegative");
    }
    if (z.imag().cwiseAbs().maxCoeff() > tol.eig_imag_tol) {
      out.failures.push_back("z is not real");
    }
    out.max_zb = zb.real().maxCoeff();
    if (out.max_zb > tol.ineq_tol) out.failures.push_back("z^T B has a positive entry");
  }
  out.valid = out.failures.empty();
  return out;
}

SystemPair apply_input_basis(const SystemPair& sys, const Mat& phi) {
  if (phi.rows() != sys.input_dim() || phi.cols() != sys.input_dim()) {
    throw InputError("Phi must be " + std::to_string(sys.input_dim()) + "x" +
                     std::to_string(sys.input_dim()) + ", got " + std::to_string(phi.rows()) +
                     "x" + std::to_string(phi.cols()));
  }
  require_finite(phi, "Phi");
  return SystemPair(sys.a(), sys.b() * phi);
}

std::string to_string(CertificateKind kind) {
  return kind == CertificateKind::kViolatesConditionI ? "violates_condition_i"
                                                      : "violates_condition_ii";
}

std::string to_string(Verdict verdict) {
  return verdict == Verdict::kControllable ? "controllable" : "uncontrollable";
}

}  // namespace nnsc
