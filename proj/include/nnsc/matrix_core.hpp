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

#ifndef NNSC_MATRIX_CORE_HPP
#define NNSC_MATRIX_CORE_HPP

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace nnsc {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

/**
 * Numeric policy for every floating-point decision in the library.
 *
 * rank_rtol    singular values at or below rank_rtol * sigma_max count as zero.
 * eig_imag_tol eigenvalues with |Im| below this are treated as real; also the
 *              base radius for eigenvalue clustering.
 * ineq_tol     slack for "<= 0" tests and reconstruction residuals.
 */
struct Tolerances {
  double rank_rtol = 1e-9;
  double eig_imag_tol = 1e-8;
  double ineq_tol = 1e-8;

  /// Throws InputError unless every field lies in (0, 1).
  void validate() const;
};

/// Throws InputError naming `what` if any entry is NaN or infinite.
void require_finite(const Mat& m, std::string_view what);

/// Numerical rank: number of singular values above rank_rtol * sigma_max.
int rank(const Mat& m, const Tolerances& tol = {});
int rank(const CMat& m, const Tolerances& tol = {});

/// Rank with the threshold anchored to max(sigma_max(m), reference_norm).
/// Used where m is a product of powers and should be judged against the
/// scale of its factors rather than its own (possibly roundoff-sized) norm.
int rank_with_reference(const Mat& m, double reference_norm, const Tolerances& tol = {});

/// Orthonormal basis of ker(m); cols = cols(m) - rank(m). May have zero columns.
Mat null_space_basis(const Mat& m, const Tolerances& tol = {});
CMat null_space_basis(const CMat& m, const Tolerances& tol = {});
Mat null_space_basis_with_reference(const Mat& m, double reference_norm,
                                    const Tolerances& tol = {});

/// Orthonormal basis of the column space of m.
Mat range_basis(const Mat& m, const Tolerances& tol = {});

/// Orthonormal basis of the orthogonal complement of span(q), q orthonormal.
Mat orthogonal_complement(const Mat& q);

/// M^k by repeated multiplication; M^0 = I.
Mat mat_pow(const Mat& m, int k);

/// Spectral norm.
double norm2(const Mat& m);

struct EigenGroup {
  Complex lambda;
  bool is_real = false;
  int algebraic_multiplicity = 0;
  int geometric_multiplicity = 0;
  /// N x g; columns z satisfy z^T A = lambda z^T. Real-valued when is_real.
  CMat left_basis;
  /// Max over columns of ||z^T A - lambda z^T|| / ||z||.
  double residual = 0.0;
  /// Numerically split eigenvalues were merged into this group.
  bool merged = false;

  /// left_basis as a real matrix; only meaningful when is_real.
  Mat real_left_basis() const { return left_basis.real(); }
};

struct LeftEigenSystem {
  /// Sorted by real part, then imaginary part.
  std::vector<EigenGroup> groups;
  double spectral_radius = 0.0;
  bool any_merged = false;
};

/// Eigenvalues of A grouped into numerical clusters, each with an
/// orthonormal basis of left eigenvectors. Throws NumericError when the
/// eigenvalue iteration fails.
LeftEigenSystem left_eigensystem(const Mat& a, const Tolerances& tol = {});

/// True when lambda counts as a real, nonnegative eigenvalue.
bool is_real_nonnegative(Complex lambda, const Tolerances& tol);

/// Rank of [lambda I - A | B].
int pbh_rank(const Mat& a, const Mat& b, Complex lambda, const Tolerances& tol = {});

/// Residual bound used to accept z^T A = lambda z^T: 100 * eig_imag_tol * (1 + ||A||).
double eig_residual_bound(const Mat& a, const Tolerances& tol);

}  // namespace nnsc

#endif  // NNSC_MATRIX_CORE_HPP
