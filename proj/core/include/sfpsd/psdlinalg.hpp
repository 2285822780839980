#pragma once

// Positive-semidefiniteness tests for dense Hermitian matrices.

#include <cstddef>
#include <vector>

#include "sfpsd/errors.hpp"
#include "sfpsd/matrix.hpp"

namespace sfpsd {

// Hermitian inputs must satisfy hermitian_deviation(M) <= this.
inline constexpr double kHermitianCheckTolerance = 1e-10;

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  std::size_t iterations = 0;       // Jacobi sweeps
  double offdiag_residual = 0.0;    // off-diagonal Frobenius mass at exit
  double pair_spread = 0.0;         // largest gap inside a pair of the doubled spectrum
  // Column-major n x n; column i is a unit eigenvector for eigenvalues[i].
  // Empty unless requested.
  std::vector<Complex> eigenvectors;
};

// Cyclic Jacobi on the 2n x 2n real embedding [X -Y; Y X] of M = X + iY.
// Throws NonHermitian, or NonConvergence after 100 sweeps.
EigenResult eigenvalues_hermitian(const HermitianMatrix& m, bool want_vectors = false);

struct CholeskyResult {
  std::size_t rank = 0;
  bool success = false;
  std::vector<double> pivots;  // accepted pivots in elimination order
  double scale = 1.0;          // max(1, initial max diagonal)
};

// Diagonal-pivoted outer-product Cholesky. Elimination stops once the largest
// remaining diagonal falls below tol * scale. Success means no remaining
// diagonal is below -tol * scale and no remaining entry exceeds tol * scale
// in modulus (a PSD remainder is bounded entrywise by its diagonal).
CholeskyResult pivoted_cholesky(const HermitianMatrix& m, double tol);

struct PsdVerdict {
  bool is_psd = false;
  double min_eig = 0.0;
  double max_eig = 0.0;
  std::size_t cholesky_rank = 0;
  double tolerance_used = 0.0;
  bool cholesky_success = false;
  bool quadratic_forms_ok = false;
  double min_quadratic_form = 0.0;  // min over samples of x^H M x / |x|^2
};

// tolerance_used = tol_rel * max(1, lambda_max). is_psd requires
// min_eig >= -tolerance_used, a successful pivoted Cholesky at the same
// threshold, and 64 nonnegative sampled quadratic forms.
PsdVerdict psd_verdict(const HermitianMatrix& m, double tol_rel = 1e-8);

// Entrywise product. Throws DimensionMismatch.
HermitianMatrix schur_product(const HermitianMatrix& a, const HermitianMatrix& b);

// Real determinant of a Hermitian matrix from a diagonally pivoted LDL^H
// factorization; falls back to partial-pivot LU if a zero pivot is met
// while the remaining block is nonzero (indefinite input).
double hermitian_determinant(const HermitianMatrix& m);

struct HadamardDetResult {
  bool holds = false;
  double det_product = 0.0;  // det(A o B)
  double det_a = 0.0;
  double det_b = 0.0;
  double scale = 1.0;        // max(1, |det(A o B)|)
};

// det(A o B) >= det(A) det(B) - tol * scale.
HadamardDetResult hadamard_det_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                     double tol);

// Determinants of the leading principal submatrices of orders 1..n.
std::vector<double> leading_minors(const HermitianMatrix& m);

}  // namespace sfpsd
