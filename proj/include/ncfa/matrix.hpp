#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ncfa {

using cplx = std::complex<double>;

// Dense row-major complex matrix. This is the only matrix representation in
// the project; everything (irrep blocks, spectra, materialized operators) is
// small and dense, so one simple type suffices.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);
  ComplexMatrix(int rows, int cols, std::vector<cplx> entries);

  static ComplexMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cplx& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::span<const cplx> entries() const { return a_; }
  std::span<cplx> entries() { return a_; }

  ComplexMatrix adjoint() const;
  bool all_finite() const;
  bool is_zero() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx scalar);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(cplx scalar, ComplexMatrix m) { return m *= scalar; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> a_;
};

// tr(A * B) without forming the product.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

cplx trace(const ComplexMatrix& m);

double frobenius_norm(const ComplexMatrix& m);

// max_ij |a_ij - b_ij|; dimensions must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigendecomposition of a Hermitian matrix: H = V diag(values) V^dagger with
// values descending and V unitary (columns are eigenvectors).
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

// Cyclic Jacobi rotations, iterated until the off-diagonal Frobenius mass
// drops below 1e-14 times the Frobenius norm of the input. Small matrices
// only, but high relative accuracy for the small eigenvalues that rank
// thresholds inspect.
HermitianEigen hermitian_eigen(ComplexMatrix h);

// Singular values of M, descending. Computed as the square roots of the
// eigenvalues of M^dagger M (clamped at zero before the square root).
std::vector<double> singular_values(const ComplexMatrix& m);

// Number of singular values above rel_tol * max(rows, cols) * sigma_max.
// rel_tol must lie in (0, 1). The zero matrix has rank 0.
int numeric_rank(const ComplexMatrix& m, double rel_tol = 1e-9);

// Rank decision shared with the spectral-support code: count of values in sv
// strictly above rel_tol * dim_scale * sigma_ref.
int rank_from_singular_values(std::span<const double> sv, int dim_scale, double rel_tol,
                              double sigma_ref);

struct Norms {
  double hs;  // Hilbert-Schmidt (entrywise l2)
  double op;  // operator norm (largest singular value); always <= hs
};

Norms norms(const ComplexMatrix& m);

// Orthogonal projector onto the column space of M: sum of v v^dagger over
// eigenvectors of M M^dagger whose singular value exceeds the rank threshold.
// sigma_ref <= 0 means "use this matrix's own largest singular value".
ComplexMatrix column_space_projector(const ComplexMatrix& m, double rel_tol = 1e-9,
                                     double sigma_ref = 0.0);

}  // namespace ncfa
