#include "ncfa/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ncfa/errors.hpp"

namespace ncfa {

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, cplx{0.0, 0.0}) {
  if (rows < 0 || cols < 0) throw InvalidArgument("matrix dimensions must be non-negative");
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (rows < 0 || cols < 0) throw InvalidArgument("matrix dimensions must be non-negative");
  if (a_.size() != static_cast<std::size_t>(rows) * cols)
    throw InvalidArgument("entry count does not match matrix dimensions");
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = std::conj(at(i, j));
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const cplx& z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

bool ComplexMatrix::is_zero() const {
  for (const cplx& z : a_)
    if (z != cplx{0.0, 0.0}) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidArgument("matrix shape mismatch in +");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidArgument("matrix shape mismatch in -");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
  for (cplx& z : a_) z *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw InvalidArgument("matrix shape mismatch in *");
  ComplexMatrix out(lhs.rows_, rhs.cols_);
  for (int i = 0; i < lhs.rows_; ++i) {
    for (int k = 0; k < lhs.cols_; ++k) {
      const cplx lik = lhs.at(i, k);
      if (lik == cplx{0.0, 0.0}) continue;
      for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += lik * rhs.at(k, j);
    }
  }
  return out;
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw InvalidArgument("matrix shape mismatch in trace_product");
  cplx t{0.0, 0.0};
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t += a.at(i, j) * b.at(j, i);
  return t;
}

cplx trace(const ComplexMatrix& m) {
  cplx t{0.0, 0.0};
  const int n = std::min(m.rows(), m.cols());
  for (int i = 0; i < n; ++i) t += m.at(i, i);
  return t;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const cplx& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidArgument("matrix shape mismatch in max_abs_diff");
  double d = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a.at(i, j) - b.at(i, j)));
  return d;
}

namespace {

double offdiag_frobenius(const ComplexMatrix& h) {
  double s = 0.0;
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j)
      if (i != j) s += std::norm(h.at(i, j));
  return std::sqrt(s);
}

}  // namespace

HermitianEigen hermitian_eigen(ComplexMatrix h) {
  if (h.rows() != h.cols()) throw InvalidArgument("hermitian_eigen requires a square matrix");
  if (!h.all_finite()) throw InvalidArgument("hermitian_eigen requires finite entries");

  const int n = h.rows();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double target = 1e-14 * frobenius_norm(h);

  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps && offdiag_frobenius(h) > target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx gamma = h.at(p, q);
        const double g = std::abs(gamma);
        if (g == 0.0) continue;

        // Phase-normalized 2x2 Jacobi rotation on coordinates (p, q):
        // W = [[u*c, u*s], [-s, c]] with u = gamma/|gamma| turns the pivot
        // block real, then the classic rotation annihilates it.
        const cplx u = gamma / g;
        const double alpha = h.at(p, p).real();
        const double beta = h.at(q, q).real();
        const double tau = (beta - alpha) / (2.0 * g);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const cplx wpp = u * c, wpq = u * s;
        const double wqp = -s, wqq = c;

        for (int i = 0; i < n; ++i) {  // H <- H W (columns p, q)
          const cplx hip = h.at(i, p), hiq = h.at(i, q);
          h.at(i, p) = hip * wpp + hiq * wqp;
          h.at(i, q) = hip * wpq + hiq * wqq;
        }
        for (int i = 0; i < n; ++i) {  // H <- W^dagger H (rows p, q)
          const cplx hpi = h.at(p, i), hqi = h.at(q, i);
          h.at(p, i) = std::conj(wpp) * hpi + std::conj(wqp) * hqi;
          h.at(q, i) = std::conj(wpq) * hpi + std::conj(wqq) * hqi;
        }
        h.at(p, q) = 0.0;  // annihilated algebraically; drop the round-off
        h.at(q, p) = 0.0;

        for (int i = 0; i < n; ++i) {  // V <- V W
          const cplx vip = v.at(i, p), viq = v.at(i, q);
          v.at(i, p) = vip * wpp + viq * wqp;
          v.at(i, q) = vip * wpq + viq * wqq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = h.at(i, i).real();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return diag[a] > diag[b]; });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = diag[order[k]];
    for (int i = 0; i < n; ++i) out.vectors.at(i, k) = v.at(i, order[k]);
  }
  return out;
}

namespace {

// Forming the Gram matrix contaminates eigenvalues below roughly
// eps * lambda_max, so anything under that floor is indistinguishable from
// an exact zero. Flushing it to zero (not just the negative round-off) is
// what lets rank thresholds at 1e-9 * sigma_max classify exact-rank spectra
// reliably.
double gram_noise_floor(int max_dim, double lambda_max) {
  return static_cast<double>(max_dim) * std::numeric_limits<double>::epsilon() * lambda_max;
}

}  // namespace

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (!m.all_finite()) throw InvalidArgument("singular_values requires finite entries");
  const int k = std::min(m.rows(), m.cols());
  if (k == 0) return {};

  // Gram matrix M^dagger M; its eigenvalues are the squared singular values.
  const ComplexMatrix gram = m.adjoint() * m;
  HermitianEigen eig = hermitian_eigen(gram);

  const double floor = gram_noise_floor(std::max(m.rows(), m.cols()),
                                        eig.values.empty() ? 0.0 : std::max(0.0, eig.values.front()));
  std::vector<double> sv;
  sv.reserve(k);
  for (int i = 0; i < k; ++i) sv.push_back(eig.values[i] <= floor ? 0.0 : std::sqrt(eig.values[i]));
  return sv;
}

int rank_from_singular_values(std::span<const double> sv, int dim_scale, double rel_tol,
                              double sigma_ref) {
  const double threshold = rel_tol * static_cast<double>(dim_scale) * sigma_ref;
  int r = 0;
  for (double s : sv)
    if (s > threshold) ++r;
  return r;
}

int numeric_rank(const ComplexMatrix& m, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw InvalidArgument("numeric_rank: rel_tol must be in (0,1)");
  const std::vector<double> sv = singular_values(m);
  if (sv.empty()) return 0;
  return rank_from_singular_values(sv, std::max(m.rows(), m.cols()), rel_tol, sv.front());
}

Norms norms(const ComplexMatrix& m) {
  if (!m.all_finite()) throw InvalidArgument("norms requires finite entries");
  const double hs = frobenius_norm(m);
  if (hs == 0.0) return {0.0, 0.0};
  const std::vector<double> sv = singular_values(m);
  double op = sv.empty() ? 0.0 : sv.front();
  op = std::min(op, hs);  // round-off can push sigma_max a hair above hs
  return {hs, op};
}

ComplexMatrix column_space_projector(const ComplexMatrix& m, double rel_tol, double sigma_ref) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw InvalidArgument("column_space_projector: rel_tol must be in (0,1)");
  const int r = m.rows();
  ComplexMatrix proj(r, r);
  if (m.is_zero()) return proj;

  // Left singular vectors = eigenvectors of M M^dagger.
  HermitianEigen eig = hermitian_eigen(m * m.adjoint());
  const double floor = gram_noise_floor(std::max(m.rows(), m.cols()),
                                        eig.values.empty() ? 0.0 : std::max(0.0, eig.values.front()));
  std::vector<double> sv(eig.values.size());
  for (std::size_t i = 0; i < sv.size(); ++i)
    sv[i] = eig.values[i] <= floor ? 0.0 : std::sqrt(eig.values[i]);
  const double ref = sigma_ref > 0.0 ? sigma_ref : (sv.empty() ? 0.0 : sv.front());
  const double threshold = rel_tol * static_cast<double>(std::max(m.rows(), m.cols())) * ref;

  for (std::size_t k = 0; k < sv.size(); ++k) {
    if (sv[k] <= threshold) continue;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        proj.at(i, j) += eig.vectors.at(i, static_cast<int>(k)) *
                         std::conj(eig.vectors.at(j, static_cast<int>(k)));
  }
  return proj;
}

}  // namespace ncfa
