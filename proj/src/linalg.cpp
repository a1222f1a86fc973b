#include "ecs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ecs {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Matrix Matrix::conjugate() const {
  Matrix r(rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = std::conj(a_[k]);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

cx Matrix::trace() const {
  if (rows_ != cols_) throw DimensionMismatch("trace of a non-square matrix");
  cx t = 0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0;
  for (const cx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix add shape");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sub shape");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(cx s) {
  for (cx& v : a_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(cx s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul shape");
  Matrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cx aik = a(i, k);
      if (aik == cx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cx aij = a(i, j);
      if (aij == cx{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

void require_finite(const Matrix& m) {
  for (const cx& v : m.data())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NotFinite("matrix entry is NaN/Inf");
}

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("hermiticity of a non-square matrix");
  double s = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j) - std::conj(m(j, i)));
  return std::sqrt(s);
}

namespace {

double offdiag_norm(const Matrix& a) {
  double s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

Spectrum hermitian_eig(const Matrix& h) {
  if (h.rows() != h.cols()) throw DimensionMismatch("eig of a non-square matrix");
  require_finite(h);
  const std::size_t n = h.rows();
  const double scale = h.frobenius_norm();
  if (hermiticity_defect(h) > 1e-10 * std::max(1.0, scale))
    throw NotHermitian("matrix is not Hermitian within tolerance");

  // exact Hermitian part; the sub-tolerance asymmetry is discarded
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));

  Matrix v = Matrix::identity(n);
  for (int sweep = 0; sweep < 100 && offdiag_norm(a) > 1e-13 * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const cx apq = a(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        // phase-absorb, then a real Jacobi rotation on [[app, r], [r, aqq]]
        const cx ph = apq / r;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double tau = (aqq - app) / (2 * r);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        const double c = 1 / std::sqrt(1 + t * t), s = t * c;
        // columns: col_p' = c*ph*col_p - s*col_q ; col_q' = s*ph*col_p + c*col_q
        for (std::size_t k = 0; k < n; ++k) {
          const cx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * ph * akp - s * akq;
          a(k, q) = s * ph * akp + c * akq;
          const cx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * ph * vkp - s * vkq;
          v(k, q) = s * ph * vkp + c * vkq;
        }
        // rows: row_p' = c*conj(ph)*row_p - s*row_q ; row_q' = s*conj(ph)*row_p + c*row_q
        const cx phc = std::conj(ph);
        for (std::size_t k = 0; k < n; ++k) {
          const cx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * phc * apk - s * aqk;
          a(q, k) = s * phc * apk + c * aqk;
        }
        a(p, q) = 0;
        a(q, p) = 0;
        a(p, p) = cx(a(p, p).real(), 0);
        a(q, q) = cx(a(q, q).real(), 0);
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  Spectrum sp;
  sp.values.resize(n);
  sp.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    sp.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) sp.vectors(i, k) = v(i, order[k]);
  }
  return sp;
}

Matrix psd_sqrt(const Matrix& m) {
  Spectrum sp = hermitian_eig(m);
  for (double& lam : sp.values) {
    if (lam < -1e-8) throw NotPSD("matrix has an eigenvalue below -1e-8");
    if (lam < 0) lam = 0;
  }
  const std::size_t n = m.rows();
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cx acc = 0;
      for (std::size_t k = 0; k < n; ++k)
        acc += sp.vectors(i, k) * std::sqrt(sp.values[k]) * std::conj(sp.vectors(j, k));
      s(i, j) = acc;
    }
  // exact re-hermitization of the rounded product
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const cx avg = 0.5 * (s(i, j) + std::conj(s(j, i)));
      s(i, j) = avg;
      s(j, i) = std::conj(avg);
    }
  return s;
}

Matrix partial_trace(const Matrix& rho, std::size_t d1, std::size_t d2, int keep) {
  if (rho.rows() != rho.cols() || rho.rows() != d1 * d2)
    throw DimensionMismatch("partial_trace: rho must be (d1 d2) x (d1 d2)");
  if (keep != 1 && keep != 2) throw OutOfRange("partial_trace: keep must be 1 or 2");
  require_finite(rho);
  if (std::abs(rho.trace() - cx(1.0)) > 1e-10)
    throw NotDensityMatrix("partial_trace: input trace is not 1");

  if (keep == 2) {
    Matrix r(d2, d2);
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t j = 0; j < d2; ++j)
        for (std::size_t k = 0; k < d2; ++k) r(j, k) += rho(i * d2 + j, i * d2 + k);
    return r;
  }
  Matrix r(d1, d1);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t k = 0; k < d1; ++k)
      for (std::size_t j = 0; j < d2; ++j) r(i, k) += rho(i * d2 + j, k * d2 + j);
  return r;
}

double von_neumann_entropy(const Matrix& rho) {
  Spectrum sp = hermitian_eig(rho);
  double sum = 0;
  for (double lam : sp.values) {
    if (lam < -1e-10 || lam > 1 + 1e-10)
      throw NotDensityMatrix("entropy: eigenvalue outside [0, 1]");
    sum += lam;
  }
  if (std::abs(sum - 1) > 1e-8) throw NotDensityMatrix("entropy: eigenvalues do not sum to 1");
  double h = 0;
  for (double lam : sp.values) {
    const double x = std::clamp(lam, 0.0, 1.0);
    if (x > 0) h -= x * std::log2(x);
  }
  return h;
}

}  // namespace ecs
