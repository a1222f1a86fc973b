#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ecs/errors.hpp"

namespace ecs {

using cx = std::complex<double>;

// Dense complex matrix, row-major. Small sizes only (<= 4096 total dim for
// tensor ops, <= 64x64 for eigenproblems).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  cx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::vector<cx>& data() { return a_; }
  const std::vector<cx>& data() const { return a_; }

  Matrix adjoint() const;
  Matrix conjugate() const;
  Matrix transpose() const;
  cx trace() const;
  double frobenius_norm() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(cx s);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cx> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(cx s, Matrix a);
Matrix kron(const Matrix& a, const Matrix& b);

// throws NotFinite on NaN/Inf entries
void require_finite(const Matrix& m);
// ||M - M^dagger||_F
double hermiticity_defect(const Matrix& m);

struct Spectrum {
  std::vector<double> values;  // descending
  Matrix vectors;              // orthonormal columns, column k pairs with values[k]
};

// Cyclic complex Jacobi rotations; converges when the off-diagonal Frobenius
// norm drops below 1e-13 * ||H||_F (at most 100 sweeps).
Spectrum hermitian_eig(const Matrix& h);

// Hermitian PSD square root via the spectral decomposition; eigenvalues in
// [-1e-8, 0) are treated as roundoff and clamped to zero.
Matrix psd_sqrt(const Matrix& m);

// rho acts on a d1 x d2 tensor product; keep selects the surviving factor (1 or 2).
Matrix partial_trace(const Matrix& rho, std::size_t d1, std::size_t d2, int keep);

// -sum lambda log2 lambda, in bits.
double von_neumann_entropy(const Matrix& rho);

}  // namespace ecs
