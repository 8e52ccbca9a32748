// Copyright 2026 The wvconc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace wvconc {

using cplx = std::complex<double>;

/// Small dense row-major complex matrix. Sized for qubit work (n <= 8).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static Matrix identity(std::size_t n);
  static Matrix outer(const std::vector<cplx>& ket, const std::vector<cplx>& bra);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conjugate() const;
  cplx trace() const;

  /// Largest |A - A^dagger| entry.
  double hermiticity_defect() const;
  double max_abs() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(cplx s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

std::vector<cplx> operator*(const Matrix& a, const std::vector<cplx>& v);

Matrix kron(const Matrix& a, const Matrix& b);

/// Eigen-decomposition of a Hermitian matrix: values ascending, eigenvectors
/// stored as the matching columns of `vectors`.
struct EigenSystem {
  std::vector<double> values;
  Matrix vectors;
};

/// 2x2 input is solved in closed form; larger input by cyclic complex Jacobi
/// rotations until the off-diagonal Frobenius norm drops below
/// `tolerance` times the full norm. Only the Hermitian part is used.
EigenSystem hermitian_eigen(const Matrix& a, double tolerance = 1e-13);
std::vector<double> hermitian_eigenvalues(const Matrix& a, double tolerance = 1e-13);

/// Singular values (descending) via the Hermitian dilation [[0, A], [A^dagger, 0]].
/// Small singular values keep absolute accuracy ~ eps * |A|, which squaring
/// through A A^dagger would lose.
std::vector<double> singular_values(const Matrix& a);

namespace pauli {
Matrix x();
Matrix y();
Matrix z();
}  // namespace pauli

}  // namespace wvconc
