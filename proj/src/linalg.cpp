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

#include "wvconc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wvconc/errors.hpp"

namespace wvconc {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidInput("matrix rows must have equal length");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::outer(const std::vector<cplx>& ket, const std::vector<cplx>& bra) {
  Matrix m(ket.size(), bra.size());
  for (std::size_t r = 0; r < ket.size(); ++r)
    for (std::size_t c = 0; c < bra.size(); ++c) m(r, c) = ket[r] * std::conj(bra[c]);
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

Matrix Matrix::conjugate() const {
  Matrix m = *this;
  for (auto& v : m.data_) v = std::conj(v);
  return m;
}

cplx Matrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::hermiticity_defect() const {
  if (!square()) return INFINITY;
  double worst = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return worst;
}

double Matrix::max_abs() const {
  double worst = 0.0;
  for (const auto& v : data_) worst = std::max(worst, std::abs(v));
  return worst;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix dimension mismatch");
  Matrix m(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx ark = a(r, k);
      if (ark == cplx{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) m(r, c) += ark * b(k, c);
    }
  return m;
}

std::vector<cplx> operator*(const Matrix& a, const std::vector<cplx>& v) {
  if (a.cols() != v.size()) throw InvalidInput("matrix-vector dimension mismatch");
  std::vector<cplx> out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out[r] += a(r, c) * v[c];
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return m;
}

namespace {

EigenSystem eigen_2x2(const Matrix& a) {
  const double p = a(0, 0).real();
  const double q = a(1, 1).real();
  const cplx b = 0.5 * (a(0, 1) + std::conj(a(1, 0)));
  const double mean = 0.5 * (p + q);
  const double radius = std::hypot(0.5 * (p - q), std::abs(b));
  double hi = mean + radius;
  double lo = mean - radius;
  // The smaller-magnitude root from the determinant avoids cancellation.
  const double det = p * q - std::norm(b);
  if (mean > 0.0 && hi != 0.0) lo = det / hi;
  if (mean < 0.0 && lo != 0.0) hi = det / lo;

  EigenSystem out;
  out.values = {lo, hi};
  out.vectors = Matrix(2, 2);
  if (std::abs(b) == 0.0) {
    const bool swap = p > q;
    out.vectors(swap ? 1 : 0, 0) = 1.0;
    out.vectors(swap ? 0 : 1, 1) = 1.0;
    return out;
  }
  for (std::size_t k = 0; k < 2; ++k) {
    const double lambda = out.values[k];
    // Two algebraically equivalent null vectors; keep the better conditioned one.
    cplx v0 = b, v1 = lambda - p;
    const cplx u0 = lambda - q, u1 = std::conj(b);
    if (std::norm(u0) + std::norm(u1) > std::norm(v0) + std::norm(v1)) {
      v0 = u0;
      v1 = u1;
    }
    const double n = std::sqrt(std::norm(v0) + std::norm(v1));
    out.vectors(0, k) = v0 / n;
    out.vectors(1, k) = v1 / n;
  }
  return out;
}

EigenSystem eigen_jacobi(Matrix a, double tolerance) {
  const std::size_t n = a.rows();
  Matrix v = Matrix::identity(n);
  // Symmetrize so round-off asymmetry in the input does not leak into rotations.
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const cplx m = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = m;
      a(c, r) = std::conj(m);
    }
  }
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
  };
  double full = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) full += std::norm(a(r, c));
  full = std::sqrt(full);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_norm() <= tolerance * full || full == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const cplx phase = a(p, q) / r;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = D * P with D = diag(1, e^{-i phi}) on (p, q) and P the real rotation.
        const cplx jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {  // A <- A J
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- J^dagger A
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {  // V <- V J
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }
  if (off_norm() > 1e3 * tolerance * full) throw NumericalFailure("Jacobi eigensolver did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  EigenSystem out;
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values.push_back(a(order[k], order[k]).real());
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

}  // namespace

EigenSystem hermitian_eigen(const Matrix& a, double tolerance) {
  if (!a.square() || a.rows() == 0) throw InvalidInput("eigen-decomposition needs a non-empty square matrix");
  if (a.rows() == 1) {
    EigenSystem out;
    out.values = {a(0, 0).real()};
    out.vectors = Matrix::identity(1);
    return out;
  }
  if (a.rows() == 2) return eigen_2x2(a);
  return eigen_jacobi(a, tolerance);
}

std::vector<double> hermitian_eigenvalues(const Matrix& a, double tolerance) {
  return hermitian_eigen(a, tolerance).values;
}

std::vector<double> singular_values(const Matrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Matrix dilation(m + n, m + n);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      dilation(r, m + c) = a(r, c);
      dilation(m + c, r) = std::conj(a(r, c));
    }
  auto values = hermitian_eigenvalues(dilation);
  // Spectrum is {+s_i, -s_i} plus |m - n| zeros; the top min(m, n) are the s_i.
  std::vector<double> out(values.rbegin(), values.rbegin() + static_cast<std::ptrdiff_t>(std::min(m, n)));
  for (auto& s : out) s = std::abs(s);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

namespace pauli {
Matrix x() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
Matrix y() { return Matrix{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}}; }
Matrix z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

}  // namespace wvconc
