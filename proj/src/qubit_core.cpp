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

#include "wvconc/qubit_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wvconc/errors.hpp"

namespace wvconc {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

PureTwoQubitState::PureTwoQubitState(const std::array<Amplitude, 4>& amplitudes) : a_(amplitudes) {
  double norm = 0.0;
  for (const auto& a : a_) {
    if (!finite(a)) throw InvalidInput("invalid state: amplitude is not finite");
    norm += std::norm(a);
  }
  if (std::abs(norm - 1.0) > kNormTolerance)
    throw InvalidInput("invalid state: norm invariant violated, sum |a_ij|^2 = " + fmt_double(norm) +
                       " differs from 1 by more than 1e-12");
}

PureTwoQubitState PureTwoQubitState::normalized(const std::array<Amplitude, 4>& amplitudes) {
  double norm = 0.0;
  for (const auto& a : amplitudes) {
    if (!finite(a)) throw InvalidInput("invalid state: amplitude is not finite");
    norm += std::norm(a);
  }
  if (norm == 0.0) throw InvalidInput("invalid state: all amplitudes are zero");
  auto scaled = amplitudes;
  const double s = 1.0 / std::sqrt(norm);
  for (auto& a : scaled) a *= s;
  return PureTwoQubitState(scaled);
}

DensityMatrix::DensityMatrix(Matrix entries) : m_(std::move(entries)) {
  if (!m_.square() || (m_.rows() != 2 && m_.rows() != 4))
    throw InvalidInput("invalid state: density matrix must be 2x2 or 4x4");
  for (std::size_t r = 0; r < m_.rows(); ++r)
    for (std::size_t c = 0; c < m_.cols(); ++c)
      if (!finite(m_(r, c))) throw InvalidInput("invalid state: entry is not finite");
  const double herm = m_.hermiticity_defect();
  if (herm > kHermiticityTolerance)
    throw InvalidInput("invalid state: Hermiticity invariant violated by " + fmt_double(herm));
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance)
    throw InvalidInput("invalid state: unit-trace invariant violated, trace = " + fmt_double(tr));
  const double lowest = hermitian_eigenvalues(m_).front();
  if (lowest < -kPositivitySlack)
    throw InvalidInput("invalid state: positivity invariant violated, smallest eigenvalue = " +
                       fmt_double(lowest));
}

DensityMatrix DensityMatrix::from_pure(const PureTwoQubitState& state) {
  const auto k = state.ket();
  return DensityMatrix(Matrix::outer(k, k));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(Matrix::identity(dim) * cplx(1.0 / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::projector(const std::vector<cplx>& v) { return DensityMatrix(Matrix::outer(v, v)); }

std::vector<double> DensityMatrix::spectrum() const {
  auto values = hermitian_eigenvalues(m_);
  for (auto& v : values) v = std::max(v, 0.0);
  return values;
}

DensityMatrix reduced_state(const PureTwoQubitState& state, Subsystem keep) {
  Matrix zeta(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) {
        if (keep == Subsystem::A)
          zeta(i, k) += std::conj(state.amplitude(i, j)) * state.amplitude(k, j);
        else
          zeta(i, k) += std::conj(state.amplitude(j, i)) * state.amplitude(j, k);
      }
  return DensityMatrix(zeta);
}

DensityMatrix reduced_state(const DensityMatrix& rho, Subsystem keep) {
  if (rho.dim() != 4) throw InvalidInput("invalid state: reduced_state needs a 4x4 density matrix");
  Matrix zeta(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t j = 0; j < 2; ++j) {
        // rho[(a b), (c d)] = sum psi_ab conj(psi_cd) for pure inputs.
        if (keep == Subsystem::A)
          zeta(i, k) += rho(2 * k + j, 2 * i + j);
        else
          zeta(i, k) += rho(2 * j + k, 2 * j + i);
      }
  return DensityMatrix(zeta);
}

double concurrence_pure(const PureTwoQubitState& state) {
  return 2.0 * std::abs(state.amplitude(0, 0) * state.amplitude(1, 1) -
                        state.amplitude(0, 1) * state.amplitude(1, 0));
}

double concurrence_mixed(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw InvalidInput("invalid state: concurrence_mixed needs a 4x4 density matrix");
  const auto eig = hermitian_eigen(rho.matrix());
  Matrix root(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double s = std::sqrt(std::max(eig.values[k], 0.0));
    if (s == 0.0) continue;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        root(r, c) += s * eig.vectors(r, k) * std::conj(eig.vectors(c, k));
  }
  const Matrix yy = kron(pauli::y(), pauli::y());
  const auto l = singular_values(root * yy * root.conjugate());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double entropy_from_concurrence(double concurrence) {
  if (!(concurrence >= -1e-12 && concurrence <= 1.0 + 1e-12))
    throw InvalidInput("concurrence must lie in [0, 1], got " + fmt_double(concurrence));
  const double c = std::clamp(concurrence, 0.0, 1.0);
  const double root = std::sqrt(1.0 - c * c);
  const double hi = 0.5 * (1.0 + root);
  const double lo = c * c / (2.0 * (1.0 + root));  // (1 - root) / 2 without cancellation
  auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  return term(hi) + term(lo);
}

double entropy_direct(const DensityMatrix& rho) {
  double s = 0.0;
  for (double p : rho.spectrum())
    if (p > 0.0) s -= p * std::log2(p);
  return s;
}

double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2) {
  if (r1.dim() != r2.dim()) throw InvalidInput("trace_distance: dimension mismatch");
  double s = 0.0;
  for (double v : hermitian_eigenvalues(r1.matrix() - r2.matrix())) s += std::abs(v);
  return 0.5 * s;
}

double purity(const DensityMatrix& rho) {
  double s = 0.0;
  for (std::size_t r = 0; r < rho.dim(); ++r)
    for (std::size_t c = 0; c < rho.dim(); ++c) s += std::norm(rho(r, c));
  return s;
}

double det2(const DensityMatrix& zeta) {
  if (zeta.dim() != 2) throw InvalidInput("det2 needs a single-qubit state");
  return zeta(0, 0).real() * zeta(1, 1).real() - std::norm(zeta(0, 1));
}

std::array<double, 3> bloch_vector(const DensityMatrix& zeta) {
  if (zeta.dim() != 2) throw InvalidInput("bloch_vector needs a single-qubit state");
  const cplx lower = zeta(1, 0);
  return {2.0 * lower.real(), 2.0 * lower.imag(), zeta(0, 0).real() - zeta(1, 1).real()};
}

}  // namespace wvconc
