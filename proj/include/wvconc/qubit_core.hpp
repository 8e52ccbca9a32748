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

#include <array>
#include <complex>
#include <vector>

#include "wvconc/linalg.hpp"

namespace wvconc {

using Amplitude = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPositivitySlack = 1e-10;

enum class Subsystem { A, B };

/// a00|00> + a01|01> + a10|10> + a11|11>, unit norm within 1e-12.
class PureTwoQubitState {
 public:
  /// Rejects non-finite or non-normalized amplitudes. Use `normalized` to rescale.
  explicit PureTwoQubitState(const std::array<Amplitude, 4>& amplitudes);
  static PureTwoQubitState normalized(const std::array<Amplitude, 4>& amplitudes);

  const std::array<Amplitude, 4>& amplitudes() const { return a_; }
  /// Amplitude a_ij for |i>_A |j>_B.
  Amplitude amplitude(int i, int j) const { return a_[static_cast<std::size_t>(2 * i + j)]; }
  std::vector<cplx> ket() const { return {a_.begin(), a_.end()}; }

 private:
  std::array<Amplitude, 4> a_;
};

/// Hermitian, unit-trace, positive (eigenvalues >= -1e-10) matrix of dimension 2 or 4.
/// For dimension 4 the basis order is |00>, |01>, |10>, |11>.
class DensityMatrix {
 public:
  /// Validates every invariant and names the first one violated.
  explicit DensityMatrix(Matrix entries);

  static DensityMatrix from_pure(const PureTwoQubitState& state);
  static DensityMatrix maximally_mixed(std::size_t dim);
  /// |v><v| for a unit vector of dimension 2 or 4.
  static DensityMatrix projector(const std::vector<cplx>& v);

  std::size_t dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  /// Eigenvalues ascending, negative slack clamped to zero.
  std::vector<double> spectrum() const;

 private:
  Matrix m_;
};

/// Reduced single-qubit state.
///
/// Entries use the layout zeta[i][k] = sum_j conj(a_ij) a_kj, i.e. the
/// off-diagonal element zeta[0][1] = a00* a10 + a01* a11. This is the
/// transpose of the textbook partial trace; every scalar derived from it
/// (determinant, purity, spectrum, entropy, trace distance) is unchanged, and
/// the sigma_x weak values read off a Laguerre-Gaussian pointer are exactly
/// the plain weak values of this matrix. For a 4x4 input the same layout
/// is applied linearly.
DensityMatrix reduced_state(const PureTwoQubitState& state, Subsystem keep);
DensityMatrix reduced_state(const DensityMatrix& rho, Subsystem keep);

/// 2 |a00 a11 - a01 a10|.
double concurrence_pure(const PureTwoQubitState& state);

/// Spin-flip formula max(0, l1 - l2 - l3 - l4), where l_i are the decreasing
/// singular values of sqrt(rho) (Y x Y) conj(sqrt(rho)).
double concurrence_mixed(const DensityMatrix& rho);

/// Binary entropy of (1 + sqrt(1 - C^2)) / 2 in bits. Throws for C outside [0, 1].
double entropy_from_concurrence(double concurrence);

/// -sum lambda log2 lambda over the spectrum, with 0 log 0 = 0.
double entropy_direct(const DensityMatrix& rho);

/// Half the trace norm of the difference. Throws on dimension mismatch.
double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2);

double purity(const DensityMatrix& rho);

/// Determinant of a single-qubit state, in [0, 1/4].
double det2(const DensityMatrix& zeta);

/// (x, y, z) with zeta = (I + x X + y Y + z Z) / 2 for the stored entries.
std::array<double, 3> bloch_vector(const DensityMatrix& zeta);

}  // namespace wvconc
