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

#include "wvconc/weak_values.hpp"

#include <cmath>
#include <string>

#include "wvconc/errors.hpp"

namespace wvconc {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Regular:
      return "Regular";
    case Regime::OriginSingular:
      return "OriginSingular";
    case Regime::Undefined:
      return "Undefined";
  }
  return "Undefined";
}

Regime regime_from_string(std::string_view name) {
  if (name == "Regular") return Regime::Regular;
  if (name == "OriginSingular") return Regime::OriginSingular;
  if (name == "Undefined") return Regime::Undefined;
  throw InvalidInput("unknown regime '" + std::string(name) + "'");
}

WeakValueResult weak_value(const Matrix& observable, const DensityMatrix& rho, const std::array<cplx, 2>& postselect,
                           double epsilon_den) {
  if (rho.dim() != 2) throw InvalidInput("weak_value: state must be a single qubit");
  if (observable.rows() != 2 || observable.cols() != 2) throw InvalidInput("weak_value: observable must be 2x2");
  if (observable.hermiticity_defect() > kHermiticityTolerance)
    throw InvalidInput("weak_value: observable is not Hermitian");
  const double norm = std::norm(postselect[0]) + std::norm(postselect[1]);
  if (std::abs(norm - 1.0) > kNormTolerance) throw InvalidInput("weak_value: post-selection vector is not unit length");

  const std::vector<cplx> phi{postselect[0], postselect[1]};
  const auto rho_phi = rho.matrix() * phi;
  const auto a_rho_phi = observable * rho_phi;
  cplx numerator = 0.0;
  cplx denominator = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    numerator += std::conj(phi[k]) * a_rho_phi[k];
    denominator += std::conj(phi[k]) * rho_phi[k];
  }
  WeakValueResult out;
  out.denominator = std::max(denominator.real(), 0.0);
  if (out.denominator >= epsilon_den) out.value = numerator / out.denominator;
  return out;
}

Regime classify_regime(const WeakValuePair& pair, const WeakValueThresholds& thresholds) {
  if (!pair.w0.defined() || !pair.w1.defined() || pair.w0.denominator < thresholds.epsilon_den ||
      pair.w1.denominator < thresholds.epsilon_den)
    return Regime::Undefined;
  if (std::abs(*pair.w0.value) < thresholds.epsilon_origin && std::abs(*pair.w1.value) < thresholds.epsilon_origin)
    return Regime::OriginSingular;
  return Regime::Regular;
}

WeakValuePair sigma_x_weak_pair(const DensityMatrix& rho_a, const WeakValueThresholds& thresholds) {
  if (rho_a.dim() != 2) throw InvalidInput("invalid state: sigma_x_weak_pair needs a single-qubit state");
  const Matrix sx = pauli::x();
  WeakValuePair pair;
  pair.w0 = weak_value(sx, rho_a, {1.0, 0.0}, thresholds.epsilon_den);
  pair.w1 = weak_value(sx, rho_a, {0.0, 1.0}, thresholds.epsilon_den);
  pair.p0 = pair.w0.denominator;
  pair.p1 = pair.w1.denominator;
  pair.regime = classify_regime(pair, thresholds);
  return pair;
}

}  // namespace wvconc
