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
#include <optional>
#include <string_view>

#include "wvconc/qubit_core.hpp"

namespace wvconc {

/// Thresholds that separate the estimation regimes.
struct WeakValueThresholds {
  /// Post-selection probability below this leaves the weak value undefined.
  double epsilon_den = 1e-12;
  /// Both |w| below this puts the pair at the origin singularity.
  double epsilon_origin = 1e-9;
};

/// A weak value, or the undefined marker when nothing survives post-selection.
struct WeakValueResult {
  std::optional<Amplitude> value;
  double denominator = 0.0;  ///< post-selection probability

  bool defined() const { return value.has_value(); }
};

enum class Regime { Regular, OriginSingular, Undefined };

std::string_view to_string(Regime regime);
Regime regime_from_string(std::string_view name);

/// sigma_x weak values for post-selection on |0> (w0) and |1> (w1).
struct WeakValuePair {
  WeakValueResult w0;
  WeakValueResult w1;
  double p0 = 0.0;
  double p1 = 0.0;
  Regime regime = Regime::Undefined;
};

/// tr[A rho |phi><phi|] / tr[rho |phi><phi|]. Throws for a non-Hermitian
/// observable or a post-selection vector that is not unit length.
WeakValueResult weak_value(const Matrix& observable, const DensityMatrix& rho, const std::array<cplx, 2>& postselect,
                           double epsilon_den = WeakValueThresholds{}.epsilon_den);

/// w0 = zeta[1][0] / zeta[0][0] and w1 = zeta[0][1] / zeta[1][1], with
/// p0 = zeta[0][0] and p1 = zeta[1][1]. The regime is assigned from the thresholds.
WeakValuePair sigma_x_weak_pair(const DensityMatrix& rho_a, const WeakValueThresholds& thresholds = {});

/// Undefined if either denominator is below epsilon_den, OriginSingular if
/// both magnitudes are below epsilon_origin, else Regular.
Regime classify_regime(const WeakValuePair& pair, const WeakValueThresholds& thresholds = {});

}  // namespace wvconc
