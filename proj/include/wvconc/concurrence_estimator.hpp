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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wvconc/weak_values.hpp"

namespace wvconc {

enum class Route { WeakValueFormula, Equatorial, DiagonalIntensity, UndefinedLimit };

std::string_view to_string(Route route);

/// Products m0 * m1 up to 1 + this are treated as measurement overshoot and clamped to 1.
inline constexpr double kProductTolerance = 1e-9;
/// Largest |p0 w0 - conj(p1 w1)| accepted by the strict reconstruction.
inline constexpr double kReconstructionTolerance = 1e-6;

struct Diagnostic {
  std::string name;
  double value = 0.0;
};

/// Statistical spread of an estimate obtained by resampling.
struct Uncertainty {
  double sigma = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int resamples = 0;
};

struct EstimateReport {
  double concurrence = 0.0;
  Route route = Route::UndefinedLimit;
  double entropy = 0.0;
  WeakValuePair pair;
  DensityMatrix reconstructed_rho = DensityMatrix::maximally_mixed(2);
  std::vector<Diagnostic> diagnostics;
  std::optional<Uncertainty> uncertainty;

  /// Value of the named diagnostic; throws if absent.
  double diagnostic(std::string_view name) const;
  bool has_diagnostic(std::string_view name) const;
  void add(std::string name, double value) { diagnostics.push_back({std::move(name), value}); }
};

/// C = sqrt(4 (1 - m0 m1) m0 m1 / (m0 + m1)^2) for weak-value magnitudes m0, m1.
/// Throws when both are zero (the origin has no value) or when the product
/// exceeds 1 + kProductTolerance.
double concurrence_from_weak_values(double m0, double m1);

/// sqrt(1 - m^2) on the equatorial line m0 = m1 = m. Throws for m > 1.
double concurrence_equatorial(double m);

/// 2 sqrt(p0 p1). Assumes the joint state is pure.
double concurrence_origin(double p0, double p1);

/// Dispatches on the regime of the state's sigma_x weak values.
EstimateReport estimate(const DensityMatrix& rho_a, const WeakValueThresholds& thresholds = {});

/// Inverts the weak-value map: diagonal (p0, p1), zeta[1][0] = p0 w0 and
/// zeta[0][1] = p1 w1. Throws when p0 w0 and conj(p1 w1) disagree by more
/// than `tolerance`.
DensityMatrix reconstruct_reduced_state(const WeakValuePair& pair, double tolerance = kReconstructionTolerance);

/// Reconstruction for measured pairs that carry noise: the coherence is the
/// average of p0 w0 and conj(p1 w1), shrunk if needed so the result stays
/// positive. Pairs tagged OriginSingular or Undefined get a diagonal state.
DensityMatrix fit_reduced_state(const WeakValuePair& pair);

/// Estimate from a measured pair. The pair's regime tag is honoured as given;
/// the state is fitted, then run through `estimate`. Adds a
/// `hermiticity_residual` diagnostic for the measured pair.
EstimateReport estimate_from_pair(const WeakValuePair& measured, const WeakValueThresholds& thresholds = {});

struct SweepPoint {
  double m0 = 0.0;
  double m1 = 0.0;
  double concurrence = 0.0;  ///< NaN where undefined or excluded
};

/// Uniform `n` x `n` grid over [0, max_magnitude]^2, m0-major. Points with
/// m0 m1 > 1 (beyond tolerance) and the origin itself carry NaN.
std::vector<SweepPoint> concurrence_sweep(int n, double max_magnitude = 2.0);

}  // namespace wvconc
