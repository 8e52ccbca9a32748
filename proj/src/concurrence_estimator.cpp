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

#include "wvconc/concurrence_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wvconc/errors.hpp"

namespace wvconc {

std::string_view to_string(Route route) {
  switch (route) {
    case Route::WeakValueFormula:
      return "WeakValueFormula";
    case Route::Equatorial:
      return "Equatorial";
    case Route::DiagonalIntensity:
      return "DiagonalIntensity";
    case Route::UndefinedLimit:
      return "UndefinedLimit";
  }
  return "UndefinedLimit";
}

double EstimateReport::diagnostic(std::string_view name) const {
  for (const auto& d : diagnostics)
    if (d.name == name) return d.value;
  throw InvalidInput("no diagnostic named '" + std::string(name) + "'");
}

bool EstimateReport::has_diagnostic(std::string_view name) const {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [&](const Diagnostic& d) { return d.name == name; });
}

double concurrence_from_weak_values(double m0, double m1) {
  if (!(m0 >= 0.0 && m1 >= 0.0) || !std::isfinite(m0) || !std::isfinite(m1))
    throw InvalidInput("weak-value magnitudes must be finite and nonnegative");
  if (m0 == 0.0 && m1 == 0.0)
    throw InvalidInput("both weak values vanish: concurrence is not a function of the weak values at the origin");
  double product = m0 * m1;
  if (product > 1.0 + kProductTolerance)
    throw InvalidInput("weak-value product |w0||w1| = " + std::to_string(product) + " exceeds 1");
  product = std::min(product, 1.0);
  const double sum = m0 + m1;
  return std::min(1.0, 2.0 * std::sqrt((1.0 - product) * product) / sum);
}

double concurrence_equatorial(double m) {
  if (!(m >= 0.0) || !std::isfinite(m)) throw InvalidInput("equatorial magnitude must be finite and nonnegative");
  if (m > 1.0 + kProductTolerance) throw InvalidInput("equatorial magnitude exceeds 1");
  m = std::min(m, 1.0);
  return std::sqrt((1.0 - m) * (1.0 + m));
}

double concurrence_origin(double p0, double p1) {
  if (p0 < 0.0 || p1 < 0.0) throw InvalidInput("post-selection probabilities must be nonnegative");
  return std::min(1.0, 2.0 * std::sqrt(p0 * p1));
}

namespace {

DensityMatrix diagonal_state(double p0, double p1) {
  const double s = p0 + p1;
  Matrix m(2, 2);
  m(0, 0) = p0 / s;
  m(1, 1) = p1 / s;
  return DensityMatrix(m);
}

void finish(EstimateReport& report) {
  report.concurrence = std::clamp(report.concurrence, 0.0, 1.0);
  report.entropy = entropy_from_concurrence(report.concurrence);
}

}  // namespace

EstimateReport estimate(const DensityMatrix& rho_a, const WeakValueThresholds& thresholds) {
  if (rho_a.dim() != 2) throw InvalidInput("invalid state: estimate needs a single-qubit reduced state");
  EstimateReport report;
  report.pair = sigma_x_weak_pair(rho_a, thresholds);
  const auto& pair = report.pair;
  report.add("p0", pair.p0);
  report.add("p1", pair.p1);

  switch (pair.regime) {
    case Regime::Undefined:
      // A dark branch forces the coherence and one diagonal entry to vanish.
      report.route = Route::UndefinedLimit;
      report.concurrence = 0.0;
      report.reconstructed_rho = diagonal_state(pair.p0, pair.p1);
      break;
    case Regime::OriginSingular:
      report.route = Route::DiagonalIntensity;
      report.concurrence = concurrence_origin(pair.p0, pair.p1);
      report.reconstructed_rho = reconstruct_reduced_state(pair);
      // Valid only for a pure joint state; mixed callers should use the robustness bounds.
      report.add("assumes_pure_joint_state", 1.0);
      break;
    case Regime::Regular: {
      const double m0 = std::abs(*pair.w0.value);
      const double m1 = std::abs(*pair.w1.value);
      report.add("m0", m0);
      report.add("m1", m1);
      report.add("product_m0_m1", m0 * m1);
      if (std::abs(m0 - m1) <= 1e-12 * std::max(m0, m1)) {
        report.route = Route::Equatorial;
        report.concurrence = concurrence_equatorial(0.5 * (m0 + m1));
      } else {
        report.route = Route::WeakValueFormula;
        report.concurrence = concurrence_from_weak_values(m0, m1);
      }
      report.reconstructed_rho = reconstruct_reduced_state(pair);
      break;
    }
  }
  finish(report);
  return report;
}

DensityMatrix reconstruct_reduced_state(const WeakValuePair& pair, double tolerance) {
  if (pair.p0 < 0.0 || pair.p1 < 0.0) throw InvalidInput("inconsistent pair: negative probability");
  if (std::abs(pair.p0 + pair.p1 - 1.0) > kTraceTolerance)
    throw InvalidInput("inconsistent pair: p0 + p1 differs from 1");
  if (pair.regime == Regime::Undefined || pair.regime == Regime::OriginSingular || !pair.w0.defined() ||
      !pair.w1.defined())
    return diagonal_state(pair.p0, pair.p1);

  const cplx lower = pair.p0 * *pair.w0.value;  // zeta[1][0]
  const cplx upper = pair.p1 * *pair.w1.value;  // zeta[0][1]
  const double mismatch = std::abs(lower - std::conj(upper));
  if (mismatch > tolerance)
    throw InvalidInput("inconsistent pair: p0 w0 and conj(p1 w1) differ by " + std::to_string(mismatch));
  const cplx coherence = 0.5 * (upper + std::conj(lower));
  Matrix m(2, 2);
  m(0, 0) = pair.p0;
  m(1, 1) = pair.p1;
  m(0, 1) = coherence;
  m(1, 0) = std::conj(coherence);
  return DensityMatrix(m);
}

DensityMatrix fit_reduced_state(const WeakValuePair& pair) {
  const double p0 = std::max(pair.p0, 0.0);
  const double p1 = std::max(pair.p1, 0.0);
  if (p0 + p1 <= 0.0) throw InvalidInput("inconsistent pair: no post-selected intensity");
  const double s = p0 + p1;
  if (pair.regime != Regime::Regular || !pair.w0.defined() || !pair.w1.defined()) return diagonal_state(p0, p1);

  cplx coherence = 0.5 * (p1 * *pair.w1.value + std::conj(p0 * *pair.w0.value)) / s;
  const double q0 = p0 / s, q1 = p1 / s;
  const double bound = std::sqrt(q0 * q1);
  if (std::abs(coherence) > bound) coherence *= bound / std::abs(coherence);
  Matrix m(2, 2);
  m(0, 0) = q0;
  m(1, 1) = q1;
  m(0, 1) = coherence;
  m(1, 0) = std::conj(coherence);
  return DensityMatrix(m);
}

EstimateReport estimate_from_pair(const WeakValuePair& measured, const WeakValueThresholds& thresholds) {
  const DensityMatrix fitted = fit_reduced_state(measured);
  // The measured tag wins: a diagonal fit must not be re-promoted and vice versa.
  WeakValueThresholds inner = thresholds;
  if (measured.regime == Regime::Regular) inner.epsilon_origin = std::numeric_limits<double>::min();
  EstimateReport report = estimate(fitted, inner);
  if (measured.regime == Regime::Undefined && report.route != Route::UndefinedLimit) {
    report.route = Route::UndefinedLimit;
    report.concurrence = 0.0;
    finish(report);
  }
  double residual = 0.0;
  if (measured.w0.defined() && measured.w1.defined())
    residual = std::abs(measured.p0 * *measured.w0.value - std::conj(measured.p1 * *measured.w1.value));
  report.pair = measured;
  report.add("hermiticity_residual", residual);
  return report;
}

std::vector<SweepPoint> concurrence_sweep(int n, double max_magnitude) {
  if (n < 2) throw InvalidInput("sweep needs at least 2 points per axis");
  if (!(max_magnitude > 0.0)) throw InvalidInput("sweep range must be positive");
  std::vector<SweepPoint> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < n; ++i) {
    const double m0 = max_magnitude * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double m1 = max_magnitude * j / (n - 1);
      double c = nan;
      if ((m0 > 0.0 || m1 > 0.0) && m0 * m1 <= 1.0 + kProductTolerance) c = concurrence_from_weak_values(m0, m1);
      out.push_back({m0, m1, c});
    }
  }
  return out;
}

}  // namespace wvconc
