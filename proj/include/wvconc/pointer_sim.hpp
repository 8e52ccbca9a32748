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
#include <vector>

#include "wvconc/concurrence_estimator.hpp"
#include "wvconc/weak_values.hpp"

namespace wvconc {

/// Cell-centred grid over [-extent, extent]^2 in beam-waist units.
/// Samples are stored row-major: index = iy * nx + ix.
class PointerGrid {
 public:
  static constexpr int kDefaultSize = 512;
  static constexpr double kDefaultExtent = 6.0;

  PointerGrid() : PointerGrid(kDefaultSize, kDefaultSize, kDefaultExtent) {}
  /// Requires nx, ny >= 64 and extent >= 4.
  PointerGrid(int nx, int ny, double extent);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double extent() const { return extent_; }
  double dx() const { return 2.0 * extent_ / nx_; }
  double dy() const { return 2.0 * extent_ / ny_; }
  double cell_area() const { return dx() * dy(); }
  double x(int ix) const { return -extent_ + (ix + 0.5) * dx(); }
  double y(int iy) const { return -extent_ + (iy + 0.5) * dy(); }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_); }

  friend bool operator==(const PointerGrid&, const PointerGrid&) = default;

 private:
  int nx_;
  int ny_;
  double extent_;
};

class ComplexField {
 public:
  ComplexField(PointerGrid grid, std::vector<cplx> values);
  const PointerGrid& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  cplx at(int ix, int iy) const { return values_[static_cast<std::size_t>(iy) * grid_.nx() + ix]; }

 private:
  PointerGrid grid_;
  std::vector<cplx> values_;
};

/// Nonnegative sampled intensity. Immutable once built.
class IntensityImage {
 public:
  IntensityImage(PointerGrid grid, std::vector<double> values);
  const PointerGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double at(int ix, int iy) const { return values_[static_cast<std::size_t>(iy) * grid_.nx() + ix]; }

 private:
  PointerGrid grid_;
  std::vector<double> values_;
};

inline constexpr double kWeaknessThreshold = 0.1;

/// System-pointer coupling in beam-waist units.
class CouplingStrength {
 public:
  explicit CouplingStrength(double lambda);
  double value() const { return lambda_; }
  /// lambda * max(1, |w|); the first-order picture needs this well below 1.
  double weakness_margin(double weak_value_magnitude) const;
  bool weak_enough(double weak_value_magnitude) const {
    return weakness_margin(weak_value_magnitude) < kWeaknessThreshold;
  }

 private:
  double lambda_;
};

/// First-order Laguerre-Gaussian mode (x + i y) exp(-(x^2 + y^2)), evaluated
/// analytically at any point and scaled so its discrete intensity integral
/// on `grid` is 1.
class LgPointer {
 public:
  explicit LgPointer(const PointerGrid& grid);
  cplx operator()(double x, double y) const;
  double scale() const { return scale_; }

 private:
  double scale_;
};

ComplexField lg_mode_field(const PointerGrid& grid);

enum class PostSelection { Zero, One };

/// Post-selected pointer intensity after the exact coupling
/// exp(-i lambda sigma_x P_x):
///   sum_{j,k = +-1} <phi|Pi_j rho Pi_k|phi> f(x - j lambda, y) conj(f(x - k lambda, y)),
/// with Pi_+- = (1 +- sigma_x) / 2. `rho_a` is in the reduced-state layout of
/// `reduced_state`, so the operator coupled to the pointer is its transpose.
/// Requires lambda < extent / 4.
IntensityImage exact_intensity(const DensityMatrix& rho_a, PostSelection post, const CouplingStrength& lambda,
                               const PointerGrid& grid);

struct ApproxIntensity {
  IntensityImage image;
  double weakness_margin = 0.0;
  bool weakness_violated = false;
};

/// First-order picture: p |f(x - lambda Re w, y - lambda Im w)|^2, a rigid
/// shift whose centroid is lambda (Re w, Im w). Computed even when the
/// weakness condition fails; the flag reports it.
ApproxIntensity approx_intensity(cplx w, double p, const CouplingStrength& lambda, const PointerGrid& grid);

struct Centroid {
  double qx = 0.0;
  double qy = 0.0;
};

double total_intensity(const IntensityImage& image);
/// Intensity-weighted mean position. Throws NumericalFailure on a dark image.
Centroid centroid(const IntensityImage& image);
/// Unnormalized first moment: integral of (x + i y) I(x, y).
cplx first_moment(const IntensityImage& image);

/// (qx + i qy) / lambda; undefined marker for a dark image. The denominator
/// field carries the total intensity.
WeakValueResult extract_weak_value(const IntensityImage& image, const CouplingStrength& lambda);

/// first_moment / (lambda p) with a separately calibrated branch
/// probability p. Undefined when p < epsilon_den.
WeakValueResult extract_weak_value(const IntensityImage& image, const CouplingStrength& lambda,
                                   double branch_probability,
                                   double epsilon_den = WeakValueThresholds{}.epsilon_den);

/// Re integral f(x - lambda, y) conj(f(x + lambda, y)) on the grid.
/// Analytically exp(-2 lambda^2) (1 - 2 lambda^2).
double shifted_mode_overlap(const CouplingStrength& lambda, const PointerGrid& grid);

/// Undoes the O(lambda^2) redistribution between the two post-selected
/// branches: raw totals obey t0 - t1 = overlap (p0 - p1). Returns (p0, p1).
std::array<double, 2> calibrated_branch_probabilities(double t0, double t1, double overlap);

struct OpticalRun {
  IntensityImage image0;
  IntensityImage image1;
  EstimateReport report;
};

/// Both post-selected images, the weak values read from them, and the
/// concurrence estimate of the reconstructed reduced state.
OpticalRun simulate_optics(const DensityMatrix& rho_a, const CouplingStrength& lambda, const PointerGrid& grid,
                           const WeakValueThresholds& thresholds = {});

EstimateReport run_optical_estimate(const DensityMatrix& rho_a, const CouplingStrength& lambda,
                                    const PointerGrid& grid, const WeakValueThresholds& thresholds = {});

}  // namespace wvconc
