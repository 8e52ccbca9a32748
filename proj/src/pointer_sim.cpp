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

#include "wvconc/pointer_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wvconc/errors.hpp"

namespace wvconc {

PointerGrid::PointerGrid(int nx, int ny, double extent) : nx_(nx), ny_(ny), extent_(extent) {
  if (nx < 64 || ny < 64) throw InvalidInput("pointer grid needs at least 64 samples per axis");
  if (!(extent >= 4.0) || !std::isfinite(extent))
    throw InvalidInput("grid too small: extent must be at least 4 beam waists");
}

ComplexField::ComplexField(PointerGrid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw InvalidInput("field size does not match grid");
}

IntensityImage::IntensityImage(PointerGrid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw InvalidInput("image size does not match grid");
  for (double v : values_)
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidInput("intensity values must be finite and nonnegative");
}

CouplingStrength::CouplingStrength(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidInput("coupling strength lambda must be positive");
}

double CouplingStrength::weakness_margin(double weak_value_magnitude) const {
  return lambda_ * std::max(1.0, weak_value_magnitude);
}

namespace {

cplx lg_shape(double x, double y) { return cplx(x, y) * std::exp(-(x * x + y * y)); }

// exp(-(x - shift)^2) per column and exp(-y^2) per row: the mode is separable
// up to the (x + i y) prefactor.
struct ShiftedMode {
  std::vector<double> xs, gx, ys, gy;
  double scale;

  ShiftedMode(const PointerGrid& grid, double shift_x, double shift_y, double scale_) : scale(scale_) {
    xs.resize(grid.nx());
    gx.resize(grid.nx());
    ys.resize(grid.ny());
    gy.resize(grid.ny());
    for (int i = 0; i < grid.nx(); ++i) {
      xs[i] = grid.x(i) - shift_x;
      gx[i] = std::exp(-xs[i] * xs[i]);
    }
    for (int j = 0; j < grid.ny(); ++j) {
      ys[j] = grid.y(j) - shift_y;
      gy[j] = std::exp(-ys[j] * ys[j]);
    }
  }
  cplx at(int i, int j) const { return scale * gx[i] * gy[j] * cplx(xs[i], ys[j]); }
};

void check_shift(double shift, const PointerGrid& grid) {
  if (!(std::abs(shift) < grid.extent() / 4.0))
    throw InvalidInput("shift off grid: displacement must stay below extent / 4");
}

}  // namespace

LgPointer::LgPointer(const PointerGrid& grid) {
  double sum = 0.0;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) sum += std::norm(lg_shape(grid.x(i), grid.y(j)));
  scale_ = 1.0 / std::sqrt(sum * grid.cell_area());
}

cplx LgPointer::operator()(double x, double y) const { return scale_ * lg_shape(x, y); }

ComplexField lg_mode_field(const PointerGrid& grid) {
  const LgPointer mode(grid);
  std::vector<cplx> values(grid.size());
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) values[static_cast<std::size_t>(j) * grid.nx() + i] = mode(grid.x(i), grid.y(j));
  return ComplexField(grid, std::move(values));
}

IntensityImage exact_intensity(const DensityMatrix& rho_a, PostSelection post, const CouplingStrength& lambda,
                               const PointerGrid& grid) {
  if (rho_a.dim() != 2) throw InvalidInput("invalid state: exact_intensity needs a single-qubit state");
  const double l = lambda.value();
  check_shift(l, grid);

  const Matrix physical = rho_a.matrix().transpose();
  const Matrix id = Matrix::identity(2);
  const Matrix plus = 0.5 * (id + pauli::x());
  const Matrix minus = 0.5 * (id - pauli::x());
  const std::size_t b = post == PostSelection::Zero ? 0 : 1;
  auto coefficient = [&](const Matrix& pj, const Matrix& pk) { return (pj * physical * pk)(b, b); };
  const double c_pp = coefficient(plus, plus).real();
  const double c_mm = coefficient(minus, minus).real();
  const cplx c_pm = coefficient(plus, minus);

  const double scale = LgPointer(grid).scale();
  const ShiftedMode fp(grid, l, 0.0, scale);
  const ShiftedMode fm(grid, -l, 0.0, scale);
  std::vector<double> values(grid.size());
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      const cplx a = fp.at(i, j);
      const cplx m = fm.at(i, j);
      const double v = c_pp * std::norm(a) + c_mm * std::norm(m) + 2.0 * (c_pm * a * std::conj(m)).real();
      values[static_cast<std::size_t>(j) * grid.nx() + i] = std::max(v, 0.0);
    }
  return IntensityImage(grid, std::move(values));
}

ApproxIntensity approx_intensity(cplx w, double p, const CouplingStrength& lambda, const PointerGrid& grid) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidInput("branch probability must be nonnegative");
  const double l = lambda.value();
  check_shift(l * std::abs(w), grid);
  const ShiftedMode f(grid, l * w.real(), l * w.imag(), LgPointer(grid).scale());
  std::vector<double> values(grid.size());
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) values[static_cast<std::size_t>(j) * grid.nx() + i] = p * std::norm(f.at(i, j));
  const double margin = lambda.weakness_margin(std::abs(w));
  return {IntensityImage(grid, std::move(values)), margin, margin >= kWeaknessThreshold};
}

double total_intensity(const IntensityImage& image) {
  double sum = 0.0;
  for (double v : image.values()) sum += v;
  return sum * image.grid().cell_area();
}

cplx first_moment(const IntensityImage& image) {
  const auto& g = image.grid();
  double sx = 0.0, sy = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    const double y = g.y(j);
    for (int i = 0; i < g.nx(); ++i) {
      const double v = image.at(i, j);
      sx += g.x(i) * v;
      sy += y * v;
    }
  }
  return cplx(sx, sy) * g.cell_area();
}

Centroid centroid(const IntensityImage& image) {
  const double total = total_intensity(image);
  if (!(total > 0.0)) throw NumericalFailure("zero-intensity image: no signal on the pointer");
  const cplx m = first_moment(image);
  return {m.real() / total, m.imag() / total};
}

WeakValueResult extract_weak_value(const IntensityImage& image, const CouplingStrength& lambda) {
  WeakValueResult out;
  out.denominator = total_intensity(image);
  if (out.denominator > 0.0) {
    const auto c = centroid(image);
    out.value = cplx(c.qx, c.qy) / lambda.value();
  }
  return out;
}

WeakValueResult extract_weak_value(const IntensityImage& image, const CouplingStrength& lambda,
                                   double branch_probability, double epsilon_den) {
  WeakValueResult out;
  out.denominator = branch_probability;
  if (branch_probability >= epsilon_den) out.value = first_moment(image) / (lambda.value() * branch_probability);
  return out;
}

double shifted_mode_overlap(const CouplingStrength& lambda, const PointerGrid& grid) {
  const double l = lambda.value();
  check_shift(l, grid);
  const double scale = LgPointer(grid).scale();
  const ShiftedMode fp(grid, l, 0.0, scale);
  const ShiftedMode fm(grid, -l, 0.0, scale);
  double sum = 0.0;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) sum += (fp.at(i, j) * std::conj(fm.at(i, j))).real();
  return sum * grid.cell_area();
}

std::array<double, 2> calibrated_branch_probabilities(double t0, double t1, double overlap) {
  if (t0 < 0.0 || t1 < 0.0 || !(t0 + t1 > 0.0)) throw NumericalFailure("no post-selected intensity in either branch");
  if (!(overlap > 0.1)) throw NumericalFailure("shifted-mode overlap too small to calibrate branch intensities");
  const double diff = (t0 - t1) / ((t0 + t1) * overlap);
  const double p0 = std::clamp(0.5 * (1.0 + diff), 0.0, 1.0);
  return {p0, 1.0 - p0};
}

OpticalRun simulate_optics(const DensityMatrix& rho_a, const CouplingStrength& lambda, const PointerGrid& grid,
                           const WeakValueThresholds& thresholds) {
  auto image0 = exact_intensity(rho_a, PostSelection::Zero, lambda, grid);
  auto image1 = exact_intensity(rho_a, PostSelection::One, lambda, grid);
  const double t0 = total_intensity(image0);
  const double t1 = total_intensity(image1);
  const double overlap = shifted_mode_overlap(lambda, grid);
  const auto [p0, p1] = calibrated_branch_probabilities(t0, t1, overlap);

  WeakValuePair pair;
  pair.w0 = extract_weak_value(image0, lambda, p0, thresholds.epsilon_den);
  pair.w1 = extract_weak_value(image1, lambda, p1, thresholds.epsilon_den);
  pair.p0 = p0;
  pair.p1 = p1;
  pair.regime = classify_regime(pair, thresholds);

  EstimateReport report = estimate_from_pair(pair, thresholds);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const Centroid c0 = t0 > 0.0 ? centroid(image0) : Centroid{nan, nan};
  const Centroid c1 = t1 > 0.0 ? centroid(image1) : Centroid{nan, nan};
  const double margin0 = lambda.weakness_margin(pair.w0.defined() ? std::abs(*pair.w0.value) : 0.0);
  const double margin1 = lambda.weakness_margin(pair.w1.defined() ? std::abs(*pair.w1.value) : 0.0);
  report.add("lambda", lambda.value());
  report.add("grid_nx", grid.nx());
  report.add("grid_ny", grid.ny());
  report.add("grid_extent", grid.extent());
  report.add("centroid_x0", c0.qx);
  report.add("centroid_y0", c0.qy);
  report.add("centroid_x1", c1.qx);
  report.add("centroid_y1", c1.qy);
  report.add("total_intensity_0", t0);
  report.add("total_intensity_1", t1);
  report.add("calibrated_p0", p0);
  report.add("calibrated_p1", p1);
  report.add("pointer_overlap", overlap);
  report.add("weakness_margin_0", margin0);
  report.add("weakness_margin_1", margin1);
  report.add("weakness_warning", (margin0 >= kWeaknessThreshold || margin1 >= kWeaknessThreshold) ? 1.0 : 0.0);
  report.add("dark_branch", !pair.w0.defined() ? 0.0 : (!pair.w1.defined() ? 1.0 : -1.0));
  return {std::move(image0), std::move(image1), std::move(report)};
}

EstimateReport run_optical_estimate(const DensityMatrix& rho_a, const CouplingStrength& lambda,
                                    const PointerGrid& grid, const WeakValueThresholds& thresholds) {
  return simulate_optics(rho_a, lambda, grid, thresholds).report;
}

}  // namespace wvconc
