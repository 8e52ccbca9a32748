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
#include <cstdint>
#include <vector>

#include "wvconc/pointer_sim.hpp"
#include "wvconc/rng.hpp"

namespace wvconc {

/// Inverse-CDF sampler over a flattened image with a guide table; positions
/// get uniform jitter inside the chosen cell.
class ImageSampler {
 public:
  explicit ImageSampler(const IntensityImage& image);
  std::array<double, 2> sample(Rng& rng) const;

 private:
  PointerGrid grid_;
  std::vector<double> cdf_;
  std::vector<std::uint32_t> guide_;
};

struct DetectionRun {
  std::vector<double> xs;
  std::vector<double> ys;
  std::uint64_t n_emitted = 0;
  double efficiency = 1.0;
  std::uint64_t seed = 0;

  std::size_t n_detected() const { return xs.size(); }
};

/// `n` detected photons drawn i.i.d. from the normalized image. Each emitted
/// photon is detected with probability `efficiency`; the emitted count is
/// tracked. Deterministic for a fixed seed.
DetectionRun sample_positions(const IntensityImage& image, std::size_t n, double efficiency, std::uint64_t seed);

struct McCentroid {
  double qx = 0.0;
  double qy = 0.0;
  double se_x = 0.0;
  double se_y = 0.0;
};

/// Sample means and standard errors (sample std / sqrt(n)). Needs n >= 2.
McCentroid mc_centroid(const DetectionRun& run);

struct McConfig {
  double lambda = 0.01;
  PointerGrid grid{};
  std::size_t n_per_branch = 1'000'000;
  double efficiency = 1.0;
  std::uint64_t seed = 42;
  int bootstrap_resamples = 200;
  /// Weak values within this many standard errors of zero count as vanishing.
  double origin_z = 3.0;
  WeakValueThresholds thresholds{};
};

/// Finite-photon estimate. The 2 * n_per_branch detections are split between
/// the branches binomially according to the branch intensities. Uncertainty
/// comes from a parametric bootstrap that redraws branch counts and centroids
/// from their sampling distributions.
EstimateReport mc_estimate(const DensityMatrix& rho_a, const McConfig& config);

/// Same as `mc_estimate`, also returning the raw detections per branch.
struct McRun {
  EstimateReport report;
  DetectionRun branch0;
  DetectionRun branch1;
};
McRun mc_run(const DensityMatrix& rho_a, const McConfig& config);

}  // namespace wvconc
