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

#include "wvconc/photon_mc.hpp"

#include <algorithm>
#include <cmath>

#include "wvconc/errors.hpp"

namespace wvconc {

ImageSampler::ImageSampler(const IntensityImage& image) : grid_(image.grid()) {
  const auto& v = image.values();
  cdf_.resize(v.size());
  double running = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    running += v[i];
    cdf_[i] = running;
  }
  if (!(running > 0.0)) throw NumericalFailure("zero-intensity image: nothing to sample");
  for (auto& c : cdf_) c /= running;
  cdf_.back() = 1.0;

  const std::size_t slots = cdf_.size();
  guide_.resize(slots);
  std::size_t cell = 0;
  for (std::size_t k = 0; k < slots; ++k) {
    const double threshold = static_cast<double>(k) / static_cast<double>(slots);
    while (cdf_[cell] <= threshold) ++cell;
    guide_[k] = static_cast<std::uint32_t>(cell);
  }
}

std::array<double, 2> ImageSampler::sample(Rng& rng) const {
  const double u = rng.uniform();
  std::size_t cell = guide_[static_cast<std::size_t>(u * static_cast<double>(guide_.size()))];
  while (cdf_[cell] <= u) ++cell;
  const int ix = static_cast<int>(cell % static_cast<std::size_t>(grid_.nx()));
  const int iy = static_cast<int>(cell / static_cast<std::size_t>(grid_.nx()));
  const double jx = rng.uniform() - 0.5;
  const double jy = rng.uniform() - 0.5;
  return {grid_.x(ix) + jx * grid_.dx(), grid_.y(iy) + jy * grid_.dy()};
}

DetectionRun sample_positions(const IntensityImage& image, std::size_t n, double efficiency, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("sample_positions needs n >= 1");
  if (!(efficiency > 0.0 && efficiency <= 1.0)) throw InvalidInput("detection efficiency must lie in (0, 1]");
  const ImageSampler sampler(image);
  Rng rng(seed);
  DetectionRun run;
  run.efficiency = efficiency;
  run.seed = seed;
  run.xs.resize(n);
  run.ys.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto [x, y] = sampler.sample(rng);
    run.xs[k] = x;
    run.ys[k] = y;
  }
  // Thinning is position-independent, so only the number of misses needs drawing.
  Rng losses(derive_stream_seed(seed, 0));
  run.n_emitted = n + losses.negative_binomial(n, efficiency);
  return run;
}

McCentroid mc_centroid(const DetectionRun& run) {
  const std::size_t n = run.n_detected();
  if (n < 2) throw InvalidInput("insufficient samples: centroid statistics need at least 2 detections");
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sx += run.xs[k];
    sy += run.ys[k];
  }
  const double dn = static_cast<double>(n);
  const double mx = sx / dn, my = sy / dn;
  double vx = 0.0, vy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    vx += (run.xs[k] - mx) * (run.xs[k] - mx);
    vy += (run.ys[k] - my) * (run.ys[k] - my);
  }
  return {mx, my, std::sqrt(vx / (dn - 1.0) / dn), std::sqrt(vy / (dn - 1.0) / dn)};
}

namespace {

struct BranchData {
  std::uint64_t count = 0;
  bool has_centroid = false;
  McCentroid c;
};

struct PairInputs {
  double lambda;
  double overlap;
  std::uint64_t total;
};

// Weak value from a branch centroid: first moment (fraction * centroid) over lambda p.
WeakValueResult branch_weak_value(double fraction, double qx, double qy, double p, const PairInputs& in,
                                  bool dark) {
  WeakValueResult w;
  w.denominator = p;
  if (!dark) w.value = fraction * cplx(qx, qy) / (in.lambda * p);
  return w;
}

double percentile(std::vector<double> sorted_values, double q) {
  std::sort(sorted_values.begin(), sorted_values.end());
  const auto idx = static_cast<std::size_t>(std::llround(q * static_cast<double>(sorted_values.size() - 1)));
  return sorted_values[std::min(idx, sorted_values.size() - 1)];
}

}  // namespace

McRun mc_run(const DensityMatrix& rho_a, const McConfig& config) {
  if (config.n_per_branch < 1) throw InvalidInput("photon count per branch must be positive");
  if (config.bootstrap_resamples < 2) throw InvalidInput("bootstrap needs at least 2 resamples");
  const CouplingStrength lambda(config.lambda);
  const auto image0 = exact_intensity(rho_a, PostSelection::Zero, lambda, config.grid);
  const auto image1 = exact_intensity(rho_a, PostSelection::One, lambda, config.grid);
  const double t0 = total_intensity(image0);
  const double t1 = total_intensity(image1);
  const double overlap = shifted_mode_overlap(lambda, config.grid);
  const PairInputs in{config.lambda, overlap, 2 * static_cast<std::uint64_t>(config.n_per_branch)};
  const double total = static_cast<double>(in.total);

  Rng split(derive_stream_seed(config.seed, 0));
  std::array<BranchData, 2> branch;
  branch[0].count = split.binomial(in.total, t0 / (t0 + t1));
  branch[1].count = in.total - branch[0].count;

  McRun out;
  std::array<DetectionRun*, 2> runs{&out.branch0, &out.branch1};
  const std::array<const IntensityImage*, 2> images{&image0, &image1};
  for (std::size_t b = 0; b < 2; ++b) {
    if (branch[b].count == 0) continue;
    *runs[b] = sample_positions(*images[b], branch[b].count, config.efficiency, derive_stream_seed(config.seed, 1 + b));
    if (branch[b].count >= 2) {
      branch[b].c = mc_centroid(*runs[b]);
      branch[b].has_centroid = true;
    }
  }

  const double f0 = static_cast<double>(branch[0].count) / total;
  const double f1 = 1.0 - f0;
  const auto p = calibrated_branch_probabilities(f0, f1, overlap);
  const std::array<double, 2> fraction{f0, f1};

  // A branch is dark when its calibrated probability is compatible with zero.
  std::array<bool, 2> dark{};
  std::array<double, 2> se_w{};
  for (std::size_t b = 0; b < 2; ++b) {
    const double se_p = std::sqrt(fraction[b] * (1.0 - fraction[b]) / total) / overlap;
    dark[b] = !branch[b].has_centroid || p[b] < config.thresholds.epsilon_den || p[b] <= config.origin_z * se_p;
    if (!dark[b])
      se_w[b] = fraction[b] * std::hypot(branch[b].c.se_x, branch[b].c.se_y) / (config.lambda * p[b]);
  }

  auto make_pair = [&](const std::array<double, 2>& frac, const std::array<double, 2>& prob,
                       const std::array<std::array<double, 2>, 2>& q) {
    WeakValuePair pair;
    pair.w0 = branch_weak_value(frac[0], q[0][0], q[0][1], prob[0], in, dark[0]);
    pair.w1 = branch_weak_value(frac[1], q[1][0], q[1][1], prob[1], in, dark[1]);
    pair.p0 = prob[0];
    pair.p1 = prob[1];
    return pair;
  };

  // Both weak values compatible with zero puts the pair at the origin.
  auto vanishing = [&](const WeakValuePair& p) {
    const double m0 = std::abs(*p.w0.value), m1 = std::abs(*p.w1.value);
    const bool v0 = m0 <= config.origin_z * se_w[0] || m0 < config.thresholds.epsilon_origin;
    const bool v1 = m1 <= config.origin_z * se_w[1] || m1 < config.thresholds.epsilon_origin;
    return v0 && v1;
  };

  const std::array<std::array<double, 2>, 2> q{{{branch[0].c.qx, branch[0].c.qy}, {branch[1].c.qx, branch[1].c.qy}}};
  WeakValuePair pair = make_pair(fraction, p, q);
  if (dark[0] || dark[1])
    pair.regime = Regime::Undefined;
  else
    pair.regime = vanishing(pair) ? Regime::OriginSingular : Regime::Regular;
  EstimateReport report = estimate_from_pair(pair, config.thresholds);

  // Parametric bootstrap: branch split and centroids redrawn from their sampling distributions.
  Rng boot(derive_stream_seed(config.seed, 3));
  std::vector<double> replicas;
  replicas.reserve(static_cast<std::size_t>(config.bootstrap_resamples));
  for (int r = 0; r < config.bootstrap_resamples; ++r) {
    const double rf0 = static_cast<double>(boot.binomial(in.total, f0)) / total;
    const std::array<double, 2> rfrac{rf0, 1.0 - rf0};
    const auto rp = calibrated_branch_probabilities(rfrac[0], rfrac[1], overlap);
    std::array<std::array<double, 2>, 2> rq = q;
    for (std::size_t b = 0; b < 2; ++b) {
      rq[b][0] += branch[b].c.se_x * boot.normal();
      rq[b][1] += branch[b].c.se_y * boot.normal();
    }
    // Each replicate is classified afresh so regime ambiguity shows up in the spread.
    double c = 0.0;
    if (pair.regime != Regime::Undefined) {
      WeakValuePair rpair = make_pair(rfrac, rp, rq);
      if (rp[0] < config.thresholds.epsilon_den || rp[1] < config.thresholds.epsilon_den) {
        c = 0.0;
      } else if (vanishing(rpair)) {
        c = concurrence_origin(rp[0], rp[1]);
      } else {
        rpair.regime = Regime::Regular;
        c = estimate_from_pair(rpair, config.thresholds).concurrence;
      }
    }
    replicas.push_back(std::clamp(c, 0.0, 1.0));
  }
  double mean = 0.0;
  for (double c : replicas) mean += c;
  mean /= static_cast<double>(replicas.size());
  double var = 0.0;
  for (double c : replicas) var += (c - mean) * (c - mean);
  var /= static_cast<double>(replicas.size() - 1);
  report.uncertainty = Uncertainty{std::sqrt(var), percentile(replicas, 0.00135), percentile(replicas, 0.99865),
                                   config.bootstrap_resamples};

  report.add("lambda", config.lambda);
  report.add("grid_nx", config.grid.nx());
  report.add("grid_ny", config.grid.ny());
  report.add("grid_extent", config.grid.extent());
  report.add("photons_per_branch", static_cast<double>(config.n_per_branch));
  report.add("efficiency", config.efficiency);
  report.add("detected_0", static_cast<double>(branch[0].count));
  report.add("detected_1", static_cast<double>(branch[1].count));
  report.add("emitted_0", static_cast<double>(out.branch0.n_emitted));
  report.add("emitted_1", static_cast<double>(out.branch1.n_emitted));
  report.add("centroid_x0", branch[0].c.qx);
  report.add("centroid_y0", branch[0].c.qy);
  report.add("centroid_x1", branch[1].c.qx);
  report.add("centroid_y1", branch[1].c.qy);
  report.add("se_x0", branch[0].c.se_x);
  report.add("se_y0", branch[0].c.se_y);
  report.add("se_x1", branch[1].c.se_x);
  report.add("se_y1", branch[1].c.se_y);
  report.add("se_w0", se_w[0]);
  report.add("se_w1", se_w[1]);
  report.add("pointer_overlap", overlap);
  report.add("calibrated_p0", p[0]);
  report.add("calibrated_p1", p[1]);
  out.report = std::move(report);
  return out;
}

EstimateReport mc_estimate(const DensityMatrix& rho_a, const McConfig& config) { return mc_run(rho_a, config).report; }

}  // namespace wvconc
