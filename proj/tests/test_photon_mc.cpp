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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "test_helpers.hpp"
#include "wvconc/errors.hpp"
#include "wvconc/photon_mc.hpp"

using namespace wvconc;
using namespace testing_util;

namespace {

IntensityImage lg_image(const PointerGrid& g) {
  const auto field = lg_mode_field(g);
  std::vector<double> v;
  for (const auto& f : field.values()) v.push_back(std::norm(f));
  return IntensityImage(g, v);
}

DensityMatrix rho_a(const oracle::Amps& a) { return reduced_state(to_state(a), Subsystem::A); }

}  // namespace

TEST(Seeds, StreamsAreDistinctAndStable) {
  EXPECT_EQ(derive_stream_seed(42, 0), derive_stream_seed(42, 0));
  EXPECT_NE(derive_stream_seed(42, 0), derive_stream_seed(42, 1));
  EXPECT_NE(derive_stream_seed(42, 0), derive_stream_seed(43, 0));
  Rng a(1), b(1);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    EXPECT_EQ(u, b.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Sampling, UniformImageMoments) {
  const PointerGrid g(64, 64, 4.0);
  const IntensityImage flat(g, std::vector<double>(g.size(), 1.0));
  const auto run = sample_positions(flat, 200000, 1.0, 7);
  const auto c = mc_centroid(run);
  EXPECT_NEAR(c.qx, 0.0, 5 * c.se_x);
  EXPECT_NEAR(c.qy, 0.0, 5 * c.se_y);
  const double sd = c.se_x * std::sqrt(static_cast<double>(run.n_detected()));
  EXPECT_NEAR(sd, 4.0 / std::sqrt(3.0), 0.01);
  for (std::size_t k = 0; k < run.n_detected(); ++k) {
    ASSERT_LE(std::abs(run.xs[k]), 4.0);
    ASSERT_LE(std::abs(run.ys[k]), 4.0);
  }
}

TEST(Sampling, LgCentroidWithinFiveSigma) {
  const PointerGrid g;
  const auto run = sample_positions(lg_image(g), 1'000'000, 1.0, 11);
  const auto c = mc_centroid(run);
  EXPECT_LT(std::abs(c.qx), 5 * c.se_x);
  EXPECT_LT(std::abs(c.qy), 5 * c.se_y);
  // Per-axis variance of the LG intensity profile is 1/2.
  EXPECT_NEAR(c.se_x * 1000.0, std::sqrt(0.5), 5e-3);
}

TEST(Sampling, EfficiencyThinning) {
  const PointerGrid g(64, 64, 6.0);
  const std::size_t n = 100000;
  const auto run = sample_positions(lg_image(g), n, 0.5, 3);
  EXPECT_EQ(run.n_detected(), n);
  // Misses follow a negative binomial with mean n and variance 2n.
  EXPECT_NEAR(static_cast<double>(run.n_emitted), 2.0 * n, 5 * std::sqrt(2.0 * n));
  EXPECT_EQ(sample_positions(lg_image(g), n, 1.0, 3).n_emitted, n);
}

TEST(Sampling, Errors) {
  const PointerGrid g(64, 64, 6.0);
  const IntensityImage dark(g, std::vector<double>(g.size(), 0.0));
  EXPECT_THROW(sample_positions(dark, 10, 1.0, 1), NumericalFailure);
  EXPECT_THROW(sample_positions(lg_image(g), 0, 1.0, 1), InvalidInput);
  EXPECT_THROW(sample_positions(lg_image(g), 10, 0.0, 1), InvalidInput);
  EXPECT_THROW(sample_positions(lg_image(g), 10, 1.5, 1), InvalidInput);
}

TEST(Sampling, Deterministic) {
  const PointerGrid g;
  const auto a = sample_positions(lg_image(g), 10000, 0.7, 99);
  const auto b = sample_positions(lg_image(g), 10000, 0.7, 99);
  EXPECT_EQ(a.xs, b.xs);
  EXPECT_EQ(a.ys, b.ys);
  EXPECT_EQ(a.n_emitted, b.n_emitted);
  const auto ca = mc_centroid(a), cb = mc_centroid(b);
  EXPECT_EQ(ca.qx, cb.qx);
  EXPECT_EQ(ca.se_y, cb.se_y);
}

TEST(McCentroid, SymmetricPairsAndErrors) {
  DetectionRun run;
  run.xs = {-0.3, 0.3};
  run.ys = {0.0, 0.0};
  const auto c = mc_centroid(run);
  EXPECT_DOUBLE_EQ(c.qx, 0.0);
  EXPECT_DOUBLE_EQ(c.qy, 0.0);
  EXPECT_NEAR(c.se_x, 0.3, 1e-15);
  run.xs.resize(1);
  run.ys.resize(1);
  EXPECT_THROW(mc_centroid(run), InvalidInput);
}

TEST(McCentroid, StandardErrorScaling) {
  const PointerGrid g;
  const auto small = mc_centroid(sample_positions(lg_image(g), 10'000, 1.0, 5));
  const auto large = mc_centroid(sample_positions(lg_image(g), 1'000'000, 1.0, 6));
  EXPECT_NEAR(small.se_x / large.se_x, 10.0, 2.0);
  EXPECT_NEAR(small.se_y / large.se_y, 10.0, 2.0);
}

TEST(McEstimate, ThreeTermStateWithinThreeSigma) {
  McConfig cfg;
  const auto r = mc_estimate(rho_a(kThreeTerm), cfg);
  ASSERT_TRUE(r.uncertainty.has_value());
  EXPECT_EQ(r.uncertainty->resamples, 200);
  EXPECT_LT(std::abs(r.concurrence - 2.0 / 3), 3 * r.uncertainty->sigma);
  EXPECT_LE(r.uncertainty->ci_low, r.uncertainty->ci_high);
  EXPECT_GE(r.uncertainty->ci_low, 0.0);
  EXPECT_LE(r.uncertainty->ci_high, 1.0);
  EXPECT_EQ(r.diagnostic("detected_0") + r.diagnostic("detected_1"), 2e6);
}

TEST(McEstimate, BellStateUsesIntensities) {
  McConfig cfg;
  const auto r = mc_estimate(DensityMatrix::maximally_mixed(2), cfg);
  EXPECT_EQ(r.route, Route::DiagonalIntensity);
  EXPECT_LE(std::abs(r.concurrence - 1.0), 3 * r.uncertainty->sigma);
}

TEST(McEstimate, DarkBranchIsUndefined) {
  McConfig cfg;
  cfg.n_per_branch = 100000;
  const auto r = mc_estimate(rho_a({0.0, 0.0, 1.0, 0.0}), cfg);
  EXPECT_EQ(r.route, Route::UndefinedLimit);
  EXPECT_EQ(r.concurrence, 0.0);
}

// 1/sqrt(n) scaling needs n = 10^4 to be in the linear regime of the
// weak-value-to-concurrence map, which takes lambda near 0.08 for this state.
TEST(McEstimate, SigmaScalingInLinearRegime) {
  McConfig cfg;
  cfg.lambda = 0.08;
  cfg.n_per_branch = 10'000;
  const auto small = mc_estimate(rho_a(kThreeTerm), cfg);
  cfg.n_per_branch = 1'000'000;
  const auto large = mc_estimate(rho_a(kThreeTerm), cfg);
  const double ratio = small.uncertainty->sigma / large.uncertainty->sigma;
  EXPECT_GT(ratio, 8.0);
  EXPECT_LT(ratio, 12.0);
}

// At the default lambda the n = 10^4 weak values sit inside the noise; the
// bootstrap then spreads over both regimes instead of shrinking by 1/sqrt(n).
TEST(McEstimate, LowSignalSpreadIsWide) {
  McConfig cfg;
  cfg.n_per_branch = 10'000;
  const auto r = mc_estimate(rho_a(kThreeTerm), cfg);
  EXPECT_GT(r.uncertainty->sigma, 0.1);
}

TEST(McEstimate, Deterministic) {
  McConfig cfg;
  cfg.n_per_branch = 50'000;
  const auto a = mc_run(rho_a(kWorked), cfg);
  const auto b = mc_run(rho_a(kWorked), cfg);
  EXPECT_EQ(a.branch0.xs, b.branch0.xs);
  EXPECT_EQ(a.branch1.ys, b.branch1.ys);
  EXPECT_EQ(a.report.concurrence, b.report.concurrence);
  EXPECT_EQ(a.report.uncertainty->sigma, b.report.uncertainty->sigma);
}

TEST(McEstimate, UnbiasedOverSeeds) {
  McConfig cfg;
  cfg.lambda = 0.05;
  cfg.n_per_branch = 100'000;
  double sum = 0.0, var = 0.0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) {
    cfg.seed = 1000 + static_cast<std::uint64_t>(s);
    const auto r = mc_estimate(rho_a(kThreeTerm), cfg);
    sum += r.concurrence;
    var += r.uncertainty->sigma * r.uncertainty->sigma;
  }
  const double mean = sum / seeds;
  const double combined_se = std::sqrt(var) / seeds;
  EXPECT_LT(std::abs(mean - 2.0 / 3), 2.0 * combined_se) << "mean " << mean << " se " << combined_se;
}

TEST(McEstimate, InvalidConfig) {
  McConfig cfg;
  cfg.n_per_branch = 0;
  EXPECT_THROW(mc_estimate(DensityMatrix::maximally_mixed(2), cfg), InvalidInput);
  cfg.n_per_branch = 100;
  cfg.efficiency = 0.0;
  EXPECT_THROW(mc_estimate(DensityMatrix::maximally_mixed(2), cfg), InvalidInput);
}
