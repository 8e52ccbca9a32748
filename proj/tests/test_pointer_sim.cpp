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

#include <random>

#include "test_helpers.hpp"
#include "wvconc/errors.hpp"
#include "wvconc/pointer_sim.hpp"
#include "wvconc/random_states.hpp"

using namespace wvconc;
using namespace testing_util;

namespace {

DensityMatrix single(std::initializer_list<std::initializer_list<cplx>> rows) { return DensityMatrix(Matrix(rows)); }

DensityMatrix rho_a(const oracle::Amps& a) { return reduced_state(to_state(a), Subsystem::A); }

const PointerGrid kSmall(128, 128, 6.0);

}  // namespace

TEST(Grid, Validation) {
  EXPECT_THROW(PointerGrid(32, 512, 6.0), InvalidInput);
  EXPECT_THROW(PointerGrid(512, 512, 3.0), InvalidInput);
  const PointerGrid g;
  EXPECT_EQ(g.nx(), 512);
  EXPECT_DOUBLE_EQ(g.extent(), 6.0);
  EXPECT_NEAR(g.x(0) + g.x(511), 0.0, 1e-15);
}

TEST(LgMode, Normalization) {
  const PointerGrid g;
  const LgPointer mode(g);
  EXPECT_EQ(mode(0.0, 0.0), cplx(0.0));
  const auto field = lg_mode_field(g);
  std::vector<double> v;
  for (const auto& f : field.values()) v.push_back(std::norm(f));
  const IntensityImage image(g, v);
  EXPECT_NEAR(total_intensity(image), 1.0, 1e-9);
  const auto c = centroid(image);
  EXPECT_NEAR(c.qx, 0.0, 1e-12);
  EXPECT_NEAR(c.qy, 0.0, 1e-12);
}

TEST(ExactIntensity, DoubleSumOracleIsRealAndMatches) {
  Rng rng(41);
  const double lambda = 0.05;
  const double scale = LgPointer(kSmall).scale();
  for (int t = 0; t < 5; ++t) {
    const auto z = hilbert_schmidt_state(rng, 2);
    oracle::Mat2 physical;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) physical(r, c) = z(c, r);
    for (int post = 0; post < 2; ++post) {
      const auto image = exact_intensity(z, post ? PostSelection::One : PostSelection::Zero, CouplingStrength(lambda), kSmall);
      double peak = 0.0;
      for (double v : image.values()) peak = std::max(peak, v);
      for (int j = 0; j < kSmall.ny(); ++j)
        for (int i = 0; i < kSmall.nx(); ++i) {
          const cplx s = oracle::pointer_double_sum(physical, post, lambda, scale, kSmall.x(i), kSmall.y(j));
          ASSERT_LT(std::abs(s.imag()), 1e-12 * peak);
          ASSERT_NEAR(image.at(i, j), std::max(0.0, s.real()), 1e-12 * peak);
        }
    }
  }
}

TEST(ExactIntensity, SmallLambdaLimit) {
  const PointerGrid g;
  const auto z = rho_a(kThreeTerm);
  const auto image = exact_intensity(z, PostSelection::Zero, CouplingStrength(1e-7), g);
  const LgPointer mode(g);
  for (int j = 0; j < g.ny(); j += 37)
    for (int i = 0; i < g.nx(); i += 41)
      EXPECT_NEAR(image.at(i, j), (2.0 / 3) * std::norm(mode(g.x(i), g.y(j))), 1e-6);
  const auto c = centroid(image);
  EXPECT_NEAR(c.qx, 1e-7 * 0.5, 1e-12);
}

TEST(ExactIntensity, SigmaXEigenstateIsRigidShift) {
  const PointerGrid g;
  const auto plus = single({{0.5, 0.5}, {0.5, 0.5}});
  const CouplingStrength l(0.01);
  const auto exact = exact_intensity(plus, PostSelection::Zero, l, g);
  const auto shifted = approx_intensity(1.0, 0.5, l, g);
  for (std::size_t k = 0; k < exact.values().size(); ++k)
    ASSERT_NEAR(exact.values()[k], shifted.image.values()[k], 1e-15);
}

TEST(ExactIntensity, TotalsFollowClosedForm) {
  // The raw total mixes the branches at O(lambda^2):
  // t = p -+ (1 - S)(p0 - p1)/2 with S the shifted-mode overlap.
  Rng rng(42);
  const PointerGrid g;
  for (double lambda : {0.01, 0.04}) {
    const CouplingStrength l(lambda);
    const double s = shifted_mode_overlap(l, g);
    EXPECT_NEAR(s, std::exp(-2 * lambda * lambda) * (1 - 2 * lambda * lambda), 1e-12);
    for (int t = 0; t < 10; ++t) {
      const auto z = hilbert_schmidt_state(rng, 2);
      const double p0 = z(0, 0).real(), p1 = z(1, 1).real();
      const double t0 = total_intensity(exact_intensity(z, PostSelection::Zero, l, g));
      const double t1 = total_intensity(exact_intensity(z, PostSelection::One, l, g));
      EXPECT_NEAR(t0, p0 - (1 - s) * (p0 - p1) / 2, 1e-9);
      EXPECT_NEAR(t1, p1 + (1 - s) * (p0 - p1) / 2, 1e-9);
      EXPECT_LE(std::abs(t0 - p0), 2.0 * lambda * lambda * std::abs(p0 - p1) + 1e-9);
      const auto cal = calibrated_branch_probabilities(t0, t1, s);
      EXPECT_NEAR(cal[0], p0, 1e-9);
    }
  }
  // Balanced branches: the raw totals equal the branch probabilities.
  const auto bell = DensityMatrix::maximally_mixed(2);
  EXPECT_NEAR(total_intensity(exact_intensity(bell, PostSelection::Zero, CouplingStrength(0.04), g)), 0.5, 1e-9);
}

TEST(ExactIntensity, Errors) {
  const auto z = DensityMatrix::maximally_mixed(2);
  EXPECT_THROW(exact_intensity(z, PostSelection::Zero, CouplingStrength(2.0), PointerGrid()), InvalidInput);
  EXPECT_THROW(CouplingStrength(0.0), InvalidInput);
  EXPECT_THROW(exact_intensity(DensityMatrix::maximally_mixed(4), PostSelection::Zero, CouplingStrength(0.01),
                               PointerGrid()),
               InvalidInput);
}

TEST(Centroid, ReadoutExamples) {
  const PointerGrid g;
  const CouplingStrength l(0.01);
  const auto three = exact_intensity(rho_a(kThreeTerm), PostSelection::One, l, g);
  const auto c = centroid(three);
  EXPECT_NEAR(c.qx, 0.01, 1e-4);
  EXPECT_NEAR(c.qy, 0.0, 1e-4);

  const auto a = approx_intensity(1.0, 1.0, l, g);
  const auto ca = centroid(a.image);
  EXPECT_NEAR(ca.qx, 0.01, 1e-12);
  EXPECT_NEAR(ca.qy, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(*extract_weak_value(a.image, l).value - 1.0), 0.0, 1e-9);

  const auto b = approx_intensity(cplx(0, 1), 1.0, l, g);
  EXPECT_NEAR(centroid(b.image).qy, 0.01, 1e-12);
  EXPECT_NEAR(std::abs(*extract_weak_value(b.image, l).value - cplx(0, 1)), 0.0, 1e-9);

  const auto zero = approx_intensity(0.0, 1.0, l, g);
  EXPECT_NEAR(centroid(zero.image).qx, 0.0, 1e-12);

  const IntensityImage dark(g, std::vector<double>(g.size(), 0.0));
  EXPECT_THROW(centroid(dark), NumericalFailure);
  EXPECT_FALSE(extract_weak_value(dark, l).defined());
}

TEST(Centroid, ExactMatchesFirstOrderPicture) {
  const PointerGrid g;
  std::mt19937_64 gen(43);
  for (double lambda : {0.01, 0.02}) {
    const CouplingStrength l(lambda);
    for (int t = 0; t < 10; ++t) {
      const auto a = oracle::haar(gen);
      const auto w = oracle::weak_values(a);
      const auto z = rho_a(a);
      for (int b = 0; b < 2; ++b) {
        if (std::abs(w[b]) > 2.0) continue;
        const auto ce = centroid(exact_intensity(z, b ? PostSelection::One : PostSelection::Zero, l, g));
        const auto ca = centroid(approx_intensity(w[b], 1.0, l, g).image);
        const double bound = lambda * lambda * std::max(1.0, std::norm(w[b]));
        EXPECT_LE(std::hypot(ce.qx - ca.qx, ce.qy - ca.qy), bound);
      }
    }
  }
}

TEST(Extraction, WorkedStateImaginaryWeakValue) {
  const PointerGrid g;
  const CouplingStrength l(0.01);
  const auto z = rho_a(kWorked);
  const auto image = exact_intensity(z, PostSelection::One, l, g);
  EXPECT_NEAR(std::abs(*extract_weak_value(image, l).value - cplx(0, 1)), 0.0, 1e-3);
  EXPECT_NEAR(std::abs(*extract_weak_value(image, l, 0.25, 1e-12).value - cplx(0, 1)), 0.0, 1e-3);
}

TEST(Extraction, ErrorShrinksWithLambda) {
  const PointerGrid g;
  std::mt19937_64 gen(44);
  int checked = 0;
  while (checked < 10) {
    const auto a = oracle::haar(gen);
    const auto w = oracle::weak_values(a);
    if (std::abs(w[0]) > 2.0 || std::abs(w[1]) > 2.0) continue;
    const auto z = rho_a(a);
    double prev = 0.0;
    for (double lambda : {0.04, 0.02, 0.01}) {
      const auto run = simulate_optics(z, CouplingStrength(lambda), g);
      const double err = std::max(std::abs(*run.report.pair.w0.value - w[0]), std::abs(*run.report.pair.w1.value - w[1]));
      if (prev > 0.0) EXPECT_GE(prev / err, 1.5);
      prev = err;
    }
    ++checked;
  }
}

TEST(Pipeline, Examples) {
  const PointerGrid g;
  const CouplingStrength l(0.01);
  const auto bell = run_optical_estimate(DensityMatrix::maximally_mixed(2), l, g);
  EXPECT_EQ(bell.route, Route::DiagonalIntensity);
  EXPECT_NEAR(bell.concurrence, 1.0, 1e-12);
  EXPECT_NEAR(bell.diagnostic("centroid_x0"), 0.0, 1e-15);
  EXPECT_NEAR(bell.diagnostic("total_intensity_0"), 0.5, 1e-9);

  const auto three = run_optical_estimate(rho_a(kThreeTerm), l, g);
  EXPECT_NEAR(three.concurrence, 2.0 / 3, 1e-2);

  const auto prod = run_optical_estimate(rho_a(oracle::normalized({1.0, 0.0, 1.0, 0.0})), l, g);
  EXPECT_NEAR(prod.concurrence, 0.0, 1e-2);
  EXPECT_NEAR(prod.diagnostic("product_m0_m1"), 1.0, 1e-3);

  const auto ten = simulate_optics(rho_a({0.0, 0.0, 1.0, 0.0}), l, g);
  EXPECT_EQ(ten.report.route, Route::UndefinedLimit);
  EXPECT_EQ(ten.report.concurrence, 0.0);
  EXPECT_EQ(ten.report.diagnostic("dark_branch"), 0.0);
  EXPECT_EQ(ten.report.diagnostic("weakness_warning"), 0.0);
}

TEST(Pipeline, WeaknessWarning) {
  const auto r = run_optical_estimate(rho_a(kWorked), CouplingStrength(0.5), PointerGrid());
  EXPECT_EQ(r.diagnostic("weakness_warning"), 1.0);
  EXPECT_TRUE(approx_intensity(3.0, 1.0, CouplingStrength(0.05), PointerGrid()).weakness_violated);
}
