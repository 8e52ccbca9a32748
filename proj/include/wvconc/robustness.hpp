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

#include <cstdint>
#include <string>
#include <vector>

#include "wvconc/qubit_core.hpp"

namespace wvconc {

/// Upper bound on the distance from a two-qubit state to the pure states.
struct MixednessCertificate {
  double m_upper = 0.0;
  PureTwoQubitState witness;
  double purity_lower = 0.0;
  bool refined = false;
  /// Refinement iterations that lowered the distance.
  int improvements = 0;
};

inline constexpr int kDefaultRefineIterations = 50;

/// Witness starts at the dominant eigenvector; each refinement iteration
/// tries 8 seeded random tangent moves on the unit sphere and halves the
/// step (initially 0.1) when none improves. m_upper is the trace distance
/// between rho and the final witness projector.
MixednessCertificate mixedness_upper(const DensityMatrix& rho, int refine_iters = 0, std::uint64_t seed = 0);

/// (1 - tr rho^2) / 4.
double purity_lower_bound(const DensityMatrix& rho);

/// Bounds on C(rho)^2; c_minus may be negative for strongly mixed states.
struct ConcurrenceBounds {
  double c_minus;
  double c_plus;
  double det_zeta;
  double m_upper;
};

ConcurrenceBounds concurrence_bounds(const DensityMatrix& rho, int refine_iters = 0, std::uint64_t seed = 0);

struct InequalityCheck {
  std::string name;
  double lhs;
  double rhs;
  double slack;  // rhs - lhs

  bool holds(double tolerance = 1e-10) const { return slack >= -tolerance; }
};

/// Continuity checks between two states; when rho2 is pure the pure-reference
/// bound |C(rho1)^2 - 4 det zeta1| <= 12 D(rho2, rho1) is appended.
std::vector<InequalityCheck> verify_mixed_state_bounds(const DensityMatrix& rho1, const DensityMatrix& rho2);

struct CampaignRow {
  std::size_t index;
  double epsilon;
  std::vector<InequalityCheck> checks;
};

struct CampaignConfig {
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  double max_epsilon = 0.3;
  int refine_iters = 0;
};

/// Sample i mixes a Haar state with Hilbert-Schmidt noise drawn from stream i
/// of the seed, and compares it with its own pure component. Rows are
/// independent of the worker count.
std::vector<CampaignRow> run_campaign(const CampaignConfig& config);

/// Rows whose check `name` fails, per check name in first-row order.
std::vector<std::pair<std::string, std::size_t>> count_violations(const std::vector<CampaignRow>& rows,
                                                                   double tolerance = 1e-10);

}  // namespace wvconc
