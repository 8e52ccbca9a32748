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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wvconc/concurrence_estimator.hpp"
#include "wvconc/photon_mc.hpp"
#include "wvconc/pointer_sim.hpp"
#include "wvconc/robustness.hpp"

namespace wvconc {

/// A parsed state: either four amplitudes or a 2x2 / 4x4 density matrix.
struct StateInput {
  std::optional<PureTwoQubitState> pure;
  DensityMatrix rho;

  /// Reduced state of qubit A; a 2x2 input is taken as that state already.
  DensityMatrix reduced_a() const;
};

/// Accepts {"amplitudes": [c00, c01, c10, c11]} or {"density_matrix": rows}.
/// Complex entries are [re, im] pairs or plain numbers.
StateInput parse_state(const nlohmann::json& doc);
StateInput parse_state_text(const std::string& text);
/// Inline JSON when the argument starts with '{', otherwise a file path.
StateInput load_state(const std::string& source);

nlohmann::json to_json(const WeakValuePair& pair);
nlohmann::json to_json(const EstimateReport& report);
nlohmann::json to_json(const MixednessCertificate& cert);

/// Text image: "nx,<n>", "ny,<n>", "extent,<e>" then one CSV row per y.
/// Values use the shortest round-trip representation.
void write_image_csv(std::ostream& os, const IntensityImage& image);
IntensityImage read_image_csv(std::istream& is);

/// Raw little-endian float64 stream, row-major, plus a sidecar JSON with
/// nx, ny and extent.
void write_image_raw(std::ostream& data, std::ostream& sidecar, const IntensityImage& image);
IntensityImage read_image_raw(std::istream& data, std::istream& sidecar);

/// Little-endian uint64 count followed by (x, y) float64 pairs.
void write_positions(std::ostream& os, const DetectionRun& run);
std::vector<std::array<double, 2>> read_positions(std::istream& is);

/// Header m0,m1,C; excluded points are written as nan.
void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points);

/// index,epsilon then <check>_lhs,<check>_rhs,<check>_slack per inequality.
void write_campaign_csv(std::ostream& os, const std::vector<CampaignRow>& rows);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

}  // namespace wvconc
