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
#include <iosfwd>
#include <optional>
#include <string>

namespace wvconc {

enum class ExitCode : int { Ok = 0, InvalidInput = 2, NumericalFailure = 3 };

struct RunConfig {
  std::string command;
  std::optional<std::string> state;
  double lambda = 0.01;
  int grid_n = 512;
  double extent = 6.0;
  std::size_t photons = 1'000'000;
  double efficiency = 1.0;
  std::uint64_t seed = 42;
  std::optional<std::string> out;
  std::optional<std::string> dump_images;
  std::optional<std::string> dump_positions;
  int refine_iters = 50;
  double epsilon_origin = 1e-9;
  int sweep_n = 201;
  double sweep_max = 2.0;
  std::size_t samples = 1000;
  int resamples = 200;
};

/// Entry point behind the `wvconc` executable. Reports go to `out` unless
/// --out is given; messages go to `err`. Returns 0, 2 (invalid input) or
/// 3 (numerical failure).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Executes an already parsed configuration; throws on failure.
void execute(const RunConfig& config, std::ostream& out);

}  // namespace wvconc
