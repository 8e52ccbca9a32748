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
#include <random>

namespace wvconc {

/// splitmix64 finalizer applied to master + (stream + 1) * golden-ratio
/// increment. Sub-stream k of a run is seeded with derive_stream_seed(seed, k).
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream);

/// 64-bit Mersenne Twister. Uniforms and normals use a fixed mapping; the
/// discrete draws use the standard library distributions, so runs are
/// bit-reproducible for a given toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal();
  std::uint64_t binomial(std::uint64_t trials, double p);
  /// Failures before `successes` successes with success probability p.
  std::uint64_t negative_binomial(std::uint64_t successes, double p);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wvconc
