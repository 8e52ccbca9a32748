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

#include "wvconc/qubit_core.hpp"
#include "wvconc/rng.hpp"

namespace wvconc {

/// Haar-distributed pure two-qubit state (normalized complex Gaussian vector).
PureTwoQubitState haar_pure_state(Rng& rng);

/// Hilbert-Schmidt distributed density matrix G G^dagger / tr, G Ginibre.
DensityMatrix hilbert_schmidt_state(Rng& rng, std::size_t dim = 4);

struct NearPureSample {
  PureTwoQubitState psi;
  double epsilon;
  DensityMatrix rho;  // (1 - epsilon) |psi><psi| + epsilon sigma
};

/// epsilon ~ U[0, max_epsilon], sigma Hilbert-Schmidt.
NearPureSample near_pure_state(Rng& rng, double max_epsilon = 0.3);

}  // namespace wvconc
