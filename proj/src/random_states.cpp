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

#include "wvconc/random_states.hpp"

#include <cmath>

namespace wvconc {

namespace {

cplx complex_gaussian(Rng& rng) {
  const double re = rng.normal();
  const double im = rng.normal();
  return {re, im};
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

PureTwoQubitState haar_pure_state(Rng& rng) {
  std::array<Amplitude, 4> a{};
  for (auto& x : a) x = complex_gaussian(rng);
  return PureTwoQubitState::normalized(a);
}

DensityMatrix hilbert_schmidt_state(Rng& rng, std::size_t dim) {
  Matrix g(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = complex_gaussian(rng);
  Matrix m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  return DensityMatrix(hermitize(m));
}

NearPureSample near_pure_state(Rng& rng, double max_epsilon) {
  const PureTwoQubitState psi = haar_pure_state(rng);
  const double epsilon = max_epsilon * rng.uniform();
  const DensityMatrix sigma = hilbert_schmidt_state(rng, 4);
  Matrix m = (1.0 - epsilon) * DensityMatrix::from_pure(psi).matrix() + epsilon * sigma.matrix();
  return {psi, epsilon, DensityMatrix(hermitize(m))};
}

}  // namespace wvconc
