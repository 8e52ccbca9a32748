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

#include "oracles.hpp"
#include "wvconc/qubit_core.hpp"

namespace testing_util {

inline wvconc::PureTwoQubitState to_state(const oracle::Amps& a) { return wvconc::PureTwoQubitState(a); }

inline wvconc::DensityMatrix to_density(const oracle::Mat4& m) {
  wvconc::Matrix out(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = m(r, c);
  return wvconc::DensityMatrix(out);
}

inline wvconc::DensityMatrix to_density(const oracle::Mat2& m) {
  wvconc::Matrix out(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out(r, c) = m(r, c);
  return wvconc::DensityMatrix(out);
}

inline oracle::Mat4 to_eigen(const wvconc::DensityMatrix& rho) {
  oracle::Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = rho(r, c);
  return m;
}

inline const oracle::Amps kThreeTerm = oracle::normalized({1.0, 1.0, 0.0, 1.0});
inline const oracle::Amps kWorked = {std::sqrt(2.0) / 2.0, 0.5, 0.0, oracle::cplx(0.0, 0.5)};
inline const oracle::Amps kBell = oracle::normalized({1.0, 0.0, 0.0, 1.0});

}  // namespace testing_util
