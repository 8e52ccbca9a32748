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

#include "wvconc/robustness.hpp"

#include <cmath>

#include "wvconc/errors.hpp"
#include "wvconc/parallel.hpp"
#include "wvconc/random_states.hpp"
#include "wvconc/rng.hpp"

namespace wvconc {

namespace {

void require_two_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw InvalidInput("invalid state: two-qubit density matrix required");
}

std::array<Amplitude, 4> to_array(const std::vector<cplx>& v) { return {v[0], v[1], v[2], v[3]}; }

double distance_to(const std::vector<cplx>& psi, const DensityMatrix& rho) {
  return trace_distance(DensityMatrix::projector(psi), rho);
}

std::vector<cplx> normalize(std::vector<cplx> v) {
  double n = 0.0;
  for (const auto& x : v) n += std::norm(x);
  n = std::sqrt(n);
  for (auto& x : v) x /= n;
  return v;
}

InequalityCheck check(std::string name, double lhs, double rhs) { return {std::move(name), lhs, rhs, rhs - lhs}; }

}  // namespace

MixednessCertificate mixedness_upper(const DensityMatrix& rho, int refine_iters, std::uint64_t seed) {
  require_two_qubit(rho);
  if (refine_iters < 0) throw InvalidInput("refine_iters must be >= 0");
  const EigenSystem es = hermitian_eigen(rho.matrix());
  std::vector<cplx> psi(4);
  for (std::size_t r = 0; r < 4; ++r) psi[r] = es.vectors(r, 3);
  psi = normalize(psi);
  double best = distance_to(psi, rho);

  MixednessCertificate cert{best, PureTwoQubitState::normalized(to_array(psi)), purity_lower_bound(rho), refine_iters > 0, 0};
  Rng rng(seed);
  double step = 0.1;
  for (int it = 0; it < refine_iters; ++it) {
    std::vector<cplx> best_candidate;
    double best_candidate_d = best;
    for (int k = 0; k < 8; ++k) {
      std::vector<cplx> d(4);
      for (auto& x : d) {
        const double re = rng.normal();
        const double im = rng.normal();
        x = {re, im};
      }
      cplx overlap = 0.0;
      for (std::size_t r = 0; r < 4; ++r) overlap += std::conj(psi[r]) * d[r];
      for (std::size_t r = 0; r < 4; ++r) d[r] -= overlap * psi[r];
      d = normalize(d);
      std::vector<cplx> cand(4);
      for (std::size_t r = 0; r < 4; ++r) cand[r] = std::cos(step) * psi[r] + std::sin(step) * d[r];
      cand = normalize(cand);
      const double dist = distance_to(cand, rho);
      // Rounding-level gains are not improvements.
      if (dist < best_candidate_d - 1e-14) {
        best_candidate_d = dist;
        best_candidate = cand;
      }
    }
    if (!best_candidate.empty()) {
      psi = best_candidate;
      best = best_candidate_d;
      ++cert.improvements;
    } else {
      step *= 0.5;
    }
  }
  cert.m_upper = best;
  cert.witness = PureTwoQubitState::normalized(to_array(psi));
  return cert;
}

double purity_lower_bound(const DensityMatrix& rho) {
  require_two_qubit(rho);
  return (1.0 - purity(rho)) / 4.0;
}

ConcurrenceBounds concurrence_bounds(const DensityMatrix& rho, int refine_iters, std::uint64_t seed) {
  const double m = mixedness_upper(rho, refine_iters, seed).m_upper;
  const double det = det2(reduced_state(rho, Subsystem::A));
  return {4.0 * (det - 3.0 * m), 4.0 * (det + 3.0 * m), det, m};
}

std::vector<InequalityCheck> verify_mixed_state_bounds(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require_two_qubit(rho1);
  require_two_qubit(rho2);
  const double d = trace_distance(rho1, rho2);
  const double c1 = concurrence_mixed(rho1);
  const double c2 = concurrence_mixed(rho2);
  const double det1 = det2(reduced_state(rho1, Subsystem::A));
  const double det_2 = det2(reduced_state(rho2, Subsystem::A));
  std::vector<InequalityCheck> out;
  out.push_back(check("concurrence_continuity", std::abs(c1 - c2), 2.0 * d));
  out.push_back(check("determinant_continuity", std::abs(det1 - det_2), 2.0 * d));
  if (std::abs(purity(rho2) - 1.0) <= 1e-10)
    out.push_back(check("pure_reference_bound", std::abs(c1 * c1 - 4.0 * det1), 12.0 * d));
  return out;
}

std::vector<CampaignRow> run_campaign(const CampaignConfig& config) {
  if (config.samples < 1) throw InvalidInput("campaign needs at least one sample");
  if (!(config.max_epsilon >= 0.0 && config.max_epsilon <= 1.0))
    throw InvalidInput("mixing weight bound must lie in [0, 1]");
  std::vector<CampaignRow> rows(config.samples);
  parallel_for(config.samples, [&](std::size_t i) {
    Rng rng(derive_stream_seed(config.seed, i));
    const NearPureSample s = near_pure_state(rng, config.max_epsilon);
    const auto cert = mixedness_upper(s.rho, config.refine_iters, derive_stream_seed(config.seed ^ 0x5bd1e995ULL, i));
    const double c = concurrence_mixed(s.rho);
    const double det = det2(reduced_state(s.rho, Subsystem::A));
    const double c_sq = c * c;
    CampaignRow row{i, s.epsilon, {}};
    row.checks.push_back(check("purity_vs_mixedness", cert.purity_lower, cert.m_upper));
    const auto pair_checks = verify_mixed_state_bounds(s.rho, DensityMatrix::from_pure(s.psi));
    row.checks.push_back(pair_checks[0]);
    row.checks.push_back(pair_checks[1]);
    row.checks.push_back(check("master_bound", std::abs(c_sq - 4.0 * det), 12.0 * cert.m_upper));
    row.checks.push_back(check("sandwich_lower", 4.0 * (det - 3.0 * cert.m_upper), c_sq));
    row.checks.push_back(check("sandwich_upper", c_sq, 4.0 * (det + 3.0 * cert.m_upper)));
    if (pair_checks.size() > 2) row.checks.push_back(pair_checks[2]);
    rows[i] = std::move(row);
  });
  return rows;
}

std::vector<std::pair<std::string, std::size_t>> count_violations(const std::vector<CampaignRow>& rows,
                                                                   double tolerance) {
  std::vector<std::pair<std::string, std::size_t>> out;
  if (rows.empty()) return out;
  for (const auto& c : rows.front().checks) out.emplace_back(c.name, 0);
  for (const auto& row : rows)
    for (std::size_t k = 0; k < row.checks.size() && k < out.size(); ++k)
      if (!row.checks[k].holds(tolerance)) ++out[k].second;
  return out;
}

}  // namespace wvconc
