// Copyright 2026 The QFP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfp/witness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

#include "qfp/error.hpp"
#include "qfp/gates.hpp"

namespace qfp {

std::string to_string(Basis b) { return b == Basis::kIdentity ? "I" : "H"; }

Basis parse_basis(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "i" || t == "1" || t == "identity" || t == "z") return Basis::kIdentity;
  if (t == "h" || t == "hadamard" || t == "x") return Basis::kHadamard;
  throw ValidationError("unknown basis label '" + s + "'");
}

std::uint64_t SettingCounts::total() const {
  return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
}

double entropy_bits(const double* p, std::size_t n) {
  double h = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] > 0.0) h -= p[i] * std::log2(p[i]);
  }
  return h;
}

double conditional_entropy_bits(const std::array<double, 4>& p) {
  // p = {p(0,0), p(0,1), p(1,0), p(1,1)}; B is the second index.
  const double marginal_b[2] = {p[0] + p[2], p[1] + p[3]};
  return entropy_bits(p.data(), 4) - entropy_bits(marginal_b, 2);
}

std::array<double, 4> dirichlet_posterior_draw(const SettingCounts& counts, std::mt19937_64& rng) {
  std::array<double, 4> p{};
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    std::gamma_distribution<double> g(static_cast<double>(counts.counts[i / 2][i % 2]) + 1.0);
    total += (p[i] = g(rng));
  }
  for (auto& x : p) x /= total;
  return p;
}

EntropyEstimate conditional_entropy_bme(const SettingCounts& counts, int samples,
                                        std::uint64_t seed) {
  if (samples < 1000) throw ValidationError("conditional_entropy_bme: need at least 1000 samples");

  std::mt19937_64 rng(seed);
  // Welford accumulation.
  double mean = 0.0, m2 = 0.0;
  for (int s = 1; s <= samples; ++s) {
    const double h = conditional_entropy_bits(dirichlet_posterior_draw(counts, rng));
    const double delta = h - mean;
    mean += delta / s;
    m2 += delta * (h - mean);
  }

  EntropyEstimate e;
  e.mean = mean;
  e.std = std::sqrt(m2 / (samples - 1));
  e.prior_dominated = counts.total() == 0;
  return e;
}

double maassen_uffink_bound(double theta) {
  const auto p = analytic_rt(theta, std::numbers::pi);
  if (!(p.success > 0.0)) {
    throw DomainError("maassen_uffink_bound: R + T vanishes at alpha = pi");
  }
  return -std::log2(std::max(p.reflectivity, p.transmissivity) / p.success);
}

WitnessResult witness_check(const SettingCounts& z_counts, const SettingCounts& x_counts,
                            double theta, int samples, std::uint64_t seed) {
  if (z_counts.basis_a != Basis::kIdentity || z_counts.basis_b != Basis::kIdentity) {
    throw ValidationError("witness_check: z_counts must be the identity/identity setting");
  }
  if (x_counts.basis_a != Basis::kHadamard || x_counts.basis_b != Basis::kHadamard) {
    throw ValidationError("witness_check: x_counts must be the Hadamard/Hadamard setting");
  }

  WitnessResult r;
  r.h_matched_z = conditional_entropy_bme(z_counts, samples, seed);
  r.h_matched_x = conditional_entropy_bme(x_counts, samples, seed + 0x9e3779b97f4a7c15ULL);
  r.q_mu = maassen_uffink_bound(theta);
  r.sum_mean = r.h_matched_z.mean + r.h_matched_x.mean;
  r.sum_std = std::hypot(r.h_matched_z.std, r.h_matched_x.std);
  r.violated = r.sum_mean < r.q_mu;
  r.violation_sigmas = r.sum_std > 0.0 ? (r.q_mu - r.sum_mean) / r.sum_std : 0.0;
  return r;
}

}  // namespace qfp
