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

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

namespace qfp {

/// Local operation applied before frequency detection: identity (Z basis)
/// or Hadamard (X basis).
enum class Basis { kIdentity, kHadamard };

std::string to_string(Basis b);
/// Accepts "I"/"1"/"identity" and "H"/"hadamard" (case-insensitive).
Basis parse_basis(const std::string& s);

/// 2x2 coincidence counts; counts[a][b] for A outcome a and B outcome b,
/// outcome 0 being the lower bin of each qubit.
struct SettingCounts {
  std::array<std::array<std::uint64_t, 2>, 2> counts{};
  Basis basis_a = Basis::kIdentity;
  Basis basis_b = Basis::kIdentity;

  std::uint64_t total() const;
};

struct EntropyEstimate {
  double mean = 0.0;
  double std = 0.0;
  bool prior_dominated = false;  // no counts at all
};

/// Shannon entropy in bits; zero-probability cells contribute 0.
double entropy_bits(const double* p, std::size_t n);

/// H(A|B) = H(p) - H(p_B) in bits for a 2x2 joint distribution.
double conditional_entropy_bits(const std::array<double, 4>& p);

/// One draw p ~ Dirichlet(counts + 1), ordered {p00, p01, p10, p11}.
std::array<double, 4> dirichlet_posterior_draw(const SettingCounts& counts, std::mt19937_64& rng);

/// Bayesian mean estimate of H(A|B): draws p ~ Dirichlet(counts + 1) and
/// returns the sample mean and standard deviation. samples >= 1000.
EntropyEstimate conditional_entropy_bme(const SettingCounts& counts, int samples,
                                        std::uint64_t seed);

/// q = -log2 max(R, T)/(R + T) from the beamsplitter at alpha = pi.
double maassen_uffink_bound(double theta);

struct WitnessResult {
  EntropyEstimate h_matched_z;  // H(1_A | 1_B)
  EntropyEstimate h_matched_x;  // H(H_A | H_B)
  double q_mu = 0.0;
  double sum_mean = 0.0;
  double sum_std = 0.0;
  double violation_sigmas = 0.0;  // (q_mu - sum_mean) / sum_std
  bool violated = false;          // sum_mean < q_mu
};

/// Entropic separability test H(1|1) + H(H|H) >= q_MU. z_counts must be the
/// identity/identity setting and x_counts the Hadamard/Hadamard one.
WitnessResult witness_check(const SettingCounts& z_counts, const SettingCounts& x_counts,
                            double theta, int samples, std::uint64_t seed);

}  // namespace qfp
