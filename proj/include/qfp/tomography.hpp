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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfp/witness.hpp"

namespace qfp {

using Matrix4c = Eigen::Matrix4cd;
using Matrix4d = Eigen::Matrix4d;
using Vector4c = Eigen::Vector4cd;

/// Two-qubit density matrix in the basis |a b>, index 2a + b, where a and b
/// are the lower (0) or upper (1) bin of each photon's qubit pair.
class DensityMatrix4 {
 public:
  /// Throws ValidationError unless Hermitian (1e-12), unit trace (1e-12) and
  /// eigenvalues >= -1e-10.
  explicit DensityMatrix4(const Matrix4c& entries);

  static DensityMatrix4 pure(const Vector4c& psi);
  static DensityMatrix4 maximally_mixed();
  /// G G^dag / tr(G G^dag); physical by construction.
  static DensityMatrix4 from_factor(const Matrix4c& g);

  const Matrix4c& entries() const { return entries_; }

 private:
  struct Unchecked {};
  DensityMatrix4(const Matrix4c& entries, Unchecked) : entries_(entries) {}

  Matrix4c entries_;
};

/// (|1_{-3}>|1_4> + |1_{-4}>|1_5>)/sqrt 2, i.e. (|01> + |10>)/sqrt 2.
Vector4c ideal_entangled_state();

/// Re <psi|rho|psi>. psi must be normalised within 1e-10.
double fidelity(const DensityMatrix4& rho, const Vector4c& psi);

/// Which comb bins carry each photon's qubit (lower bin = logical 0).
struct QubitEncoding {
  std::array<int, 2> a_bins{-4, -3};
  std::array<int, 2> b_bins{4, 5};

  int a_index(int bin) const;
  int b_index(int bin) const;
};

struct SettingData {
  std::uint64_t coincidences = 0;  // C_AB
  std::uint64_t singles_a = 0;     // S_A
  std::uint64_t singles_b = 0;     // S_B
};

/// One POVM pair: a basis per side plus the monitored bin of each photon.
struct TomoSetting {
  Basis basis_a = Basis::kIdentity;
  Basis basis_b = Basis::kIdentity;
  int bin_a = -4;
  int bin_b = 4;
  SettingData data;

  void validate() const;
};

struct TomoParams {
  DensityMatrix4 rho = DensityMatrix4::maximally_mixed();
  double eta_a = 1.0;
  double eta_b = 1.0;
  std::uint64_t n_pairs = 1;
};

/// Observed-outcome probabilities: coincidence, A only, B only, neither.
struct OutcomeProbabilities {
  double cc = 0.0;
  double c0 = 0.0;
  double zero_c = 0.0;
  double zero_zero = 0.0;
};

OutcomeProbabilities outcome_probabilities(const TomoParams& params, const TomoSetting& setting,
                                           const QubitEncoding& encoding = {});

/// Sum over settings of the multinomial log-probability of
/// {C, S_A - C, S_B - C, N - S_A - S_B + C}. The multinomial coefficient is
/// dropped (it does not depend on the parameters). Throws DataError when a
/// derived count is negative.
double log_likelihood(const TomoParams& params, const std::vector<TomoSetting>& settings,
                      const QubitEncoding& encoding = {});

/// The 16 settings {I,H}^2 x {a_bins} x {b_bins}, with zero data.
std::vector<TomoSetting> standard_settings(const QubitEncoding& encoding = {});

struct PriorConfig {
  std::uint64_t n_pairs = 1;  // N, held fixed
  QubitEncoding encoding;
  Vector4c target = ideal_entangled_state();
};

struct ChainConfig {
  int n_samples = 5000;
  int burn_in = -1;  // -1: 20% of n_samples
  std::uint64_t seed = 1;
  int n_chains = 4;
  double width = 0.5;
  int max_step_out = 50;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
  double mc_error = 0.0;  // batch-means standard error of the mean
};

struct PosteriorSummary {
  Matrix4c mean_rho;
  Matrix4d std_real;
  Matrix4d std_imag;
  MeanStd fidelity;
  MeanStd eta_a;
  MeanStd eta_b;
  int samples_used = 0;
  int burn_in = 0;
  std::uint64_t n_pairs = 0;
  double evaluations_per_sample = 0.0;
  double fidelity_rhat = 1.0;  // across chains; 1 with a single chain
  bool converged = true;
  std::string warning;
};

/// Bayesian mean estimate of rho, eta_A and eta_B by coordinate-wise slice
/// sampling. rho is parameterised by a complex 4x4 Ginibre factor with
/// standard normal entries (Hilbert-Schmidt prior), efficiencies are uniform
/// on [0, 1] and N is fixed at prior.n_pairs.
PosteriorSummary sample_posterior(const std::vector<TomoSetting>& settings,
                                  const PriorConfig& prior, const ChainConfig& chain);

}  // namespace qfp
