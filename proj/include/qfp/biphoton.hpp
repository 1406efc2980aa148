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

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qfp/mode_lattice.hpp"

namespace qfp {

/// One photon-pair amplitude c |1_mode_a>|1_mode_b>.
struct PairTerm {
  int mode_a = 0;
  int mode_b = 1;
  Complex amp{1.0, 0.0};
};

/// Biphoton frequency comb sum_n c_n |1_{p_n}>|1_{q_n}>.
///
/// Terms must have disjoint support (no bin shared between terms, and
/// mode_a != mode_b within a term); the singles expression used below has no
/// cross terms only under that condition.
class BiphotonState {
 public:
  /// Validates the terms; throws ValidationError on overlapping support or
  /// when sum |c_n|^2 differs from 1 by more than 1e-12.
  explicit BiphotonState(std::vector<PairTerm> terms);

  /// Rescales the amplitudes to unit norm before validating.
  static BiphotonState normalized(std::vector<PairTerm> terms);

  /// |1_a>|1_b>.
  static BiphotonState pair(int mode_a, int mode_b);

  /// (|1_{-3}>|1_4> + |1_{-4}>|1_5>)/sqrt 2.
  static BiphotonState entangled_qubits();

  const std::vector<PairTerm>& terms() const { return terms_; }

 private:
  std::vector<PairTerm> terms_;
};

using BinPair = std::pair<int, int>;

struct CoincidenceTable {
  std::map<BinPair, double> probabilities;  // m_A != m_B
  std::map<int, double> bunching;           // both photons in bin m
};

/// C_{mm'} = |sum_n c_n (V_{m,p} V_{m',q} + V_{m',p} V_{m,q})|^2 for m != m',
/// C_mm = 2 |sum_n c_n V_{m,p} V_{m,q}|^2. Pairs with equal bins go to
/// `bunching`.
CoincidenceTable coincidences(const BiphotonState& state, const TransferMatrix& v,
                              const std::vector<BinPair>& pairs);

/// Every unordered output pair and every bunching term over window_out.
CoincidenceTable all_coincidences(const BiphotonState& state, const TransferMatrix& v);

/// Sum of all probabilities in a table.
double total_probability(const CoincidenceTable& table);

/// S_m = sum_n |c_n|^2 (|V_{m,p}|^2 + |V_{m,q}|^2); mean photon number in m.
std::map<int, double> singles(const BiphotonState& state, const TransferMatrix& v,
                              const std::vector<int>& bins);

struct HomCurve {
  std::vector<double> alphas;
  std::vector<double> c01;
  std::map<int, std::vector<double>> singles;  // bins -1, 0, 1, 2
  std::vector<double> outside_fraction;        // per-photon leakage beyond bins -1..2
};

/// Two-photon input |1_0>|1_1> through the beamsplitter processor at each alpha.
HomCurve hom_scan(double theta, const std::vector<double>& alphas);

struct VisibilityFit {
  double k0 = 0.0;
  double k1 = 0.0;
  double k0_error = 0.0;
  double k1_error = 0.0;
  double visibility = 0.0;
  double std_error = 0.0;
  double model_at_0 = 0.0;
  double model_at_pi = 0.0;
};

struct SinglesCounts {
  std::vector<double> s0;
  std::vector<double> s1;
};

/// Variances max(count, 1) for Poisson counts.
std::vector<double> poisson_variances(const std::vector<double>& counts);

/// Weighted least squares of counts ~ K0 + K1 model(alpha), where model is
/// the theoretical C01 (or g2 = C01/(S0 S1) when use_g2) at depth theta.
/// `variances` are per-point variances of `counts`. With use_g2 the data are
/// counts / (S0 S1) and variances are scaled accordingly.
VisibilityFit visibility_fit(const std::vector<double>& alphas, const std::vector<double>& counts,
                             const std::vector<double>& variances, double theta,
                             bool use_g2 = false,
                             const std::optional<SinglesCounts>& singles_counts = std::nullopt);

}  // namespace qfp
