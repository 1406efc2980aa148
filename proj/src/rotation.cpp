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

#include "qfp/rotation.hpp"

#include <numbers>

namespace qfp {

ProcessorConfig configure_setting(const ProcessorConfig& base, Basis basis_a, Basis basis_b,
                                  std::optional<double> alpha, const RotationLayout& layout) {
  ProcessorConfig c = base;
  if (basis_a == Basis::kHadamard) {
    c.shaper.steps.push_back({layout.a_last_low_bin, std::numbers::pi});
  }
  if (basis_b == Basis::kHadamard) {
    c.shaper.steps.push_back({layout.b_last_low_bin, std::numbers::pi});
  }
  if (alpha) c.shaper.steps.push_back({0, *alpha});
  return c;
}

ProcessorConfig two_qubit_base(double theta, const RotationLayout& layout) {
  auto c = ProcessorConfig::beamsplitter(theta, 0.0, 0, layout.a_last_low_bin,
                                         layout.b_last_low_bin + 1);
  c.shaper = {};
  return c;
}

RotationResult rotate_entangled_pair(double theta, Basis basis_a, Basis basis_b,
                                     const RotationLayout& layout) {
  const auto config =
      configure_setting(two_qubit_base(theta, layout), basis_a, basis_b, std::nullopt, layout);
  const auto v = processor_matrix(config);
  const auto state = BiphotonState::normalized(
      {{layout.a_last_low_bin + 1, layout.b_last_low_bin, 1.0},
       {layout.a_last_low_bin, layout.b_last_low_bin + 1, 1.0}});

  RotationResult r;
  r.basis_a = basis_a;
  r.basis_b = basis_b;

  const auto& w = v.window_out();
  std::vector<BinPair> pairs;
  for (int a = w.n_min(); a <= 0; ++a)
    for (int b = 1; b <= w.n_max(); ++b) pairs.emplace_back(a, b);
  const auto table = coincidences(state, v, pairs);
  for (const auto& [k, p] : table.probabilities) r.total_probability += p;

  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double p =
          table.probabilities.at({layout.a_last_low_bin + a, layout.b_last_low_bin + b});
      r.raw[a][b] = p;
      r.subspace_probability += p;
    }
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) r.normalized[a][b] = r.raw[a][b] / r.subspace_probability;
  r.leakage_fraction = 1.0 - r.subspace_probability / r.total_probability;
  return r;
}

Table2x2 ideal_rotation_table(Basis basis_a, Basis basis_b) {
  if (basis_a != basis_b) return {{{0.25, 0.25}, {0.25, 0.25}}};
  if (basis_a == Basis::kIdentity) return {{{0.0, 0.5}, {0.5, 0.0}}};
  return {{{0.5, 0.0}, {0.0, 0.5}}};
}

}  // namespace qfp
