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
#include <optional>

#include "qfp/biphoton.hpp"
#include "qfp/elements.hpp"
#include "qfp/witness.hpp"

namespace qfp {

/// Step positions for independent gates on the two photons' qubit pairs:
/// A on {a_last_low_bin, a_last_low_bin + 1}, B likewise.
struct RotationLayout {
  int a_last_low_bin = -4;
  int b_last_low_bin = 4;
};

/// `base` with a pi step added for each Hadamard side, and an `alpha` step
/// between bins 0 and 1 when set.
ProcessorConfig configure_setting(const ProcessorConfig& base, Basis basis_a, Basis basis_b,
                                  std::optional<double> alpha, const RotationLayout& layout = {});

/// Opposite-sign EOMs of depth theta, flat shaper, window covering both
/// qubit pairs plus the truncation margin.
ProcessorConfig two_qubit_base(double theta, const RotationLayout& layout = {});

using Table2x2 = std::array<std::array<double, 2>, 2>;

struct RotationResult {
  Basis basis_a = Basis::kIdentity;
  Basis basis_b = Basis::kIdentity;
  Table2x2 raw{};         // [a][b] coincidence probability, qubit outcome indices
  Table2x2 normalized{};  // raw / subspace total
  double subspace_probability = 0.0;
  double total_probability = 0.0;  // all (n_A <= 0, n_B >= 1) coincidences
  double leakage_fraction = 0.0;   // 1 - subspace / total
};

/// Coincidence tables for the entangled qubit state under the chosen local
/// operations.
RotationResult rotate_entangled_pair(double theta, Basis basis_a, Basis basis_b,
                                     const RotationLayout& layout = {});

/// Ideal table: 1/2 on anticorrelated cells for I x I, 1/2 on correlated
/// cells for H x H, 1/4 everywhere otherwise.
Table2x2 ideal_rotation_table(Basis basis_a, Basis basis_b);

}  // namespace qfp
