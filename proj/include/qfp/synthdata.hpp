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

#include <cstdint>
#include <optional>
#include <vector>

#include "qfp/biphoton.hpp"
#include "qfp/elements.hpp"
#include "qfp/rotation.hpp"
#include "qfp/tomography.hpp"

namespace qfp {

struct NoiseModel {
  double accidental_rate = 0.0;  // accidental coincidences per second
  double dark_rate = 0.0;        // dark counts per detector per second
  double integration_time = 1.0;

  void validate() const;
};

/// One detector pairing. Hadamard bases add a pi step below the upper bin
/// of that photon's qubit pair; `alpha`, when set, adds a beamsplitter step
/// between bins 0 and 1 (HOM scans).
struct DetectionSetting {
  Basis basis_a = Basis::kIdentity;
  Basis basis_b = Basis::kIdentity;
  int bin_a = 0;
  int bin_b = 1;
  double eta_a = 1.0;
  double eta_b = 1.0;
  std::optional<double> alpha;
};

struct RecordEntry {
  Basis basis_a = Basis::kIdentity;
  Basis basis_b = Basis::kIdentity;
  int bin_a = 0;
  int bin_b = 1;
  SettingData data;
  std::optional<double> alpha;
};

/// Canonical count file contents.
struct CountRecord {
  static constexpr int kSchemaVersion = 1;
  std::vector<RecordEntry> settings;
  double integration_time = 0.0;
  std::uint64_t seed = 0;
};

struct ExpectedCounts {
  double coincidences = 0.0;
  double singles_a = 0.0;
  double singles_b = 0.0;
};

/// Mean counts of the forward model: true coincidences plus the accidental
/// floor; singles include dark counts and the accidental coincidences.
ExpectedCounts expected_counts(const BiphotonState& state, const ProcessorConfig& config,
                               const DetectionSetting& setting, double pair_rate,
                               const NoiseModel& noise, const RotationLayout& layout = {});

/// Poisson-sampled counts for each setting, reproducible for a given seed.
CountRecord simulate_counts(const BiphotonState& state, const ProcessorConfig& config,
                            const std::vector<DetectionSetting>& settings, double pair_rate,
                            const NoiseModel& noise, std::uint64_t seed,
                            const RotationLayout& layout = {});

/// HOM record: input |1_0>|1_1>, detectors on bins 0 and 1, one entry per alpha.
CountRecord simulate_hom(double theta, const std::vector<double>& alphas, double pair_rate,
                         const NoiseModel& noise, std::uint64_t seed);

/// Multinomial counts over {coincidence, A only, B only, none} for N pairs per
/// setting, drawn from the tomography forward model. With `noiseless`, the
/// expected counts are rounded instead of sampled.
CountRecord simulate_tomography(const TomoParams& params, const std::vector<TomoSetting>& settings,
                                std::uint64_t seed, bool noiseless = false,
                                const QubitEncoding& encoding = {});

/// Tomography settings carried by a record (entries without alpha).
std::vector<TomoSetting> tomography_settings(const CountRecord& record);

/// 2x2 coincidence table of a basis pair, indexed by qubit outcome.
SettingCounts setting_counts(const CountRecord& record, Basis basis_a, Basis basis_b,
                             const QubitEncoding& encoding = {});

}  // namespace qfp
