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
#include <vector>

#include "qfp/mode_lattice.hpp"

namespace qfp {

/// Sinusoidally driven phase modulator, phi(t) = sign * depth * sin(dw t).
struct EomSpec {
  double depth = 0.0;  // radians
  int sign = +1;

  void validate() const;
};

/// Adds `alpha` to the phase of every bin above `last_low_bin`.
struct PhaseStep {
  int last_low_bin = 0;
  double alpha = 0.0;
};

/// Line-by-line pulse shaper. Bins missing from the maps have phase 0 and
/// amplitude 1; steps are added on top of the per-bin phases.
struct ShaperSpec {
  std::map<int, double> phases;
  std::map<int, double> amplitudes;
  std::vector<PhaseStep> steps;

  double phase(int bin) const;
  double amplitude(int bin) const;
  void validate() const;

  /// Single step of `alpha` between bins `last_low_bin` and `last_low_bin + 1`.
  static ShaperSpec step(double alpha, int last_low_bin = 0);
};

/// EOM - shaper - EOM cascade on a fixed window.
struct ProcessorConfig {
  EomSpec eom1;
  ShaperSpec shaper;
  EomSpec eom2{0.0, -1};
  ModeWindow window = ModeWindow::symmetric(20);

  void validate() const;

  /// Opposite-sign EOMs of equal depth around a step shaper, on a window
  /// sized by truncation_margin() around bins [populated_min, populated_max].
  static ProcessorConfig beamsplitter(double theta, double alpha, int last_low_bin = 0,
                                      int populated_min = -1, int populated_max = 2);
};

/// Banded Toeplitz matrix V_{mn} = J_{n-m}(sign * depth).
TransferMatrix eom_matrix(const EomSpec& spec, const ModeWindow& window);

/// diag(amplitude_n * exp(i phase_n)).
TransferMatrix shaper_matrix(const ShaperSpec& spec, const ModeWindow& window);

TransferMatrix processor_matrix(const ProcessorConfig& config);

}  // namespace qfp
