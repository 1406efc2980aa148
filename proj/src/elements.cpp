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

#include "qfp/elements.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfp/bessel.hpp"
#include "qfp/error.hpp"

namespace qfp {

void EomSpec::validate() const {
  if (!std::isfinite(depth) || depth < 0.0) {
    throw ValidationError("eom: depth must be finite and >= 0, got " + std::to_string(depth));
  }
  if (sign != 1 && sign != -1) {
    throw ValidationError("eom: sign must be +1 or -1, got " + std::to_string(sign));
  }
}

double ShaperSpec::phase(int bin) const {
  const auto it = phases.find(bin);
  double value = it == phases.end() ? 0.0 : it->second;
  for (const auto& s : steps) {
    if (bin > s.last_low_bin) value += s.alpha;
  }
  return value;
}

double ShaperSpec::amplitude(int bin) const {
  const auto it = amplitudes.find(bin);
  return it == amplitudes.end() ? 1.0 : it->second;
}

void ShaperSpec::validate() const {
  for (const auto& [bin, a] : amplitudes) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw ValidationError("shaper: amplitude " + std::to_string(a) + " on bin " +
                            std::to_string(bin) + " outside [0, 1]");
    }
  }
  for (const auto& [bin, p] : phases) {
    if (!std::isfinite(p)) {
      throw ValidationError("shaper: non-finite phase on bin " + std::to_string(bin));
    }
  }
  for (const auto& s : steps) {
    if (!std::isfinite(s.alpha)) throw ValidationError("shaper: non-finite step phase");
  }
}

ShaperSpec ShaperSpec::step(double alpha, int last_low_bin) {
  ShaperSpec s;
  s.steps.push_back({last_low_bin, alpha});
  return s;
}

void ProcessorConfig::validate() const {
  eom1.validate();
  eom2.validate();
  shaper.validate();
}

ProcessorConfig ProcessorConfig::beamsplitter(double theta, double alpha, int last_low_bin,
                                              int populated_min, int populated_max) {
  ProcessorConfig c;
  c.eom1 = {theta, +1};
  c.eom2 = {theta, -1};
  c.shaper = ShaperSpec::step(alpha, last_low_bin);
  // Both modulators spread light, so the margin covers two passes.
  const int margin = 2 * truncation_margin(theta);
  c.window = ModeWindow(populated_min - margin, populated_max + margin);
  return c;
}

TransferMatrix eom_matrix(const EomSpec& spec, const ModeWindow& window) {
  spec.validate();
  const auto n = static_cast<Eigen::Index>(window.size());
  const int max_order = static_cast<int>(window.size()) - 1;
  const auto table = bessel_j_table(max_order, spec.sign * spec.depth);

  auto j = [&](int k) {
    const double v = table[static_cast<std::size_t>(std::abs(k))];
    return (k < 0 && (-k) % 2 == 1) ? -v : v;
  };

  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      m(r, c) = j(static_cast<int>(c - r));
    }
  }
  return TransferMatrix(window, window, std::move(m));
}

TransferMatrix shaper_matrix(const ShaperSpec& spec, const ModeWindow& window) {
  spec.validate();
  const auto n = static_cast<Eigen::Index>(window.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int bin = window.bin_at(i);
    m(i, i) = std::polar(spec.amplitude(bin), spec.phase(bin));
  }
  return TransferMatrix(window, window, std::move(m));
}

TransferMatrix processor_matrix(const ProcessorConfig& config) {
  config.validate();
  const auto first = eom_matrix(config.eom1, config.window);
  const auto shaper = shaper_matrix(config.shaper, config.window);
  const auto second = eom_matrix(config.eom2, config.window);
  return compose(compose(first, shaper), second);
}

}  // namespace qfp
