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

#include "qfp/synthdata.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qfp/error.hpp"

namespace qfp {

void NoiseModel::validate() const {
  if (!(accidental_rate >= 0.0 && dark_rate >= 0.0 && integration_time >= 0.0)) {
    throw ValidationError("noise model: rates and integration time must be >= 0");
  }
}

namespace {

void check_setting(const DetectionSetting& s) {
  if (!(s.eta_a >= 0.0 && s.eta_a <= 1.0 && s.eta_b >= 0.0 && s.eta_b <= 1.0)) {
    throw ValidationError("detection setting: efficiencies must lie in [0, 1]");
  }
  if (s.bin_a == s.bin_b) throw ValidationError("detection setting: detectors on the same bin");
}

std::uint64_t poisson(std::mt19937_64& rng, double mean) {
  if (!(mean > 0.0)) return 0;
  return static_cast<std::uint64_t>(std::poisson_distribution<long long>(mean)(rng));
}

struct Means {
  double true_coincidences, accidentals, extra_a, extra_b, dark;
};

Means forward_means(const BiphotonState& state, const ProcessorConfig& config,
                    const DetectionSetting& s, double pair_rate, const NoiseModel& noise,
                    const RotationLayout& layout) {
  check_setting(s);
  noise.validate();
  if (!(pair_rate >= 0.0)) throw ValidationError("simulate_counts: negative pair rate");
  const auto v = processor_matrix(configure_setting(config, s.basis_a, s.basis_b, s.alpha, layout));
  const double pairs = pair_rate * noise.integration_time;
  const double pc = coincidences(state, v, {{s.bin_a, s.bin_b}}).probabilities.at({s.bin_a, s.bin_b});
  const auto single = singles(state, v, {s.bin_a, s.bin_b});

  Means m;
  m.true_coincidences = pairs * s.eta_a * s.eta_b * pc;
  m.accidentals = noise.accidental_rate * noise.integration_time;
  m.extra_a = std::max(0.0, pairs * s.eta_a * single.at(s.bin_a) - m.true_coincidences);
  m.extra_b = std::max(0.0, pairs * s.eta_b * single.at(s.bin_b) - m.true_coincidences);
  m.dark = noise.dark_rate * noise.integration_time;
  return m;
}

}  // namespace

ExpectedCounts expected_counts(const BiphotonState& state, const ProcessorConfig& config,
                               const DetectionSetting& setting, double pair_rate,
                               const NoiseModel& noise, const RotationLayout& layout) {
  const auto m = forward_means(state, config, setting, pair_rate, noise, layout);
  const double c = m.true_coincidences + m.accidentals;
  return {c, c + m.extra_a + m.dark, c + m.extra_b + m.dark};
}

CountRecord simulate_counts(const BiphotonState& state, const ProcessorConfig& config,
                            const std::vector<DetectionSetting>& settings, double pair_rate,
                            const NoiseModel& noise, std::uint64_t seed,
                            const RotationLayout& layout) {
  std::mt19937_64 rng(seed);
  CountRecord record;
  record.integration_time = noise.integration_time;
  record.seed = seed;
  for (const auto& s : settings) {
    const auto m = forward_means(state, config, s, pair_rate, noise, layout);
    RecordEntry e{s.basis_a, s.basis_b, s.bin_a, s.bin_b, {}, s.alpha};
    e.data.coincidences = poisson(rng, m.true_coincidences) + poisson(rng, m.accidentals);
    e.data.singles_a = e.data.coincidences + poisson(rng, m.extra_a) + poisson(rng, m.dark);
    e.data.singles_b = e.data.coincidences + poisson(rng, m.extra_b) + poisson(rng, m.dark);
    record.settings.push_back(e);
  }
  return record;
}

CountRecord simulate_hom(double theta, const std::vector<double>& alphas, double pair_rate,
                         const NoiseModel& noise, std::uint64_t seed) {
  auto base = ProcessorConfig::beamsplitter(theta, 0.0);
  base.shaper = {};
  std::vector<DetectionSetting> settings;
  for (double a : alphas) {
    DetectionSetting s;
    s.alpha = a;
    settings.push_back(s);
  }
  return simulate_counts(BiphotonState::pair(0, 1), base, settings, pair_rate, noise, seed);
}

CountRecord simulate_tomography(const TomoParams& params, const std::vector<TomoSetting>& settings,
                                std::uint64_t seed, bool noiseless, const QubitEncoding& encoding) {
  std::mt19937_64 rng(seed);
  CountRecord record;
  record.seed = seed;
  for (const auto& s : settings) {
    const auto p = outcome_probabilities(params, s, encoding);
    const auto n = params.n_pairs;
    std::uint64_t cc, c0, zc;
    if (noiseless) {
      const auto nd = static_cast<double>(n);
      cc = static_cast<std::uint64_t>(std::llround(nd * p.cc));
      c0 = static_cast<std::uint64_t>(std::llround(nd * p.c0));
      zc = static_cast<std::uint64_t>(std::llround(nd * p.zero_c));
    } else {
      // Multinomial by sequential conditional binomials.
      auto draw = [&](std::uint64_t trials, double prob) -> std::uint64_t {
        if (trials == 0 || prob <= 0.0) return 0;
        if (prob >= 1.0) return trials;
        return std::binomial_distribution<std::uint64_t>(trials, prob)(rng);
      };
      double left = 1.0;
      std::uint64_t remaining = n;
      cc = draw(remaining, p.cc / left);
      remaining -= cc;
      left -= p.cc;
      c0 = draw(remaining, left > 0 ? p.c0 / left : 0.0);
      remaining -= c0;
      left -= p.c0;
      zc = draw(remaining, left > 0 ? p.zero_c / left : 0.0);
    }
    RecordEntry e{s.basis_a, s.basis_b, s.bin_a, s.bin_b, {cc, cc + c0, cc + zc}, std::nullopt};
    record.settings.push_back(e);
  }
  return record;
}

std::vector<TomoSetting> tomography_settings(const CountRecord& record) {
  std::vector<TomoSetting> out;
  for (const auto& e : record.settings) {
    if (e.alpha) continue;
    TomoSetting s{e.basis_a, e.basis_b, e.bin_a, e.bin_b, e.data};
    s.validate();
    out.push_back(s);
  }
  return out;
}

SettingCounts setting_counts(const CountRecord& record, Basis basis_a, Basis basis_b,
                             const QubitEncoding& encoding) {
  SettingCounts sc;
  sc.basis_a = basis_a;
  sc.basis_b = basis_b;
  std::array<std::array<bool, 2>, 2> seen{};
  for (const auto& e : record.settings) {
    if (e.alpha || e.basis_a != basis_a || e.basis_b != basis_b) continue;
    const int a = encoding.a_index(e.bin_a);
    const int b = encoding.b_index(e.bin_b);
    if (seen[a][b]) {
      throw DataError("count record: duplicate entry for bins " + std::to_string(e.bin_a) +
                      ", " + std::to_string(e.bin_b));
    }
    seen[a][b] = true;
    sc.counts[a][b] = e.data.coincidences;
  }
  for (const auto& row : seen)
    for (bool s : row)
      if (!s) throw DataError("count record: incomplete 2x2 table for " + to_string(basis_a) +
                              to_string(basis_b));
  return sc;
}

}  // namespace qfp
