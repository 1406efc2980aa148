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

#include "qfp/biphoton.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "qfp/elements.hpp"
#include "qfp/error.hpp"
#include "qfp/parallel.hpp"

namespace qfp {
namespace {

constexpr double kNormTol = 1e-12;

double norm2(const std::vector<PairTerm>& terms) {
  double s = 0.0;
  for (const auto& t : terms) s += std::norm(t.amp);
  return s;
}

}  // namespace

BiphotonState::BiphotonState(std::vector<PairTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw ValidationError("biphoton state: no terms");
  std::set<int> used;
  for (const auto& t : terms_) {
    if (t.mode_a == t.mode_b) {
      throw ValidationError("biphoton state: term with both photons in bin " +
                            std::to_string(t.mode_a));
    }
    for (int m : {t.mode_a, t.mode_b}) {
      if (!used.insert(m).second) {
        throw ValidationError("biphoton state: bin " + std::to_string(m) +
                              " appears in more than one term");
      }
    }
  }
  if (std::abs(norm2(terms_) - 1.0) > kNormTol) {
    throw ValidationError("biphoton state: amplitudes are not normalised");
  }
}

BiphotonState BiphotonState::normalized(std::vector<PairTerm> terms) {
  const double n = std::sqrt(norm2(terms));
  if (n == 0.0) throw ValidationError("biphoton state: all amplitudes are zero");
  for (auto& t : terms) t.amp /= n;
  return BiphotonState(std::move(terms));
}

BiphotonState BiphotonState::pair(int mode_a, int mode_b) {
  return BiphotonState({{mode_a, mode_b, 1.0}});
}

BiphotonState BiphotonState::entangled_qubits() {
  const double c = 1.0 / std::numbers::sqrt2;
  return BiphotonState({{-3, 4, c}, {-4, 5, c}});
}

namespace {

Complex pair_amplitude(const BiphotonState& state, const TransferMatrix& v, int m, int mp) {
  Complex a{0.0, 0.0};
  for (const auto& t : state.terms()) {
    a += t.amp * (v(m, t.mode_a) * v(mp, t.mode_b) + v(mp, t.mode_a) * v(m, t.mode_b));
  }
  return a;
}

Complex bunched_amplitude(const BiphotonState& state, const TransferMatrix& v, int m) {
  Complex a{0.0, 0.0};
  for (const auto& t : state.terms()) a += t.amp * v(m, t.mode_a) * v(m, t.mode_b);
  return a;
}

}  // namespace

CoincidenceTable coincidences(const BiphotonState& state, const TransferMatrix& v,
                              const std::vector<BinPair>& pairs) {
  CoincidenceTable table;
  for (const auto& [m, mp] : pairs) {
    if (m == mp) {
      // |2_m> carries a sqrt(2) from a^dag a^dag |0>.
      table.bunching[m] = 2.0 * std::norm(bunched_amplitude(state, v, m));
    } else {
      table.probabilities[{m, mp}] = std::norm(pair_amplitude(state, v, m, mp));
    }
  }
  return table;
}

CoincidenceTable all_coincidences(const BiphotonState& state, const TransferMatrix& v) {
  const auto& w = v.window_out();
  std::vector<BinPair> pairs;
  pairs.reserve(w.size() * (w.size() + 1) / 2);
  for (int m = w.n_min(); m <= w.n_max(); ++m) {
    for (int mp = m; mp <= w.n_max(); ++mp) pairs.emplace_back(m, mp);
  }
  return coincidences(state, v, pairs);
}

double total_probability(const CoincidenceTable& table) {
  double s = 0.0;
  for (const auto& [k, p] : table.probabilities) s += p;
  for (const auto& [k, p] : table.bunching) s += p;
  return s;
}

std::map<int, double> singles(const BiphotonState& state, const TransferMatrix& v,
                              const std::vector<int>& bins) {
  std::map<int, double> out;
  for (int m : bins) {
    double s = 0.0;
    for (const auto& t : state.terms()) {
      s += std::norm(t.amp) * (std::norm(v(m, t.mode_a)) + std::norm(v(m, t.mode_b)));
    }
    out[m] = s;
  }
  return out;
}

HomCurve hom_scan(double theta, const std::vector<double>& alphas) {
  if (alphas.empty()) throw ValidationError("hom_scan: empty alpha grid");
  static const std::vector<int> kTracked{-1, 0, 1, 2};
  const auto input = BiphotonState::pair(0, 1);

  HomCurve curve;
  curve.alphas = alphas;
  curve.c01.assign(alphas.size(), 0.0);
  curve.outside_fraction.assign(alphas.size(), 0.0);
  for (int m : kTracked) curve.singles[m].assign(alphas.size(), 0.0);

  parallel_for(alphas.size(), [&](std::size_t i) {
    const auto v = processor_matrix(ProcessorConfig::beamsplitter(theta, alphas[i]));
    curve.c01[i] = coincidences(input, v, {{0, 1}}).probabilities.at({0, 1});
    const auto s = singles(input, v, kTracked);
    double inside = 0.0;
    for (int m : kTracked) {
      // Distinct map entries per bin; each thread writes only index i.
      curve.singles.at(m)[i] = s.at(m);
      inside += s.at(m);
    }
    curve.outside_fraction[i] = (2.0 - inside) / 2.0;
  });
  return curve;
}

std::vector<double> poisson_variances(const std::vector<double>& counts) {
  std::vector<double> v(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) v[i] = std::max(counts[i], 1.0);
  return v;
}

VisibilityFit visibility_fit(const std::vector<double>& alphas, const std::vector<double>& counts,
                             const std::vector<double>& variances, double theta, bool use_g2,
                             const std::optional<SinglesCounts>& singles_counts) {
  const std::size_t n = alphas.size();
  if (n == 0 || counts.size() != n || variances.size() != n) {
    throw ValidationError("visibility_fit: alphas, counts and variances must have equal length");
  }
  for (double w : variances) {
    if (!(w > 0.0)) throw ValidationError("visibility_fit: variances must be positive");
  }
  if (use_g2 && (!singles_counts || singles_counts->s0.size() != n ||
                 singles_counts->s1.size() != n)) {
    throw ValidationError("visibility_fit: g2 fit needs singles counts for every point");
  }

  std::vector<double> grid = alphas;
  grid.push_back(0.0);
  grid.push_back(std::numbers::pi);
  const auto theory = hom_scan(theta, grid);
  auto model = [&](std::size_t i) {
    const double c = theory.c01[i];
    return use_g2 ? c / (theory.singles.at(0)[i] * theory.singles.at(1)[i]) : c;
  };

  // Normal equations for y = K0 + K1 x with weights 1/var.
  double s = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double y = counts[i];
    double var = variances[i];
    if (use_g2) {
      const double denom = singles_counts->s0[i] * singles_counts->s1[i];
      if (!(denom > 0.0)) throw ValidationError("visibility_fit: zero singles in g2 fit");
      y /= denom;
      var /= denom * denom;
    }
    const double w = 1.0 / var;
    const double x = model(i);
    s += w;
    sx += w * x;
    sxx += w * x * x;
    sy += w * y;
    sxy += w * x * y;
  }
  const double det = s * sxx - sx * sx;
  if (!(std::abs(det) > 1e-12 * s * sxx) || !std::isfinite(det)) {
    throw FitError("visibility_fit: singular normal equations (model is flat over the grid)");
  }

  VisibilityFit fit;
  fit.k1 = (s * sxy - sx * sy) / det;
  fit.k0 = (sxx * sy - sx * sxy) / det;
  const double var_k0 = sxx / det;
  const double var_k1 = s / det;
  const double cov = -sx / det;
  fit.k0_error = std::sqrt(var_k0);
  fit.k1_error = std::sqrt(var_k1);

  fit.model_at_0 = model(n);
  fit.model_at_pi = model(n + 1);
  const double diff = fit.model_at_0 - fit.model_at_pi;
  const double sum = fit.model_at_0 + fit.model_at_pi;
  const double den = 2.0 * fit.k0 + fit.k1 * sum;
  if (den == 0.0) throw FitError("visibility_fit: visibility denominator vanishes");
  fit.visibility = fit.k1 * diff / den;

  const double dv_dk0 = -2.0 * fit.k1 * diff / (den * den);
  const double dv_dk1 = 2.0 * fit.k0 * diff / (den * den);
  fit.std_error = std::sqrt(std::max(
      0.0, dv_dk0 * dv_dk0 * var_k0 + dv_dk1 * dv_dk1 * var_k1 + 2.0 * dv_dk0 * dv_dk1 * cov));
  return fit;
}

}  // namespace qfp
