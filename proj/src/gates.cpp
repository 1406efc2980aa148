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

#include "qfp/gates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "qfp/bessel.hpp"
#include "qfp/error.hpp"
#include "qfp/parallel.hpp"

namespace qfp {

Matrix2c hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  Matrix2c h;
  h << s, s, s, -s;
  return h;
}

BeamsplitterPoint analytic_rt(double theta, double alpha, int k_max) {
  if (k_max < static_cast<int>(std::ceil(theta)) + 10) {
    throw ValidationError("analytic_rt: k_max must be at least ceil(theta) + 10");
  }
  const auto j = bessel_j_table(k_max, theta);
  double hop = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    hop += j[static_cast<std::size_t>(k)] * j[static_cast<std::size_t>(k - 1)];
  }
  const double j0sq = j[0] * j[0];
  // Reduce the phase first so that alpha = 2 pi gives e = 1 exactly.
  const Complex e = std::polar(1.0, std::remainder(alpha, 2.0 * std::numbers::pi));

  BeamsplitterPoint p;
  p.alpha = alpha;
  p.reflectivity = std::norm((1.0 - e) * hop);
  p.transmissivity = std::norm(j0sq + (1.0 + e) * (1.0 - j0sq) / 2.0);
  p.success = p.reflectivity + p.transmissivity;
  return p;
}

BeamsplitterPoint analytic_rt(double theta, double alpha) {
  return analytic_rt(theta, alpha, static_cast<int>(std::ceil(theta)) + 30);
}

namespace {

Matrix2c extract_block(const TransferMatrix& v, std::pair<int, int> bins) {
  const auto [b0, b1] = bins;
  Matrix2c w;
  w << v(b0, b0), v(b0, b1), v(b1, b0), v(b1, b1);
  return w;
}

}  // namespace

BeamsplitterPoint block_rt(const TransferMatrix& v, std::pair<int, int> bins, double alpha) {
  const Matrix2c w = extract_block(v, bins);
  BeamsplitterPoint p;
  p.alpha = alpha;
  p.reflectivity = std::norm(w(1, 0));
  p.transmissivity = std::norm(w(0, 0));
  p.success = p.reflectivity + p.transmissivity;
  return p;
}

Matrix2c normalized_block(const TransferMatrix& v, std::pair<int, int> bins) {
  Matrix2c w = extract_block(v, bins);
  if (std::abs(w(0, 0)) > 0.0) w *= std::polar(1.0, -std::arg(w(0, 0)));
  return w;
}

GateMetrics gate_metrics(const TransferMatrix& v, const Matrix2c& target,
                         std::pair<int, int> bins) {
  const Matrix2c w = extract_block(v, bins);
  const double norm = (w.adjoint() * w).trace().real();
  GateMetrics m;
  m.success = norm / 2.0;
  m.leakage = 1.0 - m.success;
  m.fidelity = norm > 0.0 ? std::norm((target.adjoint() * w).trace()) / (2.0 * norm) : 0.0;
  return m;
}

GateMetrics hadamard_metrics(double theta, double alpha) {
  return gate_metrics(processor_matrix(ProcessorConfig::beamsplitter(theta, alpha)),
                      hadamard());
}

std::vector<ScanPoint> alpha_scan(double theta, const std::vector<double>& alphas) {
  if (alphas.empty()) throw ValidationError("alpha_scan: empty alpha grid");
  std::vector<ScanPoint> out(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t i) {
    const double alpha = alphas[i];
    const auto v = processor_matrix(ProcessorConfig::beamsplitter(theta, alpha));
    ScanPoint& s = out[i];
    s.analytic = analytic_rt(theta, alpha);
    s.numerical = block_rt(v, {0, 1}, alpha);
    s.fidelity_vs_hadamard = gate_metrics(v, hadamard()).fidelity;

    const double dr = std::abs(s.analytic.reflectivity - s.numerical.reflectivity);
    const double dt = std::abs(s.analytic.transmissivity - s.numerical.transmissivity);
    if (dr > kCascadeAgreementTol || dt > kCascadeAgreementTol) {
      std::ostringstream msg;
      msg << "alpha_scan: closed form and cascade disagree at theta=" << theta
          << " alpha=" << alpha << " (dR=" << dr << ", dT=" << dt << ")";
      throw ConsistencyError(msg.str());
    }
  });
  return out;
}

DepthOptimum optimize_hadamard_depth(double lo, double hi, double min_fidelity, double tol) {
  if (!(lo < hi)) throw ValidationError("optimize_hadamard_depth: empty search interval");
  constexpr double kPi = std::numbers::pi;
  auto fidelity = [&](double t) { return hadamard_metrics(t, kPi).fidelity; };
  auto success = [&](double t) { return hadamard_metrics(t, kPi).success; };

  DepthOptimum best;
  best.theta_max_fidelity = golden_section_max(fidelity, lo, hi, tol);
  const double peak = fidelity(best.theta_max_fidelity);
  if (peak < min_fidelity) {
    best.theta = best.theta_max_fidelity;
    best.metrics = hadamard_metrics(best.theta, kPi);
    return best;
  }

  // Edges of the feasible set {F >= min_fidelity} around the fidelity peak.
  auto edge = [&](double feasible, double infeasible) {
    if (fidelity(infeasible) >= min_fidelity) return infeasible;
    while (std::abs(feasible - infeasible) > tol) {
      const double mid = 0.5 * (feasible + infeasible);
      (fidelity(mid) >= min_fidelity ? feasible : infeasible) = mid;
    }
    return feasible;
  };
  const double left = edge(best.theta_max_fidelity, lo);
  const double right = edge(best.theta_max_fidelity, hi);

  best.theta = golden_section_max(success, left, right, tol);
  // Golden section lands within tol of an edge; snap to the edge when that
  // edge is at least as good.
  for (double candidate : {left, right}) {
    if (success(candidate) >= success(best.theta)) best.theta = candidate;
  }
  best.metrics = hadamard_metrics(best.theta, kPi);
  return best;
}

double exact_hadamard_depth(double lo, double hi, double tol) {
  if (!(lo < hi)) throw ValidationError("exact_hadamard_depth: empty search interval");
  auto gap = [](double t) {
    const auto p = analytic_rt(t, std::numbers::pi);
    return p.reflectivity - p.transmissivity;
  };
  // First sign change of R - T on a coarse grid, then bisection.
  constexpr int kGrid = 200;
  double a = lo;
  bool a_negative = gap(a) < 0.0;
  for (int i = 1; i <= kGrid; ++i) {
    double b = lo + (hi - lo) * i / kGrid;
    if ((gap(b) < 0.0) == a_negative) {
      a = b;
      continue;
    }
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      ((gap(mid) < 0.0) == a_negative ? a : b) = mid;
    }
    return 0.5 * (a + b);
  }
  throw DomainError("exact_hadamard_depth: R never equals T in the search interval");
}

}  // namespace qfp
