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

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qfp/elements.hpp"

namespace qfp {

using Matrix2c = Eigen::Matrix2cd;

/// Reflectivity (bin-hopping probability) and transmissivity of the tunable
/// frequency beamsplitter between bins 0 and 1.
struct BeamsplitterPoint {
  double alpha = 0.0;
  double reflectivity = 0.0;
  double transmissivity = 0.0;
  double success = 0.0;  // R + T
};

struct GateMetrics {
  double fidelity = 0.0;
  double success = 0.0;
  double leakage = 0.0;  // 1 - success
};

/// (1/sqrt 2) [[1, 1], [1, -1]].
Matrix2c hadamard();

/// Closed-form R/T for opposite-sign EOMs of depth `theta` around a step of
/// `alpha`, with the sum over J_k J_{k-1} truncated at k_max.
/// Requires k_max >= ceil(theta) + 10.
BeamsplitterPoint analytic_rt(double theta, double alpha, int k_max);
BeamsplitterPoint analytic_rt(double theta, double alpha);

/// R, T and P read off the 2x2 block of an arbitrary transfer matrix.
BeamsplitterPoint block_rt(const TransferMatrix& v, std::pair<int, int> bins = {0, 1},
                           double alpha = 0.0);

/// 2x2 block on `bins` with the global phase rotated so the first diagonal
/// element is real and non-negative.
Matrix2c normalized_block(const TransferMatrix& v, std::pair<int, int> bins = {0, 1});

/// P = tr(W^dag W)/2 and F = |tr(target^dag W)|^2 / (2 tr(W^dag W)) for the
/// 2x2 block W of `v` on `bins` (bins must be adjacent).
GateMetrics gate_metrics(const TransferMatrix& v, const Matrix2c& target,
                         std::pair<int, int> bins = {0, 1});

/// Hadamard metrics of the standard beamsplitter processor at depth theta.
GateMetrics hadamard_metrics(double theta, double alpha = 3.141592653589793);

struct ScanPoint {
  BeamsplitterPoint analytic;
  BeamsplitterPoint numerical;
  double fidelity_vs_hadamard = 0.0;
};

inline constexpr double kCascadeAgreementTol = 1e-6;

/// Closed-form R/T per alpha, cross-checked against the numerical cascade.
/// Throws ConsistencyError if the two disagree by more than 1e-6.
std::vector<ScanPoint> alpha_scan(double theta, const std::vector<double>& alphas);

struct DepthOptimum {
  double theta = 0.0;
  GateMetrics metrics;
  double theta_max_fidelity = 0.0;  // unconstrained fidelity maximiser
};

/// Hadamard working point at alpha = pi: the depth with highest success
/// probability among those reaching `min_fidelity`. Golden-section and
/// bisection searches to `tol` in theta.
DepthOptimum optimize_hadamard_depth(double lo = 0.0, double hi = 2.0,
                                     double min_fidelity = 0.9999, double tol = 1e-6);

/// First depth in [lo, hi] where R = T at alpha = pi, so the 2x2 block is
/// proportional to an exact Hadamard. Bisection on R - T to `tol`.
double exact_hadamard_depth(double lo = 0.0, double hi = 2.0, double tol = 1e-14);

/// Golden-section maximisation of a unimodal function on [lo, hi].
template <class F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace qfp
