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

#include "qfp/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "qfp/error.hpp"

namespace qfp {
namespace {

constexpr double kRescaleAbove = 1e200;
constexpr double kTinyArgument = 1e-6;

void check_argument(double x) {
  if (!std::isfinite(x) || std::abs(x) > kBesselMaxArgument) {
    throw DomainError("bessel_j: argument " + std::to_string(x) + " outside [-50, 50]");
  }
}

// Three-term power series; exact to double precision for |x| < 1e-6.
std::vector<double> tiny_argument_table(int max_order, double x) {
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  const double half = 0.5 * x;
  const double q = half * half;
  double lead = 1.0;  // (x/2)^n / n!
  for (int n = 0; n <= max_order; ++n) {
    if (n > 0) lead *= half / n;
    if (lead == 0.0) break;
    out[static_cast<std::size_t>(n)] =
        lead * (1.0 - q / (n + 1) + q * q / (2.0 * (n + 1) * (n + 2)));
  }
  return out;
}

// Miller backward recurrence for x > 0.
std::vector<double> miller_table(int max_order, double x) {
  const double base = std::max<double>(max_order, std::ceil(x));
  int start = static_cast<int>(base) + 30 + static_cast<int>(std::sqrt(160.0 * base));
  start += start % 2;

  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[static_cast<std::size_t>(start)] = 1e-30;
  const double two_over_x = 2.0 / x;
  for (int k = start; k >= 1; --k) {
    const auto ku = static_cast<std::size_t>(k);
    j[ku - 1] = k * two_over_x * j[ku] - j[ku + 1];
    if (std::abs(j[ku - 1]) > kRescaleAbove) {
      for (std::size_t i = ku - 1; i < j.size(); ++i) j[i] /= kRescaleAbove;
    }
  }

  double norm = j[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0 * j[static_cast<std::size_t>(k)];

  std::vector<double> out(static_cast<std::size_t>(max_order) + 1);
  for (int k = 0; k <= max_order; ++k) {
    out[static_cast<std::size_t>(k)] = j[static_cast<std::size_t>(k)] / norm;
  }
  return out;
}

}  // namespace

std::vector<double> bessel_j_table(int max_order, double x) {
  check_argument(x);
  if (max_order < 0) throw ValidationError("bessel_j_table: negative max_order");

  const double ax = std::abs(x);
  std::vector<double> out;
  if (ax == 0.0) {
    out.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  out = ax < kTinyArgument ? tiny_argument_table(max_order, ax) : miller_table(max_order, ax);
  if (x < 0) {
    for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
  }
  return out;
}

double bessel_j(int order, double x) {
  check_argument(x);
  const int n = std::abs(order);
  const double value = bessel_j_table(n, x)[static_cast<std::size_t>(n)];
  return (order < 0 && n % 2 == 1) ? -value : value;
}

}  // namespace qfp
