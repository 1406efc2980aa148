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

// Independent reference computations used only by the tests.

#include <cmath>
#include <complex>
#include <vector>

namespace qfp::oracle {

/// Power series sum_k (-1)^k (x/2)^{2k+n} / (k! (k+n)!) in long double,
/// summed until terms stop contributing. Good for n >= 0 and |x| <= 12.
inline double bessel_series(int n, double x) {
  if (n < 0) return (n % 2 ? -1.0 : 1.0) * bessel_series(-n, x);
  const long double h = static_cast<long double>(x) / 2.0L;
  long double term = 1.0L;
  for (int i = 1; i <= n; ++i) term *= h / i;
  long double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= -h * h / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (std::fabs(term) < 1e-30L * std::fabs(sum) + 1e-300L) break;
  }
  return static_cast<double>(sum);
}

/// R and T of the beamsplitter by summing J_k J_{k-1} directly with the
/// series oracle.
struct RT {
  double r;
  double t;
};

inline RT beamsplitter_rt(double theta, double alpha, int k_max = 40) {
  double hop = 0.0;
  for (int k = 1; k <= k_max; ++k) hop += bessel_series(k, theta) * bessel_series(k - 1, theta);
  const double j0 = bessel_series(0, theta);
  const std::complex<double> e = std::polar(1.0, alpha);
  return {std::norm((1.0 - e) * hop), std::norm(j0 * j0 + (1.0 + e) * (1.0 - j0 * j0) / 2.0)};
}

/// Plug-in conditional entropy H(A|B) in bits of the smoothed frequencies
/// (counts + 1) / (total + 4); cells ordered 00, 01, 10, 11 as [a][b].
inline double plugin_conditional_entropy(const double (&c)[4]) {
  double total = 4.0;
  for (double v : c) total += v;
  double p[4];
  for (int i = 0; i < 4; ++i) p[i] = (c[i] + 1.0) / total;
  auto h = [](double q) { return q > 0.0 ? -q * std::log2(q) : 0.0; };
  const double joint = h(p[0]) + h(p[1]) + h(p[2]) + h(p[3]);
  const double marg_b = h(p[0] + p[2]) + h(p[1] + p[3]);
  return joint - marg_b;
}

}  // namespace qfp::oracle
