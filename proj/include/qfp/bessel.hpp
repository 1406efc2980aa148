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

#include <vector>

namespace qfp {

/// Largest |x| accepted by the Bessel routines.
inline constexpr double kBesselMaxArgument = 50.0;

/// Integer-order Bessel function of the first kind J_order(x), |x| <= 50.
///
/// Evaluated by Miller's backward recurrence normalised with
/// J_0 + 2 sum_k J_2k = 1. Negative orders and arguments use
/// J_{-k}(x) = (-1)^k J_k(x) and J_k(-x) = (-1)^k J_k(x).
/// Throws DomainError for |x| > 50 or non-finite x.
double bessel_j(int order, double x);

/// J_0(x) .. J_max_order(x) from a single recurrence pass.
std::vector<double> bessel_j_table(int max_order, double x);

}  // namespace qfp
