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

#include "qfp/slice_sampler.hpp"

#include <cmath>

#include "qfp/error.hpp"

namespace qfp {

SliceSampler::SliceSampler(LogDensity log_density, double width, int max_step_out)
    : log_density_(std::move(log_density)), width_(width), max_step_out_(max_step_out) {
  if (!(width > 0.0)) throw ValidationError("slice sampler: width must be positive");
  if (max_step_out < 0) throw ValidationError("slice sampler: negative step-out limit");
}

double SliceSampler::eval(const Eigen::VectorXd& x) {
  ++evaluations_;
  return log_density_(x);
}

void SliceSampler::sweep(Eigen::VectorXd& x, double& log_p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);

  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double x0 = x[i];
    const double level = log_p - expo(rng);

    double left = x0 - width_ * unif(rng);
    double right = left + width_;
    int j = static_cast<int>(std::floor(max_step_out_ * unif(rng)));
    int k = max_step_out_ - 1 - j;

    auto at = [&](double xi) {
      x[i] = xi;
      return eval(x);
    };
    while (j-- > 0 && at(left) > level) left -= width_;
    while (k-- > 0 && at(right) > level) right += width_;

    // Shrink until a point inside the slice is found; x0 is always inside.
    for (;;) {
      const double candidate = left + unif(rng) * (right - left);
      const double lp = at(candidate);
      if (lp > level) {
        log_p = lp;
        break;
      }
      if (candidate < x0) {
        left = candidate;
      } else {
        right = candidate;
      }
      if (right - left < 1e-14 * (1.0 + std::abs(x0))) {
        x[i] = x0;
        break;
      }
    }
  }
}

}  // namespace qfp
