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

#include <cstdint>
#include <functional>
#include <random>

#include <Eigen/Dense>

namespace qfp {

/// Univariate stepping-out / shrinkage slice sampler (Neal 2003) applied
/// coordinate by coordinate. The log density may return -infinity outside
/// its support.
class SliceSampler {
 public:
  using LogDensity = std::function<double(const Eigen::VectorXd&)>;

  SliceSampler(LogDensity log_density, double width = 0.5, int max_step_out = 50);

  /// One full sweep over all coordinates of x. `log_p` must hold the log
  /// density at x on entry and is updated on exit.
  void sweep(Eigen::VectorXd& x, double& log_p, std::mt19937_64& rng);

  /// Log density evaluations performed so far.
  std::uint64_t evaluations() const { return evaluations_; }

 private:
  double eval(const Eigen::VectorXd& x);

  LogDensity log_density_;
  double width_;
  int max_step_out_;
  std::uint64_t evaluations_ = 0;
};

}  // namespace qfp
