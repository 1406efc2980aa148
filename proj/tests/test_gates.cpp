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

#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "qfp/error.hpp"
#include "qfp/gates.hpp"

using namespace qfp;
constexpr double kPi = std::numbers::pi;

TEST_CASE("closed form at the working depth") {
  const auto p = analytic_rt(0.8169, kPi);
  CHECK(std::abs(p.reflectivity - 0.4781) < 5e-4);
  CHECK(std::abs(p.transmissivity - 0.4979) < 5e-4);
  CHECK(std::abs(p.success - 0.9760) < 5e-4);
  CHECK(p.success == doctest::Approx(p.reflectivity + p.transmissivity).epsilon(1e-15));
}

TEST_CASE("no hopping without a phase step") {
  const auto p0 = analytic_rt(0.8169, 0.0);
  CHECK(p0.reflectivity == 0.0);
  CHECK(p0.transmissivity == 1.0);
  CHECK(analytic_rt(0.8169, 2.0 * kPi).reflectivity == 0.0);
  CHECK(analytic_rt(1.3, 4.0 * kPi).reflectivity == 0.0);
}

TEST_CASE("closed form matches the series oracle") {
  for (double theta : {0.1, 0.5, 0.8169, 1.2, 2.0}) {
    for (double alpha = 0.0; alpha <= 2.0 * kPi; alpha += 0.3) {
      const auto p = analytic_rt(theta, alpha);
      const auto ref = oracle::beamsplitter_rt(theta, alpha);
      CHECK(std::abs(p.reflectivity - ref.r) < 1e-13);
      CHECK(std::abs(p.transmissivity - ref.t) < 1e-13);
    }
  }
}

TEST_CASE("reflectivity is symmetric about pi") {
  for (double alpha = 0.0; alpha <= kPi; alpha += 0.1) {
    CHECK(std::abs(analytic_rt(0.8169, alpha).reflectivity -
                   analytic_rt(0.8169, 2.0 * kPi - alpha).reflectivity) < 1e-12);
  }
}

TEST_CASE("k_max guard") {
  CHECK_THROWS_AS(analytic_rt(0.8169, kPi, 10), ValidationError);
  CHECK_NOTHROW(analytic_rt(0.8169, kPi, 11));
  CHECK_THROWS_AS(analytic_rt(3.5, kPi, 13), ValidationError);
}

TEST_CASE("invariants over a (theta, alpha) grid") {
  for (double theta = 0.0; theta <= 2.0; theta += 0.25) {
    for (double alpha = 0.0; alpha <= 2.0 * kPi; alpha += 0.4) {
      const auto p = analytic_rt(theta, alpha);
      CHECK(p.reflectivity >= 0.0);
      CHECK(p.transmissivity >= 0.0);
      CHECK(p.success <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("both hopping directions and both diagonals agree") {
  for (double alpha : {0.7, kPi, 4.4}) {
    const auto v = processor_matrix(ProcessorConfig::beamsplitter(0.8169, alpha));
    CHECK(std::norm(v(1, 0)) == doctest::Approx(std::norm(v(0, 1))).epsilon(1e-12));
    CHECK(std::norm(v(0, 0)) == doctest::Approx(std::norm(v(1, 1))).epsilon(1e-12));
  }
}

TEST_CASE("scan cross-checks the cascade") {
  std::vector<double> alphas;
  for (int i = 0; i <= 32; ++i) alphas.push_back(2.0 * kPi * i / 32);
  const auto pts = alpha_scan(0.8169, alphas);
  REQUIRE(pts.size() == 33);
  CHECK(pts[0].analytic.reflectivity == 0.0);
  CHECK(pts[0].analytic.transmissivity == 1.0);
  CHECK(std::abs(pts[16].analytic.reflectivity - 0.4781) < 5e-4);
  CHECK(pts[32].analytic.reflectivity == 0.0);
  for (const auto& p : pts) {
    CHECK(std::abs(p.analytic.reflectivity - p.numerical.reflectivity) < 1e-6);
    CHECK(std::abs(p.analytic.transmissivity - p.numerical.transmissivity) < 1e-6);
  }
  CHECK_THROWS_AS(alpha_scan(0.8169, {}), ValidationError);
}

TEST_CASE("gate metrics of simple blocks") {
  const ModeWindow w(0, 1);
  const TransferMatrix h(w, w, hadamard());
  const auto mh = gate_metrics(h, hadamard());
  CHECK(mh.fidelity == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mh.success == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mh.leakage == doctest::Approx(0.0));

  // tr(H) = 0, so the identity has no overlap with the Hadamard.
  CHECK(gate_metrics(TransferMatrix::identity(w), hadamard()).fidelity < 1e-30);
  Matrix2c x;
  x << 0.0, 1.0, 1.0, 0.0;
  CHECK(gate_metrics(TransferMatrix(w, w, x), hadamard()).fidelity ==
        doctest::Approx(0.5).epsilon(1e-15));

  // Global phase and uniform loss do not change fidelity.
  const TransferMatrix hl(w, w, hadamard() * std::polar(0.7, 1.1));
  const auto ml = gate_metrics(hl, hadamard());
  CHECK(ml.fidelity == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ml.success == doctest::Approx(0.49).epsilon(1e-14));
  CHECK(std::abs(ml.leakage - (1.0 - ml.success)) < 1e-12);

  CHECK_THROWS_AS(gate_metrics(TransferMatrix::identity(w), hadamard(), {1, 2}), IndexError);
}

TEST_CASE("Hadamard metrics at the working depth") {
  const auto m = hadamard_metrics(0.8169);
  CHECK(m.fidelity >= 0.9995);
  CHECK(std::abs(m.success - 0.9760) < 5e-4);
}

TEST_CASE("success probability is lowest at alpha = pi") {
  const double p_pi = hadamard_metrics(0.8169, kPi).success;
  for (double alpha = 0.0; alpha <= 2.0 * kPi; alpha += 0.05) {
    CHECK(hadamard_metrics(0.8169, alpha).success >= p_pi - 1e-12);
  }
}

TEST_CASE("depth optimisation") {
  const auto opt = optimize_hadamard_depth();
  CHECK(std::abs(opt.theta - 0.8169) < 1e-3);
  CHECK(opt.metrics.fidelity >= 0.9999 - 1e-4);
  CHECK(std::abs(opt.metrics.success - 0.9760) < 5e-4);
  // Fidelity falls off on both sides of the working point.
  CHECK(hadamard_metrics(opt.theta - 0.05).fidelity < opt.metrics.fidelity);
  CHECK(hadamard_metrics(opt.theta + 0.05).fidelity < opt.metrics.fidelity);

  // The unconstrained fidelity peak agrees with a dense grid scan.
  double best_theta = 0.0, best_f = -1.0;
  for (double t = 0.5; t <= 1.1; t += 1e-3) {
    const double f = hadamard_metrics(t).fidelity;
    if (f > best_f) best_f = f, best_theta = t;
  }
  CHECK(std::abs(opt.theta_max_fidelity - best_theta) < 2e-3);
  CHECK(hadamard_metrics(opt.theta_max_fidelity - 0.05).fidelity < best_f);
  CHECK(hadamard_metrics(opt.theta_max_fidelity + 0.05).fidelity < best_f);

  CHECK_THROWS_AS(optimize_hadamard_depth(1.0, 1.0), ValidationError);
}

TEST_CASE("exact Hadamard depth has R = T") {
  const double t = exact_hadamard_depth();
  const auto p = analytic_rt(t, kPi);
  CHECK(std::abs(p.reflectivity - p.transmissivity) < 1e-14);
  CHECK(hadamard_metrics(t).fidelity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(exact_hadamard_depth(0.0, 0.5), DomainError);
}

TEST_CASE("golden section on a parabola") {
  const double x = golden_section_max([](double t) { return -(t - 0.3) * (t - 0.3); }, -1.0, 2.0, 1e-9);
  CHECK(x == doctest::Approx(0.3).epsilon(1e-8));
}
