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

#include <cmath>

#include "oracles.hpp"
#include "qfp/bessel.hpp"
#include "qfp/error.hpp"

using qfp::bessel_j;

TEST_CASE("trivial values at zero") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(1, 0.0) == 0.0);
  CHECK(bessel_j(7, 0.0) == 0.0);
}

TEST_CASE("first zero of J0") {
  CHECK(std::abs(bessel_j(0, 2.404825557695773)) < 1e-9);
  // The series oracle agrees that this is a root.
  CHECK(std::abs(qfp::oracle::bessel_series(0, 2.404825557695773)) < 1e-9);
}

TEST_CASE("agrees with the power series to 1e-12") {
  double worst = 0.0;
  for (int n = 0; n <= 30; ++n) {
    for (double x = 0.0; x <= 10.0; x += 0.137) {
      worst = std::max(worst, std::abs(bessel_j(n, x) - qfp::oracle::bessel_series(n, x)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("agrees with std::cyl_bessel_j up to the domain edge") {
  double worst = 0.0;
  for (int n = 0; n <= 60; n += 3) {
    for (double x = 0.05; x <= 50.0; x += 0.731) {
      worst = std::max(worst, std::abs(bessel_j(n, x) - std::cyl_bessel_j(double(n), x)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("tiny arguments") {
  CHECK(bessel_j(0, 1e-8) == doctest::Approx(1.0 - 2.5e-17).epsilon(1e-15));
  CHECK(bessel_j(1, 1e-8) == doctest::Approx(5e-9).epsilon(1e-12));
  CHECK(bessel_j(2, 1e-8) == doctest::Approx(1.25e-17).epsilon(1e-10));
}

TEST_CASE("three-term recurrence residual") {
  double worst = 0.0;
  for (int n = 1; n <= 30; ++n) {
    for (double x = 0.01; x <= 10.0; x += 0.0731) {
      const double r = x * (bessel_j(n - 1, x) + bessel_j(n + 1, x)) - 2.0 * n * bessel_j(n, x);
      worst = std::max(worst, std::abs(r));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("reflection in order and argument") {
  for (int k = 0; k <= 12; ++k) {
    const double sign = k % 2 ? -1.0 : 1.0;
    for (double x : {0.3, 0.8169, 2.0, 7.5}) {
      CHECK(bessel_j(-k, x) == doctest::Approx(sign * bessel_j(k, x)).epsilon(1e-14));
      CHECK(bessel_j(k, -x) == doctest::Approx(sign * bessel_j(k, x)).epsilon(1e-14));
    }
  }
}

TEST_CASE("sum of squares is one") {
  for (double x : {0.1, 0.8169, 1.6338, 5.0, 20.0}) {
    const auto j = qfp::bessel_j_table(80, x);
    double s = j[0] * j[0];
    for (std::size_t k = 1; k < j.size(); ++k) s += 2.0 * j[k] * j[k];
    CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("table matches pointwise evaluation") {
  const auto j = qfp::bessel_j_table(25, 3.3);
  REQUIRE(j.size() == 26);
  for (int k = 0; k <= 25; ++k) CHECK(j[k] == doctest::Approx(bessel_j(k, 3.3)).epsilon(1e-14));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_j(0, 50.5), qfp::DomainError);
  CHECK_THROWS_AS(bessel_j(3, -51.0), qfp::DomainError);
  CHECK_THROWS_AS(bessel_j(0, std::nan("")), qfp::DomainError);
  CHECK_NOTHROW(bessel_j(0, 50.0));
}
