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
#include "qfp/witness.hpp"

using namespace qfp;

namespace {

SettingCounts table(std::uint64_t c00, std::uint64_t c01, std::uint64_t c10, std::uint64_t c11,
                    Basis b = Basis::kIdentity) {
  SettingCounts s;
  s.counts = {{{c00, c01}, {c10, c11}}};
  s.basis_a = s.basis_b = b;
  return s;
}

}  // namespace

TEST_CASE("basis labels") {
  CHECK(parse_basis("I") == Basis::kIdentity);
  CHECK(parse_basis("identity") == Basis::kIdentity);
  CHECK(parse_basis("h") == Basis::kHadamard);
  CHECK(to_string(Basis::kHadamard) == "H");
  CHECK_THROWS_AS(parse_basis("Y"), ValidationError);
}

TEST_CASE("plug-in entropies") {
  CHECK(conditional_entropy_bits({0.5, 0.0, 0.0, 0.5}) == doctest::Approx(0.0));
  CHECK(conditional_entropy_bits({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(1.0));
  const double p[2] = {0.5, 0.5};
  CHECK(entropy_bits(p, 2) == doctest::Approx(1.0));
}

TEST_CASE("deterministic conditional gives near-zero entropy") {
  const auto e = conditional_entropy_bme(table(0, 10000, 10000, 0), 5000, 3);
  CHECK(e.mean <= 0.01);
  CHECK_FALSE(e.prior_dominated);
}

TEST_CASE("uniform counts give one bit") {
  const auto e = conditional_entropy_bme(table(10000, 10000, 10000, 10000), 5000, 3);
  CHECK(e.mean >= 0.99);
}

TEST_CASE("five percent error rate") {
  const auto e = conditional_entropy_bme(table(475, 25, 25, 475), 20000, 11);
  const double c[4] = {475, 25, 25, 475};
  const double ref = oracle::plugin_conditional_entropy(c);
  CHECK(std::abs(e.mean - ref) < 0.01);
  CHECK(std::abs(e.mean - 0.29) < 0.05);
  CHECK(e.std > 0.0);
}

TEST_CASE("empty counts are flagged") {
  const auto e = conditional_entropy_bme(table(0, 0, 0, 0), 2000, 1);
  CHECK(e.prior_dominated);
  CHECK(e.mean > 0.0);
  CHECK(e.mean < 1.0);
}

TEST_CASE("sample count guard") {
  CHECK_THROWS_AS(conditional_entropy_bme(table(1, 1, 1, 1), 999, 1), ValidationError);
}

TEST_CASE("Dirichlet posterior mean") {
  const auto t = table(40, 7, 3, 90);
  std::mt19937_64 rng(5);
  constexpr int kDraws = 200000;
  std::array<double, 4> mean{}, sq{};
  for (int i = 0; i < kDraws; ++i) {
    const auto p = dirichlet_posterior_draw(t, rng);
    CHECK(std::abs(p[0] + p[1] + p[2] + p[3] - 1.0) < 1e-12);
    for (int k = 0; k < 4; ++k) {
      mean[k] += p[k] / kDraws;
      sq[k] += p[k] * p[k] / kDraws;
    }
  }
  const double counts[4] = {40, 7, 3, 90};
  for (int k = 0; k < 4; ++k) {
    const double expected = (counts[k] + 1.0) / (140.0 + 4.0);
    const double se = std::sqrt((sq[k] - mean[k] * mean[k]) / kDraws);
    CHECK(std::abs(mean[k] - expected) < 4.0 * se);
  }
}

TEST_CASE("conditioning never increases entropy") {
  std::mt19937_64 rng(9);
  for (const auto& t : {table(3, 5, 2, 8), table(0, 0, 0, 0), table(100, 1, 1, 100)}) {
    for (int i = 0; i < 5000; ++i) {
      const auto p = dirichlet_posterior_draw(t, rng);
      const double marginal_a[2] = {p[0] + p[1], p[2] + p[3]};
      CHECK(conditional_entropy_bits(p) <= entropy_bits(marginal_a, 2) + 1e-12);
    }
  }
}

TEST_CASE("symmetric tables are label-symmetric") {
  // Swapping A and B transposes the table; for a symmetric one the estimate
  // must not change.
  const auto t = table(120, 15, 15, 80);
  auto swapped = t;
  std::swap(swapped.counts[0][1], swapped.counts[1][0]);
  CHECK(conditional_entropy_bme(t, 4000, 2).mean == conditional_entropy_bme(swapped, 4000, 2).mean);
}

TEST_CASE("Maassen-Uffink bound") {
  CHECK(std::abs(maassen_uffink_bound(0.8169) - 0.9710) < 5e-4);
  CHECK(maassen_uffink_bound(exact_hadamard_depth()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(maassen_uffink_bound(0.0) == 0.0);
  const auto p = analytic_rt(0.8169, std::numbers::pi);
  CHECK(maassen_uffink_bound(0.8169) ==
        doctest::Approx(-std::log2(p.transmissivity / p.success)).epsilon(1e-14));
}

TEST_CASE("witness on uniform data does not fire") {
  const auto r = witness_check(table(500, 500, 500, 500),
                               table(500, 500, 500, 500, Basis::kHadamard), 0.8169, 4000, 1);
  CHECK_FALSE(r.violated);
  CHECK(r.sum_mean > 1.9);
  CHECK(r.violation_sigmas < 0.0);
}

TEST_CASE("witness on ideal correlations fires strongly") {
  const auto r = witness_check(table(0, 5000, 5000, 0),
                               table(5000, 0, 0, 5000, Basis::kHadamard), 0.8169, 4000, 1);
  CHECK(r.violated);
  CHECK(r.violation_sigmas > 50.0);
  CHECK(r.sum_mean == doctest::Approx(r.h_matched_z.mean + r.h_matched_x.mean));
  CHECK(r.sum_std == doctest::Approx(std::hypot(r.h_matched_z.std, r.h_matched_x.std)));
}

TEST_CASE("witness requires matched bases") {
  CHECK_THROWS_AS(witness_check(table(1, 1, 1, 1, Basis::kHadamard),
                                table(1, 1, 1, 1, Basis::kHadamard), 0.8169, 1000, 1),
                  ValidationError);
  auto mixed = table(1, 1, 1, 1, Basis::kHadamard);
  mixed.basis_b = Basis::kIdentity;
  CHECK_THROWS_AS(witness_check(table(1, 1, 1, 1), mixed, 0.8169, 1000, 1), ValidationError);
}
