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

#include <clocale>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>

#include "qfp/error.hpp"
#include "qfp/rotation.hpp"
#include "qfp/serialization.hpp"

using namespace qfp;

TEST_CASE("processor config round trip") {
  auto cfg = ProcessorConfig::beamsplitter(0.8169, 2.5, 0);
  cfg.shaper.phases = {{-3, 0.25}, {4, -1.0}};
  cfg.shaper.amplitudes = {{1, 0.5}};
  const auto j = to_json(cfg);
  const auto back = processor_config_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(back.window == cfg.window);
  CHECK(back.shaper.phase(-3) == 0.25);
  CHECK(back.shaper.amplitude(1) == 0.5);
  CHECK(back.eom2.sign == -1);
}

TEST_CASE("malformed processor configs") {
  CHECK_THROWS_AS(processor_config_from_json(json::parse(R"({"eom1": {"depth": -1}})")),
                  ValidationError);
  CHECK_THROWS_AS(processor_config_from_json(json::parse(R"({"eom1": {"depth": "x"}})")),
                  ValidationError);
  CHECK_THROWS_AS(
      processor_config_from_json(json::parse(R"({"shaper": {"phases": {"abc": 1.0}}})")),
      ValidationError);
  CHECK_THROWS_AS(processor_config_from_json(json::parse(R"({"bogus": 1})")), ValidationError);
}

TEST_CASE("count record round trip property") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::uint64_t> small(0, 1000);
  for (int trial = 0; trial < 50; ++trial) {
    CountRecord r;
    r.integration_time = 0.5 * trial;
    r.seed = rng();
    const int n = 1 + trial % 7;
    for (int i = 0; i < n; ++i) {
      RecordEntry e;
      e.basis_a = (i % 2) ? Basis::kHadamard : Basis::kIdentity;
      e.basis_b = (i % 3) ? Basis::kHadamard : Basis::kIdentity;
      e.bin_a = -4 + i % 2;
      e.bin_b = 4 + i % 2;
      e.data.coincidences = small(rng);
      e.data.singles_a = e.data.coincidences + small(rng);
      e.data.singles_b = e.data.coincidences + small(rng);
      if (trial % 3 == 0) e.alpha = std::uniform_real_distribution<double>(0, 6.28)(rng);
      r.settings.push_back(e);
    }
    const auto j = to_json(r);
    const auto back = count_record_from_json(json::parse(j.dump()));
    CHECK(to_json(back) == j);
    CHECK(back.seed == r.seed);
    if (r.settings.front().alpha) CHECK(*back.settings.front().alpha == *r.settings.front().alpha);
  }
}

TEST_CASE("count record validation") {
  const json bad_version = {{"schema_version", 99}, {"settings", json::array()}};
  CHECK_THROWS_AS(count_record_from_json(bad_version), ValidationError);
  const json inconsistent = {
      {"schema_version", 1}, {"integration_time", 1.0}, {"seed", 0},
      {"settings",
       {{{"basis_a", "I"}, {"basis_b", "I"}, {"bin_a", -4}, {"bin_b", 4}, {"C_AB", 10}, {"S_A", 5}, {"S_B", 20}}}}};
  CHECK_THROWS_AS(count_record_from_json(inconsistent), DataError);
  const json negative = {
      {"schema_version", 1}, {"integration_time", 1.0}, {"seed", 0},
      {"settings",
       {{{"basis_a", "I"}, {"basis_b", "I"}, {"bin_a", -4}, {"bin_b", 4}, {"C_AB", -1}, {"S_A", 5}, {"S_B", 20}}}}};
  CHECK_THROWS_AS(count_record_from_json(negative), ValidationError);
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "qfp_serialization_test";
  std::filesystem::create_directories(dir);
  CountRecord r;
  r.settings.push_back({Basis::kHadamard, Basis::kIdentity, -3, 5, {3, 9, 7}, std::nullopt});
  write_count_record(dir / "c.json", r);
  CHECK(to_json(read_count_record(dir / "c.json")) == to_json(r));
  CHECK_THROWS(read_count_record(dir / "missing.json"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("matrices") {
  Matrix4c m;
  for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = Complex(0.1 * i, -0.2 * i);
  const auto j = matrix_to_json(m);
  CHECK(j.at("real").size() == 4);
  CHECK(matrix_from_json(j) == m);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"real": [[1]]})")), ValidationError);
}

TEST_CASE("grids") {
  const auto g = grid_from_json({{"start", 0.0}, {"stop", 1.0}, {"count", 5}});
  REQUIRE(g.size() == 5);
  CHECK(g[0] == 0.0);
  CHECK(g[4] == 1.0);
  CHECK(g[2] == 0.5);
  CHECK(grid_from_json(json::array({0.5, 2.0})).size() == 2);
  CHECK(grid_from_json({{"start", 1.0}, {"stop", 1.0}, {"count", 1}}).size() == 1);
  CHECK_THROWS_AS(grid_from_json({{"start", 0.0}, {"stop", 1.0}, {"count", 0}}), ValidationError);
  CHECK_THROWS_AS(grid_from_json("abc"), ValidationError);
}

TEST_CASE("number formatting ignores the locale") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(std::stod(format_number(0.1)) == 0.1);
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
  CHECK(format_number(2.25) == "2.25");
  std::setlocale(LC_NUMERIC, "C");
}

TEST_CASE("scan CSV layout") {
  std::vector<double> alphas;
  for (int i = 0; i < 33; ++i) alphas.push_back(2.0 * std::numbers::pi * i / 32);
  std::ostringstream os;
  write_scan_csv(os, alpha_scan(0.8169, alphas));
  const std::string text = os.str();
  CHECK(text.rfind("alpha,R,T,P,F_vs_hadamard\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 34);
  CHECK(text.back() == '\n');
}

TEST_CASE("HOM CSV layout") {
  std::ostringstream os;
  write_hom_csv(os, hom_scan(0.8169, {0.0, 1.0}));
  const std::string text = os.str();
  CHECK(text.rfind("alpha,c01,s_-1,s_0,s_1,s_2\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("result documents") {
  const auto r = rotate_entangled_pair(0.8169, Basis::kHadamard, Basis::kHadamard);
  const auto j = to_json(r);
  CHECK(j.at("basis_a") == "H");
  CHECK(j.contains("normalized"));
  CHECK(j.contains("leakage_fraction"));
}
