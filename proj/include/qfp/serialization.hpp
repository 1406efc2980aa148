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

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfp/biphoton.hpp"
#include "qfp/elements.hpp"
#include "qfp/gates.hpp"
#include "qfp/rotation.hpp"
#include "qfp/synthdata.hpp"
#include "qfp/tomography.hpp"
#include "qfp/witness.hpp"

namespace qfp {

using json = nlohmann::json;

/// Keys eom1.{depth,sign}, eom2.{depth,sign}, shaper.{phases,amplitudes,steps},
/// window.{n_min,n_max}. Phase and amplitude maps are objects keyed by bin
/// index ("-3": 1.57). Throws ValidationError on malformed documents.
ProcessorConfig processor_config_from_json(const json& j);
json to_json(const ProcessorConfig& c);

/// Canonical count file: schema_version, settings[] with basis_a, basis_b,
/// bin_a, bin_b, C_AB, S_A, S_B (and alpha for scan records),
/// integration_time, seed.
CountRecord count_record_from_json(const json& j);
json to_json(const CountRecord& r);
CountRecord read_count_record(const std::filesystem::path& path);
void write_count_record(const std::filesystem::path& path, const CountRecord& r);

json to_json(const VisibilityFit& f);
json to_json(const WitnessResult& w);
json to_json(const PosteriorSummary& s);
json to_json(const RotationResult& r);

/// Row-major {"real": [[...]], "imag": [[...]]}.
json matrix_to_json(const Matrix4c& m);
Matrix4c matrix_from_json(const json& j);

/// Either an explicit array or {"start", "stop", "count"} (inclusive ends).
std::vector<double> grid_from_json(const json& j);

/// Shortest round-trip decimal with '.' separator regardless of locale.
std::string format_number(double v);

/// Header alpha,R,T,P,F_vs_hadamard.
void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& points);

/// Header alpha,c01,s_-1,s_0,s_1,s_2 plus counts columns when provided.
void write_hom_csv(std::ostream& os, const HomCurve& curve, const CountRecord* counts = nullptr);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace qfp
