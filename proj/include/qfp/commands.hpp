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

#include "qfp/serialization.hpp"

namespace qfp::cli {

inline constexpr const char* kVersion = "0.1.0";

/// FNV-1a 64 of the canonical (sorted-key) dump, as 16 hex digits.
std::string config_hash(const json& config);

/// Each command validates `config`, writes its outputs into `out_dir` and
/// returns the summary document it wrote (including the "run" metadata).
/// Relative input paths inside `config` resolve against `base_dir`.
json cmd_scan(const json& config, const std::filesystem::path& out_dir);
json cmd_hom(const json& config, const std::filesystem::path& out_dir,
             const std::filesystem::path& base_dir = ".");
json cmd_rotate(const json& config, const std::filesystem::path& out_dir);
json cmd_witness(const json& config, const std::filesystem::path& out_dir,
                 const std::filesystem::path& base_dir = ".");
json cmd_tomo(const json& config, const std::filesystem::path& out_dir,
              const std::filesystem::path& base_dir = ".");
json cmd_synth(const json& config, const std::filesystem::path& out_dir);

/// Dispatches by name and reports failures on `err`. Returns the process
/// exit code: 0 on success, 1 on invalid input, 2 on internal failure.
int run(const std::string& command, const std::filesystem::path& config_path,
        const std::filesystem::path& out_dir, std::ostream& err);

}  // namespace qfp::cli
