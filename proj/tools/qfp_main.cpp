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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qfp/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Electro-optic quantum frequency processor simulator and inference toolkit"};
  app.set_version_flag("--version", qfp::cli::kVersion);
  app.require_subcommand(1);

  std::string config;
  std::string out = ".";
  const std::pair<const char*, const char*> commands[] = {
      {"scan", "Beamsplitter reflectivity/transmissivity versus shaper phase (CSV)"},
      {"hom", "HOM coincidence curve and visibility fit"},
      {"rotate", "Two-qubit rotation coincidence tables"},
      {"witness", "Entropic entanglement witness from a count record"},
      {"tomo", "Bayesian density-matrix reconstruction from a count record"},
      {"synth", "Generate a synthetic count record"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Output directory")->capture_default_str();
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  return qfp::cli::run(command, config, out, std::cerr);
}
