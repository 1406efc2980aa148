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

#include "qfp/commands.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>

#include "qfp/error.hpp"

namespace qfp::cli {
namespace {

namespace fs = std::filesystem;

constexpr double kDefaultTheta = 0.8169;

void allow_keys(const json& config, std::initializer_list<const char*> keys,
                const std::string& command) {
  if (!config.is_object()) throw ValidationError(command + ": config must be a JSON object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : config.items()) {
    if (!allowed.contains(k)) throw ValidationError(command + ": unknown config key '" + k + "'");
  }
}

template <class T>
T value_or(const json& config, const char* key, T fallback, const std::string& command) {
  if (!config.contains(key)) return fallback;
  try {
    return config.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(command + "." + key + ": " + e.what());
  }
}

template <class T>
T required(const json& config, const char* key, const std::string& command) {
  if (!config.contains(key)) throw ValidationError(command + ": missing key '" + key + "'");
  return value_or<T>(config, key, T{}, command);
}

std::vector<double> default_alpha_grid(int count) {
  return grid_from_json({{"start", 0.0}, {"stop", 2.0 * std::numbers::pi}, {"count", count}});
}

json run_block(const std::string& command, const json& config) {
  return {{"command", command}, {"version", kVersion}, {"config_hash", config_hash(config)}};
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

NoiseModel noise_from_json(const json& j) {
  NoiseModel n;
  n.accidental_rate = value_or<double>(j, "accidental_rate", 0.0, "noise");
  n.dark_rate = value_or<double>(j, "dark_rate", 0.0, "noise");
  n.integration_time = value_or<double>(j, "integration_time", 1.0, "noise");
  n.validate();
  return n;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

std::string config_hash(const json& config) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json cmd_scan(const json& config, const fs::path& out_dir) {
  allow_keys(config, {"theta", "alphas"}, "scan");
  const double theta = value_or<double>(config, "theta", kDefaultTheta, "scan");
  const auto alphas =
      config.contains("alphas") ? grid_from_json(config.at("alphas")) : default_alpha_grid(33);
  const auto points = alpha_scan(theta, alphas);

  ensure_dir(out_dir);
  std::ostringstream csv;
  write_scan_csv(csv, points);
  write_text(out_dir / "scan.csv", csv.str());

  double r_max = 0.0;
  for (const auto& p : points) r_max = std::max(r_max, p.analytic.reflectivity);
  json summary = {{"run", run_block("scan", config)},
                  {"theta", theta},
                  {"rows", points.size()},
                  {"R_max", r_max},
                  {"outputs", {"scan.csv"}}};
  write_json_file(out_dir / "scan_run.json", summary);
  return summary;
}

json cmd_hom(const json& config, const fs::path& out_dir, const fs::path& base_dir) {
  allow_keys(config, {"theta", "alphas", "synthetic", "counts", "use_g2"}, "hom");
  const double theta = value_or<double>(config, "theta", kDefaultTheta, "hom");
  const bool use_g2 = value_or<bool>(config, "use_g2", false, "hom");
  if (config.contains("synthetic") && config.contains("counts")) {
    throw ValidationError("hom: give either 'synthetic' or 'counts', not both");
  }

  std::optional<CountRecord> record;
  std::vector<double> alphas;
  if (config.contains("counts")) {
    record = read_count_record(resolve(base_dir, required<std::string>(config, "counts", "hom")));
    for (const auto& e : record->settings) {
      if (!e.alpha) throw ValidationError("hom: every count entry needs an alpha");
      alphas.push_back(*e.alpha);
    }
  } else {
    alphas = config.contains("alphas") ? grid_from_json(config.at("alphas")) : default_alpha_grid(31);
  }
  if (alphas.empty()) throw ValidationError("hom: empty alpha grid");
  const auto curve = hom_scan(theta, alphas);

  if (config.contains("synthetic")) {
    const auto& s = config.at("synthetic");
    allow_keys(s, {"pair_rate", "accidental_rate", "accidental_floor", "dark_rate",
                   "integration_time", "seed"}, "hom.synthetic");
    const double pair_rate = required<double>(s, "pair_rate", "hom.synthetic");
    NoiseModel noise = noise_from_json(s);
    if (s.contains("accidental_floor")) {
      if (s.contains("accidental_rate")) {
        throw ValidationError("hom.synthetic: give accidental_rate or accidental_floor, not both");
      }
      // Floor as a fraction of the alpha = 0 coincidence rate.
      const double c0 = hom_scan(theta, {0.0}).c01[0];
      noise.accidental_rate = required<double>(s, "accidental_floor", "hom.synthetic") * pair_rate * c0;
    }
    record = simulate_hom(theta, alphas, pair_rate, noise, value_or<std::uint64_t>(s, "seed", 1, "hom.synthetic"));
  }

  std::vector<double> counts;
  std::optional<SinglesCounts> singles_counts;
  std::vector<double> variances;
  if (record) {
    SinglesCounts sc;
    for (const auto& e : record->settings) {
      counts.push_back(static_cast<double>(e.data.coincidences));
      sc.s0.push_back(static_cast<double>(e.data.singles_a));
      sc.s1.push_back(static_cast<double>(e.data.singles_b));
    }
    singles_counts = sc;
    variances = poisson_variances(counts);
  } else {
    // Noiseless theory, unit weights.
    if (use_g2) {
      SinglesCounts sc{curve.singles.at(0), curve.singles.at(1)};
      singles_counts = sc;
    }
    counts = curve.c01;
    variances.assign(counts.size(), 1.0);
  }
  const auto fit = visibility_fit(alphas, counts, variances, theta, use_g2, singles_counts);

  ensure_dir(out_dir);
  std::ostringstream csv;
  write_hom_csv(csv, curve, record ? &*record : nullptr);
  write_text(out_dir / "hom.csv", csv.str());

  json summary = {{"run", run_block("hom", config)},
                  {"theta", theta},
                  {"use_g2", use_g2},
                  {"source", record ? (config.contains("counts") ? "counts" : "synthetic") : "theory"},
                  {"fit", to_json(fit)},
                  {"outputs", {"hom.csv", "hom_fit.json"}}};
  write_json_file(out_dir / "hom_fit.json", summary);
  return summary;
}

json cmd_rotate(const json& config, const fs::path& out_dir) {
  allow_keys(config, {"theta", "layout"}, "rotate");
  // Default: the depth where the block is an exact Hadamard (R = T).
  const double theta = config.contains("theta") ? value_or<double>(config, "theta", 0.0, "rotate")
                                                : exact_hadamard_depth();
  RotationLayout layout;
  if (config.contains("layout")) {
    const auto& l = config.at("layout");
    allow_keys(l, {"a_last_low_bin", "b_last_low_bin"}, "rotate.layout");
    layout.a_last_low_bin = value_or<int>(l, "a_last_low_bin", layout.a_last_low_bin, "rotate.layout");
    layout.b_last_low_bin = value_or<int>(l, "b_last_low_bin", layout.b_last_low_bin, "rotate.layout");
    if (layout.a_last_low_bin + 1 > 0 || layout.b_last_low_bin < 1) {
      throw ValidationError("rotate.layout: A qubit must lie at n <= 0 and B at n >= 1");
    }
  }

  json tables = json::array();
  double max_leakage = 0.0, max_cell_error = 0.0;
  for (Basis a : {Basis::kIdentity, Basis::kHadamard}) {
    for (Basis b : {Basis::kIdentity, Basis::kHadamard}) {
      const auto r = rotate_entangled_pair(theta, a, b, layout);
      const auto ideal = ideal_rotation_table(a, b);
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
          max_cell_error = std::max(max_cell_error, std::abs(r.normalized[i][k] - ideal[i][k]));
      max_leakage = std::max(max_leakage, r.leakage_fraction);
      tables.push_back(to_json(r));
    }
  }
  json summary = {{"run", run_block("rotate", config)},
                  {"theta", theta},
                  {"tables", tables},
                  {"max_leakage_fraction", max_leakage},
                  {"max_cell_error_vs_ideal", max_cell_error},
                  {"outputs", {"rotate.json"}}};
  ensure_dir(out_dir);
  write_json_file(out_dir / "rotate.json", summary);
  return summary;
}

json cmd_witness(const json& config, const fs::path& out_dir, const fs::path& base_dir) {
  allow_keys(config, {"counts", "theta", "samples", "seed"}, "witness");
  const auto record =
      read_count_record(resolve(base_dir, required<std::string>(config, "counts", "witness")));
  const double theta = value_or<double>(config, "theta", kDefaultTheta, "witness");
  const int samples = value_or<int>(config, "samples", 20000, "witness");
  const auto seed = value_or<std::uint64_t>(config, "seed", 1, "witness");

  const auto z = setting_counts(record, Basis::kIdentity, Basis::kIdentity);
  const auto x = setting_counts(record, Basis::kHadamard, Basis::kHadamard);
  const auto result = witness_check(z, x, theta, samples, seed);

  json summary = {{"run", run_block("witness", config)},
                  {"witness", to_json(result)},
                  {"outputs", {"witness.json"}}};
  ensure_dir(out_dir);
  write_json_file(out_dir / "witness.json", summary);
  return summary;
}

json cmd_tomo(const json& config, const fs::path& out_dir, const fs::path& base_dir) {
  allow_keys(config, {"counts", "n_pairs", "n_samples", "burn_in", "seed", "n_chains"}, "tomo");
  const auto record =
      read_count_record(resolve(base_dir, required<std::string>(config, "counts", "tomo")));
  PriorConfig prior;
  prior.n_pairs = required<std::uint64_t>(config, "n_pairs", "tomo");
  ChainConfig chain;
  chain.n_samples = value_or<int>(config, "n_samples", chain.n_samples, "tomo");
  chain.burn_in = value_or<int>(config, "burn_in", chain.burn_in, "tomo");
  chain.seed = value_or<std::uint64_t>(config, "seed", chain.seed, "tomo");
  chain.n_chains = value_or<int>(config, "n_chains", chain.n_chains, "tomo");

  const auto summary_rho = sample_posterior(tomography_settings(record), prior, chain);
  json summary = {{"run", run_block("tomo", config)},
                  {"posterior", to_json(summary_rho)},
                  {"outputs", {"tomo.json"}}};
  ensure_dir(out_dir);
  write_json_file(out_dir / "tomo.json", summary);
  return summary;
}

namespace {

BiphotonState state_from_json(const json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "entangled_qubits") return BiphotonState::entangled_qubits();
    if (name == "hom_pair") return BiphotonState::pair(0, 1);
    throw ValidationError("synth.state: unknown named state '" + name + "'");
  }
  std::vector<PairTerm> terms;
  for (const auto& t : required<json>(j, "terms", "synth.state")) {
    terms.push_back({required<int>(t, "mode_a", "synth.state.terms"),
                     required<int>(t, "mode_b", "synth.state.terms"),
                     Complex(value_or<double>(t, "re", 1.0, "synth.state.terms"),
                             value_or<double>(t, "im", 0.0, "synth.state.terms"))});
  }
  return BiphotonState::normalized(std::move(terms));
}

DensityMatrix4 rho_from_json(const json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "ideal") return DensityMatrix4::pure(ideal_entangled_state());
    if (name == "mixed") return DensityMatrix4::maximally_mixed();
    throw ValidationError("synth.rho: unknown named state '" + name + "'");
  }
  if (j.contains("werner")) {
    const double p = j.at("werner").get<double>();
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("synth.rho.werner must lie in [0, 1]");
    const Vector4c psi = ideal_entangled_state();
    return DensityMatrix4(Matrix4c(p * psi * psi.adjoint() + (1.0 - p) * Matrix4c::Identity() / 4.0));
  }
  return DensityMatrix4(matrix_from_json(j));
}

}  // namespace

json cmd_synth(const json& config, const fs::path& out_dir) {
  const std::string model = value_or<std::string>(config, "model", "biphoton", "synth");
  const auto seed = value_or<std::uint64_t>(config, "seed", 1, "synth");
  CountRecord record;

  if (model == "biphoton") {
    allow_keys(config, {"model", "seed", "state", "processor", "theta", "settings", "pair_rate", "noise"},
               "synth");
    const auto state = config.contains("state") ? state_from_json(config.at("state"))
                                                : BiphotonState::entangled_qubits();
    const auto processor =
        config.contains("processor")
            ? processor_config_from_json(config.at("processor"))
            : two_qubit_base(value_or<double>(config, "theta", kDefaultTheta, "synth"));
    std::vector<DetectionSetting> settings;
    if (config.contains("settings")) {
      for (const auto& s : config.at("settings")) {
        DetectionSetting d;
        d.basis_a = parse_basis(value_or<std::string>(s, "basis_a", "I", "synth.settings"));
        d.basis_b = parse_basis(value_or<std::string>(s, "basis_b", "I", "synth.settings"));
        d.bin_a = required<int>(s, "bin_a", "synth.settings");
        d.bin_b = required<int>(s, "bin_b", "synth.settings");
        d.eta_a = value_or<double>(s, "eta_a", 1.0, "synth.settings");
        d.eta_b = value_or<double>(s, "eta_b", 1.0, "synth.settings");
        if (s.contains("alpha")) d.alpha = s.at("alpha").get<double>();
        settings.push_back(d);
      }
    } else {
      for (const auto& t : standard_settings()) {
        DetectionSetting d;
        d.basis_a = t.basis_a;
        d.basis_b = t.basis_b;
        d.bin_a = t.bin_a;
        d.bin_b = t.bin_b;
        settings.push_back(d);
      }
    }
    const double pair_rate = required<double>(config, "pair_rate", "synth");
    if (!(pair_rate >= 0.0)) throw ValidationError("synth: pair_rate must be >= 0");
    const auto noise = noise_from_json(config.value("noise", json::object()));
    record = simulate_counts(state, processor, settings, pair_rate, noise, seed);
  } else if (model == "density_matrix") {
    allow_keys(config, {"model", "seed", "rho", "eta_a", "eta_b", "n_pairs", "noiseless"}, "synth");
    TomoParams params;
    params.rho = rho_from_json(config.value("rho", json("ideal")));
    params.eta_a = value_or<double>(config, "eta_a", 1.0, "synth");
    params.eta_b = value_or<double>(config, "eta_b", 1.0, "synth");
    params.n_pairs = required<std::uint64_t>(config, "n_pairs", "synth");
    record = simulate_tomography(params, standard_settings(), seed,
                                 value_or<bool>(config, "noiseless", false, "synth"));
  } else if (model == "hom") {
    allow_keys(config, {"model", "seed", "theta", "alphas", "pair_rate", "noise"}, "synth");
    const double theta = value_or<double>(config, "theta", kDefaultTheta, "synth");
    const auto alphas =
        config.contains("alphas") ? grid_from_json(config.at("alphas")) : default_alpha_grid(31);
    record = simulate_hom(theta, alphas, required<double>(config, "pair_rate", "synth"),
                          noise_from_json(config.value("noise", json::object())), seed);
  } else {
    throw ValidationError("synth: unknown model '" + model + "'");
  }

  ensure_dir(out_dir);
  write_count_record(out_dir / "counts.json", record);
  json summary = {{"run", run_block("synth", config)},
                  {"model", model},
                  {"entries", record.settings.size()},
                  {"outputs", {"counts.json"}}};
  write_json_file(out_dir / "synth_run.json", summary);
  return summary;
}

int run(const std::string& command, const fs::path& config_path, const fs::path& out_dir,
        std::ostream& err) {
  try {
    const json config = read_json_file(config_path);
    const fs::path base = config_path.has_parent_path() ? config_path.parent_path() : fs::path(".");
    if (command == "scan") {
      cmd_scan(config, out_dir);
    } else if (command == "hom") {
      cmd_hom(config, out_dir, base);
    } else if (command == "rotate") {
      cmd_rotate(config, out_dir);
    } else if (command == "witness") {
      cmd_witness(config, out_dir, base);
    } else if (command == "tomo") {
      cmd_tomo(config, out_dir, base);
    } else if (command == "synth") {
      cmd_synth(config, out_dir);
    } else {
      err << "qfp: unknown command '" << command << "'\n";
      return 1;
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "qfp " << command << ": invalid input: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    err << "qfp " << command << ": bad data: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "qfp " << command << ": " << e.what() << '\n';
    return 2;
  }
}

}  // namespace qfp::cli
