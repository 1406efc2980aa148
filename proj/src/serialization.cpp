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

#include "qfp/serialization.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "qfp/error.hpp"

namespace qfp {
namespace {

template <class T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(where + ": missing key '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(where + "." + key + ": " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return get<T>(j, key, where);
}

std::map<int, double> bin_map(const json& j, const std::string& where) {
  std::map<int, double> out;
  if (j.is_null()) return out;
  if (!j.is_object()) throw ValidationError(where + ": expected an object keyed by bin index");
  for (const auto& [k, v] : j.items()) {
    int bin = 0;
    const auto [p, ec] = std::from_chars(k.data(), k.data() + k.size(), bin);
    if (ec != std::errc{} || p != k.data() + k.size()) {
      throw ValidationError(where + ": key '" + k + "' is not an integer bin index");
    }
    if (!v.is_number()) throw ValidationError(where + ": value for bin " + k + " is not a number");
    out[bin] = v.get<double>();
  }
  return out;
}

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    if (std::find_if(keys.begin(), keys.end(), [&](const char* a) { return k == a; }) == keys.end()) {
      throw ValidationError(where + ": unknown key '" + k + "'");
    }
  }
}

std::uint64_t count_field(const json& j, const char* key, const std::string& where) {
  const auto& v = get<json>(j, key, where);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0)) {
    throw ValidationError(where + "." + key + ": counts must be non-negative integers");
  }
  return v.get<std::uint64_t>();
}

json bin_map_to_json(const std::map<int, double>& m) {
  json j = json::object();
  for (const auto& [bin, v] : m) j[std::to_string(bin)] = v;
  return j;
}

EomSpec eom_from_json(const json& j, const std::string& where) {
  EomSpec e;
  e.depth = get<double>(j, "depth", where);
  e.sign = get<int>(j, "sign", where);
  return e;
}

json mean_std(const MeanStd& m) {
  return {{"mean", m.mean}, {"std", m.std}, {"mc_error", m.mc_error}};
}

json table_json(const Table2x2& t) { return {{t[0][0], t[0][1]}, {t[1][0], t[1][1]}}; }

json real_matrix(const Matrix4d& m) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

ProcessorConfig processor_config_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("processor config: expected an object");
  only_keys(j, {"eom1", "eom2", "shaper", "window"}, "processor");
  ProcessorConfig c;
  c.eom1 = eom_from_json(get<json>(j, "eom1", "processor"), "processor.eom1");
  c.eom2 = eom_from_json(get<json>(j, "eom2", "processor"), "processor.eom2");
  if (j.contains("shaper")) {
    const auto& s = j.at("shaper");
    if (!s.is_object()) throw ValidationError("processor.shaper: expected an object");
    only_keys(s, {"phases", "amplitudes", "steps"}, "processor.shaper");
    c.shaper.phases = bin_map(s.value("phases", json()), "processor.shaper.phases");
    c.shaper.amplitudes = bin_map(s.value("amplitudes", json()), "processor.shaper.amplitudes");
    if (s.contains("steps")) {
      for (const auto& st : s.at("steps")) {
        c.shaper.steps.push_back({get<int>(st, "last_low_bin", "processor.shaper.steps"),
                                  get<double>(st, "alpha", "processor.shaper.steps")});
      }
    }
  }
  const auto w = get<json>(j, "window", "processor");
  c.window = ModeWindow(get<int>(w, "n_min", "processor.window"),
                        get<int>(w, "n_max", "processor.window"),
                        get_or<double>(w, "spacing", 25e9, "processor.window"));
  c.validate();
  return c;
}

json to_json(const ProcessorConfig& c) {
  json steps = json::array();
  for (const auto& s : c.shaper.steps) steps.push_back({{"last_low_bin", s.last_low_bin}, {"alpha", s.alpha}});
  return {{"eom1", {{"depth", c.eom1.depth}, {"sign", c.eom1.sign}}},
          {"eom2", {{"depth", c.eom2.depth}, {"sign", c.eom2.sign}}},
          {"shaper",
           {{"phases", bin_map_to_json(c.shaper.phases)},
            {"amplitudes", bin_map_to_json(c.shaper.amplitudes)},
            {"steps", steps}}},
          {"window",
           {{"n_min", c.window.n_min()}, {"n_max", c.window.n_max()}, {"spacing", c.window.spacing()}}}};
}

CountRecord count_record_from_json(const json& j) {
  const int version = get<int>(j, "schema_version", "count record");
  if (version != CountRecord::kSchemaVersion) {
    throw ValidationError("count record: unsupported schema_version " + std::to_string(version));
  }
  CountRecord r;
  r.integration_time = get<double>(j, "integration_time", "count record");
  r.seed = get<std::uint64_t>(j, "seed", "count record");
  const auto settings = get<json>(j, "settings", "count record");
  if (!settings.is_array()) throw ValidationError("count record: settings must be an array");
  for (const auto& s : settings) {
    const std::string where = "count record setting";
    RecordEntry e;
    e.basis_a = parse_basis(get<std::string>(s, "basis_a", where));
    e.basis_b = parse_basis(get<std::string>(s, "basis_b", where));
    e.bin_a = get<int>(s, "bin_a", where);
    e.bin_b = get<int>(s, "bin_b", where);
    e.data.coincidences = count_field(s, "C_AB", where);
    e.data.singles_a = count_field(s, "S_A", where);
    e.data.singles_b = count_field(s, "S_B", where);
    if (s.contains("alpha")) e.alpha = get<double>(s, "alpha", where);
    if (e.data.coincidences > std::min(e.data.singles_a, e.data.singles_b)) {
      throw DataError("count record: C_AB exceeds singles for bins " + std::to_string(e.bin_a) +
                      ", " + std::to_string(e.bin_b));
    }
    r.settings.push_back(e);
  }
  return r;
}

json to_json(const CountRecord& r) {
  json settings = json::array();
  for (const auto& e : r.settings) {
    json s = {{"basis_a", to_string(e.basis_a)},
              {"basis_b", to_string(e.basis_b)},
              {"bin_a", e.bin_a},
              {"bin_b", e.bin_b},
              {"C_AB", e.data.coincidences},
              {"S_A", e.data.singles_a},
              {"S_B", e.data.singles_b}};
    if (e.alpha) s["alpha"] = *e.alpha;
    settings.push_back(s);
  }
  return {{"schema_version", CountRecord::kSchemaVersion},
          {"settings", settings},
          {"integration_time", r.integration_time},
          {"seed", r.seed}};
}

CountRecord read_count_record(const std::filesystem::path& path) {
  return count_record_from_json(read_json_file(path));
}

void write_count_record(const std::filesystem::path& path, const CountRecord& r) {
  write_json_file(path, to_json(r));
}

json to_json(const VisibilityFit& f) {
  return {{"K0", f.k0},
          {"K1", f.k1},
          {"K0_error", f.k0_error},
          {"K1_error", f.k1_error},
          {"visibility", f.visibility},
          {"std_error", f.std_error},
          {"model_at_0", f.model_at_0},
          {"model_at_pi", f.model_at_pi}};
}

json to_json(const WitnessResult& w) {
  auto est = [](const EntropyEstimate& e) {
    return json{{"mean", e.mean}, {"std", e.std}, {"prior_dominated", e.prior_dominated}};
  };
  return {{"h_matched_z", est(w.h_matched_z)},
          {"h_matched_x", est(w.h_matched_x)},
          {"q_mu", w.q_mu},
          {"sum_mean", w.sum_mean},
          {"sum_std", w.sum_std},
          {"violation_sigmas", w.violation_sigmas},
          {"violated", w.violated}};
}

json matrix_to_json(const Matrix4c& m) {
  return {{"real", real_matrix(m.real())}, {"imag", real_matrix(m.imag())}};
}

Matrix4c matrix_from_json(const json& j) {
  Matrix4c m;
  const auto re = get<std::vector<std::vector<double>>>(j, "real", "matrix");
  const auto im = get<std::vector<std::vector<double>>>(j, "imag", "matrix");
  if (re.size() != 4 || im.size() != 4) throw ValidationError("matrix: expected 4 rows");
  for (int r = 0; r < 4; ++r) {
    if (re[r].size() != 4 || im[r].size() != 4) throw ValidationError("matrix: expected 4 columns");
    for (int c = 0; c < 4; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
  }
  return m;
}

json to_json(const PosteriorSummary& s) {
  return {{"mean_rho", matrix_to_json(s.mean_rho)},
          {"std_real", real_matrix(s.std_real)},
          {"std_imag", real_matrix(s.std_imag)},
          {"fidelity", mean_std(s.fidelity)},
          {"eta_a", mean_std(s.eta_a)},
          {"eta_b", mean_std(s.eta_b)},
          {"diagnostics",
           {{"samples_used", s.samples_used},
            {"burn_in", s.burn_in},
            {"evaluations_per_sample", s.evaluations_per_sample},
            {"fidelity_rhat", s.fidelity_rhat},
            {"converged", s.converged},
            {"warning", s.warning}}},
          {"n_pairs", {{"value", s.n_pairs}, {"treatment", "fixed (not sampled)"}}}};
}

json to_json(const RotationResult& r) {
  return {{"basis_a", to_string(r.basis_a)},
          {"basis_b", to_string(r.basis_b)},
          {"raw", table_json(r.raw)},
          {"normalized", table_json(r.normalized)},
          {"subspace_probability", r.subspace_probability},
          {"total_probability", r.total_probability},
          {"leakage_fraction", r.leakage_fraction}};
}

std::vector<double> grid_from_json(const json& j) {
  if (j.is_array()) {
    std::vector<double> v;
    for (const auto& x : j) {
      if (!x.is_number()) throw ValidationError("grid: entries must be numbers");
      v.push_back(x.get<double>());
    }
    if (v.empty()) throw ValidationError("grid: empty array");
    return v;
  }
  const double start = get<double>(j, "start", "grid");
  const double stop = get<double>(j, "stop", "grid");
  const int count = get<int>(j, "count", "grid");
  if (count < 1) throw ValidationError("grid: count must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    v[static_cast<std::size_t>(i)] =
        count == 1 ? start : start + (stop - start) * i / static_cast<double>(count - 1);
  }
  return v;
}

std::string format_number(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& points) {
  os << "alpha,R,T,P,F_vs_hadamard\n";
  for (const auto& p : points) {
    os << format_number(p.analytic.alpha) << ',' << format_number(p.analytic.reflectivity) << ','
       << format_number(p.analytic.transmissivity) << ',' << format_number(p.analytic.success)
       << ',' << format_number(p.fidelity_vs_hadamard) << '\n';
  }
}

void write_hom_csv(std::ostream& os, const HomCurve& curve, const CountRecord* counts) {
  os << "alpha,c01";
  for (const auto& [bin, v] : curve.singles) os << ",s_" << bin;
  if (counts) os << ",C_AB,S_A,S_B";
  os << '\n';
  for (std::size_t i = 0; i < curve.alphas.size(); ++i) {
    os << format_number(curve.alphas[i]) << ',' << format_number(curve.c01[i]);
    for (const auto& [bin, v] : curve.singles) os << ',' << format_number(v[i]);
    if (counts) {
      const auto& d = counts->settings.at(i).data;
      os << ',' << d.coincidences << ',' << d.singles_a << ',' << d.singles_b;
    }
    os << '\n';
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace qfp
