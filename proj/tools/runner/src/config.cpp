// Copyright 2026 The qtp Authors
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

#include "qtp_runner/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qtp/error.hpp"

namespace qtp::runner {

using json = nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& msg, const std::string& path) {
  throw Error(ErrorKind::ConfigParse, msg, path);
}

[[noreturn]] void invalid(const std::string& msg, const std::string& path) {
  throw Error(ErrorKind::Validation, msg, path);
}

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return at(path, std::to_string(i)); }

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) parse_error("expected an object", path);
  for (const auto& item : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; })) {
      parse_error("unknown key", at(path, item.key()));
    }
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) parse_error("expected a number", path);
  const double x = j.get<double>();
  if (!std::isfinite(x)) invalid("number must be finite", path);
  return x;
}

long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) parse_error("expected an integer", path);
  return j.get<long>();
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) parse_error("expected true or false", path);
  return j.get<bool>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) parse_error("expected a string", path);
  return j.get<std::string>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) parse_error("expected an array", path);
  return j;
}

std::vector<double> numbers(const json& j, const std::string& path) {
  std::vector<double> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(number(j[i], at(path, i)));
  return out;
}

// A number, or [re, im].
cplx complex_entry(const json& j, const std::string& path) {
  if (j.is_number()) return {number(j, path), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], at(path, 0)), number(j[1], at(path, 1))};
  parse_error("expected a number or [re, im]", path);
}

CMatrix matrix(const json& j, const std::string& path) {
  const std::size_t rows = array(j, path).size();
  if (rows == 0) invalid("matrix is empty", path);
  const std::size_t cols = array(j[0], at(path, 0)).size();
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = at(path, r);
    if (array(j[r], rp).size() != cols) invalid("ragged matrix rows", rp);
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_entry(j[r][c], at(rp, c));
    }
  }
  return m;
}

// Re-raises a core validation error under the config key that caused it.
template <typename F>
auto keyed(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.key_path().empty()) throw;
    const std::string what = e.what();
    const auto colon = what.find(": ");
    throw Error(e.kind(), colon == std::string::npos ? what : what.substr(colon + 2), path);
  }
}

HermitianMatrix hermitian(const json& root, const char* full, const char* diag) {
  const bool has_full = root.contains(full);
  const bool has_diag = root.contains(diag);
  if (has_full == has_diag) invalid(std::string("give exactly one of '") + full + "' and '" + diag + "'", full);
  if (has_full) return keyed(full, [&] { return HermitianMatrix(matrix(root[full], full)); });
  const std::vector<double> d = numbers(root[diag], diag);
  return keyed(diag, [&] { return HermitianMatrix::diagonal(d); });
}

DriveSpec drive(const json& j) {
  const std::string p = "drive";
  only_keys(j, p, {"kind", "omega", "coupling", "samples"});
  const std::string kind = j.contains("kind") ? text(j["kind"], at(p, "kind")) : "harmonic";
  if (kind == "harmonic") {
    if (!j.contains("coupling")) invalid("harmonic drive needs 'coupling'", at(p, "coupling"));
    if (!j.contains("omega")) invalid("harmonic drive needs 'omega'", at(p, "omega"));
    if (j.contains("samples")) invalid("'samples' is only valid for custom_sampled drives", at(p, "samples"));
    return DriveSpec::harmonic(matrix(j["coupling"], at(p, "coupling")), number(j["omega"], at(p, "omega")));
  }
  if (kind == "custom_sampled") {
    if (!j.contains("samples")) invalid("custom_sampled drive needs 'samples'", at(p, "samples"));
    if (j.contains("coupling") || j.contains("omega")) invalid("custom_sampled drives take only 'samples'", p);
    std::vector<DriveSample> samples;
    const std::string sp = at(p, "samples");
    for (std::size_t i = 0; i < array(j["samples"], sp).size(); ++i) {
      const std::string ip = at(sp, i);
      const json& s = j["samples"][i];
      only_keys(s, ip, {"t", "value"});
      if (!s.contains("t") || !s.contains("value")) invalid("sample needs 't' and 'value'", ip);
      samples.push_back({number(s["t"], at(ip, "t")), matrix(s["value"], at(ip, "value"))});
    }
    return DriveSpec::sampled(std::move(samples));
  }
  invalid("kind must be 'harmonic' or 'custom_sampled'", at(p, "kind"));
}

TimeGrid grid(const json& j) {
  only_keys(j, "grid", {"t_max", "steps"});
  if (!j.contains("t_max") || !j.contains("steps")) invalid("grid needs 't_max' and 'steps'", "grid");
  const double t_max = number(j["t_max"], "grid/t_max");
  const long steps = integer(j["steps"], "grid/steps");
  if (!(t_max > 0.0)) invalid("t_max must be positive", "grid/t_max");
  if (steps < static_cast<long>(kMinConfigSteps)) invalid("steps must be at least 100", "grid/steps");
  return TimeGrid(t_max, static_cast<std::size_t>(steps));
}

}  // namespace

ModeSelection parse_mode(const std::string& name) {
  if (name == "paper_printed") return ModeSelection::paper_printed;
  if (name == "independent") return ModeSelection::independent;
  if (name == "both") return ModeSelection::both;
  invalid("mode must be paper_printed, independent or both", "mode");
}

std::string to_string(ModeSelection mode) {
  switch (mode) {
    case ModeSelection::paper_printed: return "paper_printed";
    case ModeSelection::independent: return "independent";
    case ModeSelection::both: return "both";
  }
  return "";
}

const std::vector<ColumnInfo>& column_catalog() {
  static const std::vector<ColumnInfo> catalog = [] {
    std::vector<ColumnInfo> c;
    auto order = [&](const char* name, int n, bool def) { c.push_back({name, n, false, false, false, def}); };
    order("W0", 0, true);
    order("W1", 1, true);
    order("W2", 2, true);
    order("Q2", 2, true);
    order("C1", 1, true);
    order("C2", 2, true);
    order("q1", 1, true);
    order("w1", 1, true);
    order("q2", 2, true);
    order("w2", 2, true);
    order("U0", 0, true);
    order("U1", 1, true);
    order("U2", 2, true);
    order("U_sum", -1, true);
    order("Q0", 0, false);
    order("C0", 0, false);
    order("Q1", 1, false);
    order("W1_eff", 1, false);
    order("Q1_eff", 1, false);
    order("W2_eff", 2, false);
    order("Q2_eff", 2, false);
    order("C1_direct", 1, false);
    order("w1_levels", 1, false);
    order("Q2_final", 2, false);
    order("Q2_rate", 2, false);
    for (const char* n : {"W2_independent", "Q2_independent", "U2_independent"}) c.push_back({n, 2, false, false, true, true});
    c.push_back({"U_sum_independent", -1, false, false, true, true});
    for (const char* n : {"U_exact", "W_alicki", "Q_alicki", "W_bertulio", "Q_bertulio", "C_bertulio", "W_entropy",
                          "Q_entropy", "S"}) {
      c.push_back({n, -1, true, false, false, true});
    }
    for (const char* n : {"phi_pop", "phi_coh"}) c.push_back({n, -1, false, true, false, true});
    return c;
  }();
  return catalog;
}

std::vector<std::string> resolve_columns(const ScenarioConfig& cfg) {
  auto has_order = [&](int n) { return std::find(cfg.orders.begin(), cfg.orders.end(), n) != cfg.orders.end(); };
  auto producible = [&](const ColumnInfo& c) {
    return (c.order < 0 || has_order(c.order)) && (!c.oracle || cfg.oracle) && (!c.temperature || cfg.temperature) &&
           (!c.both_modes || cfg.mode == ModeSelection::both);
  };
  std::vector<std::string> out{"t"};
  if (cfg.outputs.empty()) {
    for (const auto& c : column_catalog())
      if (c.by_default && producible(c)) out.push_back(c.name);
    return out;
  }
  std::set<std::string> seen{"t"};
  for (const auto& name : cfg.outputs) {
    if (name == "t") continue;
    const std::string path = "outputs/" + name;
    if (!seen.insert(name).second) invalid("column listed twice", path);
    const auto& cat = column_catalog();
    auto it = std::find_if(cat.begin(), cat.end(), [&](const ColumnInfo& c) { return c.name == name; });
    if (it == cat.end()) invalid("unknown column", path);
    if (it->order >= 0 && !has_order(it->order)) invalid("column needs order " + std::to_string(it->order), path);
    if (it->oracle && !cfg.oracle) invalid("column needs \"oracle\": true", path);
    if (it->temperature && !cfg.temperature) invalid("column needs a temperature", path);
    if (it->both_modes && cfg.mode != ModeSelection::both) invalid("column needs \"mode\": \"both\"", path);
    out.push_back(name);
  }
  return out;
}

ScenarioConfig parse_config(const std::string& source) {
  json root;
  try {
    root = json::parse(source);
  } catch (const json::parse_error& e) {
    parse_error(e.what(), "");
  }
  only_keys(root, "", {"hbar", "h0", "h0_diag", "level_ramp", "rho0", "rho0_diag", "rho0_basis", "rho0_basis_vectors",
                       "drive", "grid", "orders", "mode", "oracle", "temperature", "outputs", "formats", "precision",
                       "export_trajectory", "figure", "convergence"});
  if (!root.contains("drive")) invalid("missing 'drive'", "drive");
  if (!root.contains("grid")) invalid("missing 'grid'", "grid");

  const double hbar = root.contains("hbar") ? number(root["hbar"], "hbar") : 1.0;
  if (!(hbar > 0.0)) invalid("hbar must be positive", "hbar");
  HermitianMatrix h0 = hermitian(root, "h0", "h0_diag");
  HermitianMatrix rho0 = hermitian(root, "rho0", "rho0_diag");

  Rho0Basis basis = Rho0Basis::energy;
  CMatrix basis_vectors;
  if (root.contains("rho0_basis")) {
    const std::string b = text(root["rho0_basis"], "rho0_basis");
    if (b == "custom") {
      basis = Rho0Basis::custom;
    } else if (b != "energy") {
      invalid("rho0_basis must be 'energy' or 'custom'", "rho0_basis");
    }
  }
  if (basis == Rho0Basis::custom) {
    if (!root.contains("rho0_basis_vectors")) invalid("custom basis needs 'rho0_basis_vectors'", "rho0_basis_vectors");
    basis_vectors = matrix(root["rho0_basis_vectors"], "rho0_basis_vectors");
  } else if (root.contains("rho0_basis_vectors")) {
    invalid("'rho0_basis_vectors' needs \"rho0_basis\": \"custom\"", "rho0_basis_vectors");
  }

  RVector ramp;
  if (root.contains("level_ramp")) {
    const auto r = numbers(root["level_ramp"], "level_ramp");
    ramp = Eigen::Map<const RVector>(r.data(), static_cast<Eigen::Index>(r.size()));
  }

  ScenarioConfig cfg{SystemSpec{hbar, std::move(h0), std::move(rho0), drive(root["drive"]), grid(root["grid"]), basis,
                                std::move(basis_vectors), std::move(ramp)}};

  if (root.contains("orders")) {
    std::set<int> orders;
    const json& o = array(root["orders"], "orders");
    for (std::size_t i = 0; i < o.size(); ++i) {
      const long n = integer(o[i], at("orders", i));
      if (n < 0 || n > 2) invalid("orders are 0, 1 or 2", at("orders", i));
      if (!orders.insert(static_cast<int>(n)).second) invalid("order listed twice", at("orders", i));
    }
    if (orders.empty()) invalid("at least one order is needed", "orders");
    cfg.orders.assign(orders.begin(), orders.end());
  }
  if (root.contains("mode")) cfg.mode = parse_mode(text(root["mode"], "mode"));
  if (root.contains("oracle")) cfg.oracle = boolean(root["oracle"], "oracle");
  if (root.contains("temperature")) {
    const double T = number(root["temperature"], "temperature");
    if (!(T > 0.0)) throw Error(ErrorKind::NonPositiveTemperature, "temperature must be positive", "temperature");
    cfg.temperature = T;
  }
  if (root.contains("outputs")) {
    const json& o = array(root["outputs"], "outputs");
    for (std::size_t i = 0; i < o.size(); ++i) cfg.outputs.push_back(text(o[i], at("outputs", i)));
  }
  if (root.contains("formats")) {
    cfg.formats.clear();
    const json& f = array(root["formats"], "formats");
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::string s = text(f[i], at("formats", i));
      if (s == "csv") {
        cfg.formats.push_back(OutputFormat::csv);
      } else if (s == "json") {
        cfg.formats.push_back(OutputFormat::json);
      } else {
        invalid("format must be 'csv' or 'json'", at("formats", i));
      }
    }
    if (cfg.formats.empty()) invalid("at least one format is needed", "formats");
  }
  if (root.contains("precision")) {
    const long p = integer(root["precision"], "precision");
    if (p < 1 || p > 17) invalid("precision must be between 1 and 17", "precision");
    cfg.precision = static_cast<int>(p);
  }
  if (root.contains("export_trajectory")) cfg.export_trajectory = boolean(root["export_trajectory"], "export_trajectory");
  if (root.contains("figure")) {
    const json& f = root["figure"];
    only_keys(f, "figure", {"omegas", "energy_convention"});
    if (f.contains("omegas")) cfg.omegas = numbers(f["omegas"], "figure/omegas");
    for (std::size_t i = 0; i < cfg.omegas.size(); ++i)
      if (!(cfg.omegas[i] > 0.0)) invalid("omega must be positive", at("figure/omegas", i));
    if (f.contains("energy_convention")) {
      const std::string c = text(f["energy_convention"], "figure/energy_convention");
      if (c == "scaled") {
        cfg.energy_convention = EnergyConvention::scaled;
      } else if (c != "physical") {
        invalid("energy_convention must be 'physical' or 'scaled'", "figure/energy_convention");
      }
    }
  }
  if (root.contains("convergence")) {
    const json& c = root["convergence"];
    only_keys(c, "convergence", {"epsilons"});
    if (c.contains("epsilons")) cfg.epsilons = numbers(c["epsilons"], "convergence/epsilons");
  }
  validate_system(cfg.system);
  resolve_columns(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open config " + path.string(), "");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace qtp::runner
