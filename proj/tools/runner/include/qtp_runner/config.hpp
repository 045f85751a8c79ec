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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtp/core_model.hpp"

namespace qtp::runner {

enum class ModeSelection { paper_printed, independent, both };
enum class OutputFormat { csv, json };
// physical: E_2 = hbar * omega21. scaled: energy-weighted second-order
// columns use E_1 = 0, E_2 = omega21 / omega for each swept omega.
enum class EnergyConvention { physical, scaled };

struct ScenarioConfig {
  explicit ScenarioConfig(SystemSpec s) : system(std::move(s)) {}

  SystemSpec system;
  std::vector<int> orders{0, 1, 2};
  ModeSelection mode = ModeSelection::paper_printed;
  bool oracle = false;
  std::optional<double> temperature;
  // Requested columns after "t"; empty means the default set.
  std::vector<std::string> outputs;
  std::vector<OutputFormat> formats{OutputFormat::csv};
  int precision = 17;
  bool export_trajectory = false;
  std::vector<double> omegas;
  EnergyConvention energy_convention = EnergyConvention::physical;
  std::vector<double> epsilons;
};

inline constexpr std::size_t kMinConfigSteps = 100;

// Throws Error(ConfigParse) for malformed documents, unknown keys and type
// errors, Error(Validation) for semantic problems; key_path() names the key.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

ModeSelection parse_mode(const std::string& name);
std::string to_string(ModeSelection mode);

struct ColumnInfo {
  std::string name;
  int order = -1;          // perturbative order the column needs, -1 for none
  bool oracle = false;     // needs "oracle": true
  bool temperature = false;
  bool both_modes = false; // needs "mode": "both"
  bool by_default = false;
};

const std::vector<ColumnInfo>& column_catalog();

// Columns in the order they are written, "t" first. Throws Validation with
// key "outputs/<name>" for unknown or unproducible columns.
std::vector<std::string> resolve_columns(const ScenarioConfig& cfg);

}  // namespace qtp::runner
