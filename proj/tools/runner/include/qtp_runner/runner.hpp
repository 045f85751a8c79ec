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
#include <vector>

#include "qtp_runner/config.hpp"
#include "qtp_runner/csv.hpp"

namespace qtp::runner {

// Computes the ledger table without touching the filesystem.
Table scenario_table(const ScenarioConfig& cfg);

// Writes ledger.csv and/or ledger.json (and trajectory.csv on request) into
// out_dir; returns the files written.
std::vector<std::filesystem::path> run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);
std::vector<std::filesystem::path> run_scenario(const std::filesystem::path& config_path,
                                                const std::filesystem::path& out_dir,
                                                std::optional<ModeSelection> mode = std::nullopt);

struct FigurePanels {
  double omega = 0.0;
  Table panel_a;  // t, W1, w1, U1
  Table panel_b;  // t, Q2, q2
  Table panel_c;  // t, U1, U2, U_sum
};

std::vector<FigurePanels> figure_tables(const ScenarioConfig& cfg);
std::vector<std::filesystem::path> figure_data(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);
std::vector<std::filesystem::path> figure_data(const std::filesystem::path& config_path,
                                               const std::filesystem::path& out_dir);

struct ModeResiduals {
  std::vector<double> rho;
  std::vector<double> energy;
  std::optional<double> rho_exponent;
  std::optional<double> energy_exponent;
};

struct ConvergenceReport {
  std::vector<double> epsilons;
  double t_max = 0.0;
  std::size_t steps = 0;
  ModeResiduals paper_printed;
  ModeResiduals independent;
  std::vector<double> coherence;
  std::optional<double> coherence_exponent;
  std::optional<std::string> favored_mode;
  double threshold = 2.8;
};

inline constexpr double kAdjudicationExponent = 2.8;

// Least-squares slope of log(residual) against log(epsilon); empty if any
// residual is not positive.
std::optional<double> fit_exponent(const std::vector<double>& eps, const std::vector<double>& residual);

ConvergenceReport convergence_report(const ScenarioConfig& cfg, std::vector<double> epsilons);
std::string report_json(const ConvergenceReport& r);
std::filesystem::path convergence_report(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
                                         std::vector<double> epsilons = {});

struct ValidationSummary {
  long dim = 0;
  double energy_scale = 1.0;
  std::size_t steps = 0;
  std::vector<std::string> columns;
};

ValidationSummary validate_config(const ScenarioConfig& cfg);

}  // namespace qtp::runner
