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

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtp/error.hpp"
#include "qtp_runner/config.hpp"
#include "qtp_runner/runner.hpp"

namespace {

using qtp::ErrorKind;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ConfigParse:
    case ErrorKind::Validation:
    case ErrorKind::NonHermitian:
    case ErrorKind::NotDensityMatrix:
    case ErrorKind::NotDiagonalInDeclaredBasis:
    case ErrorKind::DegenerateBasisAmbiguity:
    case ErrorKind::NonUnitaryBasis:
    case ErrorKind::InvalidArgument:
    case ErrorKind::GridTooCoarse:
    case ErrorKind::OutOfTable:
    case ErrorKind::NotTwoLevel:
    case ErrorKind::NonPositiveTemperature:
    case ErrorKind::ResonantInput:
      return 2;
    default:
      return 1;
  }
}

void print_paths(const std::vector<std::filesystem::path>& paths) {
  for (const auto& p : paths) std::printf("%s\n", p.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perturbative first-law ledger for driven closed quantum systems"};
  app.require_subcommand(1);

  std::string config;
  std::string out = ".";
  std::string mode;
  std::vector<double> epsilons;

  auto* run = app.add_subcommand("run", "compute the ledger for one scenario");
  run->add_option("--config", config, "scenario JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "output directory");
  run->add_option("--mode", mode, "second-order density mode")->check(CLI::IsMember({"paper_printed", "independent", "both"}));

  auto* fig = app.add_subcommand("figure", "two-level panel data");
  fig->add_option("--config", config, "scenario JSON")->required()->check(CLI::ExistingFile);
  fig->add_option("--out", out, "output directory");

  auto* conv = app.add_subcommand("convergence", "residual scaling against the exact propagator");
  conv->add_option("--config", config, "scenario JSON")->required()->check(CLI::ExistingFile);
  conv->add_option("--out", out, "output directory");
  conv->add_option("--epsilons", epsilons, "drive amplitudes, comma separated")->delimiter(',');

  auto* val = app.add_subcommand("validate", "check a config without computing");
  val->add_option("--config", config, "scenario JSON")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      std::optional<qtp::runner::ModeSelection> m;
      if (!mode.empty()) m = qtp::runner::parse_mode(mode);
      print_paths(qtp::runner::run_scenario(config, out, m));
    } else if (*fig) {
      print_paths(qtp::runner::figure_data(config, out));
    } else if (*conv) {
      std::printf("%s\n", qtp::runner::convergence_report(config, out, epsilons).string().c_str());
    } else if (*val) {
      const auto s = qtp::runner::validate_config(qtp::runner::load_config(config));
      std::printf("ok: dim %ld, steps %zu, energy scale %.6g\ncolumns:", s.dim, s.steps, s.energy_scale);
      for (const auto& c : s.columns) std::printf(" %s", c.c_str());
      std::printf("\n");
    }
  } catch (const qtp::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
