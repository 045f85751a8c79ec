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

#include "qtp_runner/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <functional>

#include <json.hpp>

#include "qtp/dyson.hpp"
#include "qtp/error.hpp"
#include "qtp/oracle.hpp"
#include "qtp/thermo.hpp"
#include "qtp_runner/parallel.hpp"

namespace qtp::runner {

namespace {

namespace fs = std::filesystem;

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
}

ScalarSeries add(const ScalarSeries& a, const ScalarSeries& b) {
  ScalarSeries out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

ScalarSeries order_sum(const ScenarioConfig& cfg, const LedgerSeries& L) {
  ScalarSeries s(L.times.size(), 0.0);
  for (int n : cfg.orders) s = add(s, L.U[static_cast<std::size_t>(n)]);
  return s;
}

bool needs(const std::vector<std::string>& cols, std::initializer_list<const char*> names) {
  for (const auto& c : cols)
    for (const char* n : names)
      if (c == n) return true;
  return false;
}

Table trajectory_table(const Trajectory& tr) {
  Table t;
  t.add("t", tr.times);
  const Eigen::Index d = tr.rho.rows();
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = r; c < d; ++c) {
      const auto ch = tr.rho.channel(r, c);
      ScalarSeries re(ch.size()), im(ch.size());
      for (std::size_t i = 0; i < ch.size(); ++i) {
        re[i] = ch[i].real();
        im[i] = ch[i].imag();
      }
      const std::string base = "rho_" + std::to_string(r) + "_" + std::to_string(c);
      t.add(base + "_re", std::move(re));
      if (r != c) t.add(base + "_im", std::move(im));
    }
  }
  return t;
}

struct ScenarioResult {
  Table ledger;
  std::optional<Trajectory> trajectory;
};

ScenarioResult compute_scenario(const ScenarioConfig& cfg) {
  const std::vector<std::string> cols = resolve_columns(cfg);
  const ValidatedSystem sys = validate_system(cfg.system);

  std::map<std::string, ScalarSeries> data;
  data["t"] = sys.grid().times();

  bool perturbative = false;
  for (const auto& c : column_catalog())
    if (!c.oracle && !c.temperature && needs(cols, {c.name.c_str()})) perturbative = true;
  if (perturbative) {
    const AmplitudeSet a = compute_amplitudes(sys);
    const Rho2Mode main = cfg.mode == ModeSelection::independent ? Rho2Mode::independent : Rho2Mode::paper_printed;
    const LedgerSeries L = build_ledger(sys, a, main);
    const char* digits[3] = {"0", "1", "2"};
    for (std::size_t n = 0; n < 3; ++n) {
      const std::string k = digits[n];
      data["W" + k] = L.W[n];
      data["Q" + k] = L.Q[n];
      data["C" + k] = L.C[n];
      data["U" + k] = L.U[n];
    }
    data["q1"] = L.q1;
    data["w1"] = L.w1;
    data["q2"] = L.q2;
    data["w2"] = L.w2;
    data["W1_eff"] = L.W_eff[1];
    data["Q1_eff"] = L.Q_eff[1];
    data["W2_eff"] = L.W_eff[2];
    data["Q2_eff"] = L.Q_eff[2];
    data["C1_direct"] = L.C1_direct;
    data["w1_levels"] = L.w1_levels;
    data["Q2_final"] = L.Q2_final;
    data["Q2_rate"] = L.Q2_rate_form;
    data["U_sum"] = order_sum(cfg, L);
    if (cfg.mode == ModeSelection::both) {
      const LedgerSeries I = build_ledger(sys, a, Rho2Mode::independent);
      data["W2_independent"] = I.W[2];
      data["Q2_independent"] = I.Q[2];
      data["U2_independent"] = I.U[2];
      data["U_sum_independent"] = order_sum(cfg, I);
    }
  }

  ScenarioResult result;
  const bool oracle_cols = needs(cols, {"U_exact", "W_alicki", "Q_alicki", "W_bertulio", "Q_bertulio", "C_bertulio",
                                        "W_entropy", "Q_entropy", "S", "phi_pop", "phi_coh"});
  if (oracle_cols || cfg.export_trajectory) {
    Trajectory tr = propagate_exact(sys);
    if (oracle_cols) {
      data["U_exact"] = internal_energy_change(tr);
      const AlickiResult A = alicki_decomposition(tr);
      data["W_alicki"] = A.work;
      data["Q_alicki"] = A.heat;
      const BertulioResult B = bertulio_decomposition(tr);
      data["W_bertulio"] = B.work;
      data["Q_bertulio"] = B.heat;
      data["C_bertulio"] = B.coherence;
      const EntropyBasedResult E = entropy_based_decomposition(tr);
      data["W_entropy"] = E.work;
      data["Q_entropy"] = E.heat;
      data["S"] = von_neumann_entropy(tr);
      if (cfg.temperature) {
        const HeatCurrentSplit H = heat_current_split(tr, *cfg.temperature);
        data["phi_pop"] = H.phi_pop;
        data["phi_coh"] = H.phi_coh;
      }
    }
    if (cfg.export_trajectory) result.trajectory = std::move(tr);
  }

  for (const auto& c : cols) result.ledger.add(c, data.at(c));
  return result;
}

std::vector<fs::path> write_outputs(const ScenarioConfig& cfg, const ScenarioResult& r, const fs::path& out_dir) {
  make_dir(out_dir);
  std::vector<fs::path> written;
  for (OutputFormat f : cfg.formats) {
    if (f == OutputFormat::csv) {
      written.push_back(out_dir / "ledger.csv");
      write_csv(written.back(), r.ledger, cfg.precision);
    } else {
      written.push_back(out_dir / "ledger.json");
      write_text(written.back(), to_json(r.ledger, cfg.precision));
    }
  }
  if (r.trajectory) {
    written.push_back(out_dir / "trajectory.csv");
    write_csv(written.back(), trajectory_table(*r.trajectory), cfg.precision);
  }
  return written;
}

struct TwoLevelView {
  double e1, e2, epsilon, rho1, rho2, omega21;
};

TwoLevelView two_level_view(const ScenarioConfig& cfg) {
  const SystemSpec& s = cfg.system;
  if (s.h0.dim() != 2) throw Error(ErrorKind::NotTwoLevel, "figure data needs a two-level system", "h0");
  if (s.drive.kind != DriveKind::harmonic) throw Error(ErrorKind::NotTwoLevel, "figure data needs a harmonic drive", "drive/kind");
  const CMatrix& h = s.h0.matrix();
  const CMatrix& v = s.drive.coupling;
  if (h(0, 1) != cplx(0.0) || v(0, 0) != cplx(0.0) || v(1, 1) != cplx(0.0)) {
    throw Error(ErrorKind::NotTwoLevel, "figure data needs diagonal h0 and an off-diagonal coupling", "drive/coupling");
  }
  if (s.level_ramp.size() > 0 && s.level_ramp.cwiseAbs().maxCoeff() != 0.0) {
    throw Error(ErrorKind::NotTwoLevel, "figure data needs static levels", "level_ramp");
  }
  if (s.rho0_basis != Rho0Basis::energy) throw Error(ErrorKind::NotTwoLevel, "figure data needs rho0 in the energy basis", "rho0_basis");
  const ValidatedSystem sys = validate_system(s);
  const RVector& E = sys.levels();
  const RVector& p = sys.rho0_populations();
  return {E(0), E(1), std::abs(v(1, 0)), p(0), p(1), (E(1) - E(0)) / s.hbar};
}

SystemSpec with_drive_scale(const SystemSpec& s, double f) {
  SystemSpec out = s;
  out.drive.coupling *= f;
  for (auto& smp : out.drive.samples) smp.value *= f;
  return out;
}

std::string omega_label(double w) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "omega_%.10g", w);
  return buf;
}

double max_abs_diff(const RealMatrixSeries& a, const RealMatrixSeries& b) {
  double m = 0.0;
  auto x = a.flat();
  auto y = b.flat();
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace

Table scenario_table(const ScenarioConfig& cfg) { return compute_scenario(cfg).ledger; }

std::vector<fs::path> run_scenario(const ScenarioConfig& cfg, const fs::path& out_dir) {
  return write_outputs(cfg, compute_scenario(cfg), out_dir);
}

std::vector<fs::path> run_scenario(const fs::path& config_path, const fs::path& out_dir, std::optional<ModeSelection> mode) {
  ScenarioConfig cfg = load_config(config_path);
  if (mode) {
    cfg.mode = *mode;
    resolve_columns(cfg);
  }
  return run_scenario(cfg, out_dir);
}

std::vector<FigurePanels> figure_tables(const ScenarioConfig& cfg) {
  const TwoLevelView tl = two_level_view(cfg);
  std::vector<double> omegas = cfg.omegas;
  if (omegas.empty()) omegas.push_back(cfg.system.drive.omega);
  std::vector<FigurePanels> panels(omegas.size());
  parallel_for(omegas.size(), [&](std::size_t j) {
    const double w = omegas[j];
    SystemSpec spec = cfg.system;
    spec.drive.omega = w;
    const ValidatedSystem sys = validate_system(spec);
    const AmplitudeSet a = compute_amplitudes(sys);
    const LedgerSeries L = build_ledger(sys, a, Rho2Mode::paper_printed);
    ScalarSeries Q2 = L.Q[2], q2 = L.q2, U2 = L.U[2];
    if (cfg.energy_convention == EnergyConvention::scaled) {
      // Static levels: the Stieltjes sums collapse to E . x(t).
      const RealMatrixSeries rho2 = rho_second_order(sys, a, Rho2Mode::paper_printed);
      const double e2 = tl.omega21 / w;
      for (std::size_t i = 0; i < Q2.size(); ++i) {
        Q2[i] = e2 * rho2(i, 1);
        q2[i] = e2 * a.pn_tilde(i, 1);
        U2[i] = L.W[2][i] + Q2[i] + q2[i] + L.w2[i];
      }
    }
    ScalarSeries U_sum(U2.size());
    for (std::size_t i = 0; i < U2.size(); ++i) U_sum[i] = L.U[0][i] + L.U[1][i] + U2[i];
    FigurePanels& p = panels[j];
    p.omega = w;
    p.panel_a.add("t", L.times);
    p.panel_a.add("W1", L.W[1]);
    p.panel_a.add("w1", L.w1);
    p.panel_a.add("U1", L.U[1]);
    p.panel_b.add("t", L.times);
    p.panel_b.add("Q2", std::move(Q2));
    p.panel_b.add("q2", std::move(q2));
    p.panel_c.add("t", L.times);
    p.panel_c.add("U1", L.U[1]);
    p.panel_c.add("U2", std::move(U2));
    p.panel_c.add("U_sum", std::move(U_sum));
  });
  return panels;
}

std::vector<fs::path> figure_data(const ScenarioConfig& cfg, const fs::path& out_dir) {
  const std::vector<FigurePanels> panels = figure_tables(cfg);
  std::vector<fs::path> written;
  for (const auto& p : panels) {
    const fs::path dir = panels.size() == 1 ? out_dir : out_dir / omega_label(p.omega);
    make_dir(dir);
    for (auto [name, table] : {std::pair{"panel_a.csv", &p.panel_a}, {"panel_b.csv", &p.panel_b}, {"panel_c.csv", &p.panel_c}}) {
      written.push_back(dir / name);
      write_csv(written.back(), *table, cfg.precision);
    }
  }
  return written;
}

std::vector<fs::path> figure_data(const fs::path& config_path, const fs::path& out_dir) {
  return figure_data(load_config(config_path), out_dir);
}

std::optional<double> fit_exponent(const std::vector<double>& eps, const std::vector<double>& residual) {
  const std::size_t n = eps.size();
  if (n < 2 || residual.size() != n) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(residual[i] > 0.0) || !(eps[i] > 0.0)) return std::nullopt;
    const double x = std::log(eps[i]);
    const double y = std::log(residual[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = static_cast<double>(n) * sxx - sx * sx;
  if (den == 0.0) return std::nullopt;
  return (static_cast<double>(n) * sxy - sx * sy) / den;
}

ConvergenceReport convergence_report(const ScenarioConfig& cfg, std::vector<double> epsilons) {
  if (epsilons.empty()) epsilons = cfg.epsilons;
  const std::string key = "convergence/epsilons";
  if (epsilons.size() < 3) throw Error(ErrorKind::Validation, "need at least three epsilons", key);
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0) || !std::isfinite(epsilons[i])) {
      throw Error(ErrorKind::Validation, "epsilons must be positive", key + "/" + std::to_string(i));
    }
  }
  const double ratio = epsilons[1] / epsilons[0];
  if (std::abs(ratio - 1.0) < 1e-12) throw Error(ErrorKind::Validation, "epsilons must differ", key);
  for (std::size_t i = 1; i + 1 < epsilons.size(); ++i) {
    if (std::abs(epsilons[i + 1] / epsilons[i] / ratio - 1.0) > 1e-9) {
      throw Error(ErrorKind::Validation, "epsilons must form a geometric progression", key);
    }
  }
  const double base = drive_amplitude(cfg.system.drive);
  if (!(base > 0.0)) throw Error(ErrorKind::Validation, "drive amplitude is zero; nothing to scale", "drive");

  const std::size_t m = epsilons.size();
  ConvergenceReport r;
  r.epsilons = epsilons;
  r.t_max = cfg.system.grid.t_max();
  r.steps = cfg.system.grid.steps();
  r.threshold = kAdjudicationExponent;
  r.paper_printed.rho.resize(m);
  r.paper_printed.energy.resize(m);
  r.independent.rho.resize(m);
  r.independent.energy.resize(m);
  r.coherence.resize(m);

  parallel_for(m, [&](std::size_t j) {
    const ValidatedSystem sys = validate_system(with_drive_scale(cfg.system, epsilons[j] / base));
    const AmplitudeSet a = compute_amplitudes(sys);
    const Trajectory tr = propagate_exact(sys);
    const RealMatrixSeries exact = interaction_populations(sys, tr);
    const ScalarSeries du = internal_energy_change(tr);
    const BertulioResult B = bertulio_decomposition(tr);
    const RVector& rho0 = sys.rho0_populations();
    for (Rho2Mode mode : {Rho2Mode::paper_printed, Rho2Mode::independent}) {
      ModeResiduals& out = mode == Rho2Mode::paper_printed ? r.paper_printed : r.independent;
      const DensityCorrections d = density_corrections(sys, a, mode);
      RealMatrixSeries pert(exact.samples(), exact.rows());
      for (std::size_t i = 0; i < pert.samples(); ++i) pert[i] = rho0 + d.rho1[i] + d.rho2[i];
      out.rho[j] = max_abs_diff(exact, pert);
      const LedgerSeries L = build_ledger(sys, a, mode);
      double e = 0.0;
      for (std::size_t i = 0; i < du.size(); ++i) e = std::max(e, std::abs(du[i] - L.U_sum[i]));
      out.energy[j] = e;
      if (mode == Rho2Mode::independent) {
        double c = 0.0;
        for (std::size_t i = 0; i < du.size(); ++i) c = std::max(c, std::abs(B.coherence[i] - L.C[1][i] - L.C[2][i]));
        r.coherence[j] = c;
      }
    }
  });

  for (ModeResiduals* mr : {&r.paper_printed, &r.independent}) {
    mr->rho_exponent = fit_exponent(r.epsilons, mr->rho);
    mr->energy_exponent = fit_exponent(r.epsilons, mr->energy);
  }
  r.coherence_exponent = fit_exponent(r.epsilons, r.coherence);
  double best = -1.0;
  for (auto [name, mr] : {std::pair{"paper_printed", &r.paper_printed}, {"independent", &r.independent}}) {
    if (mr->rho_exponent && *mr->rho_exponent >= r.threshold && *mr->rho_exponent > best) {
      best = *mr->rho_exponent;
      r.favored_mode = name;
    }
  }
  return r;
}

std::string report_json(const ConvergenceReport& r) {
  using oj = nlohmann::ordered_json;
  auto opt = [](const std::optional<double>& x) { return x ? oj(*x) : oj(nullptr); };
  auto mode = [&](const ModeResiduals& m) {
    oj j;
    j["rho_residual"] = m.rho;
    j["rho_exponent"] = opt(m.rho_exponent);
    j["energy_residual"] = m.energy;
    j["energy_exponent"] = opt(m.energy_exponent);
    return j;
  };
  oj j;
  j["epsilons"] = r.epsilons;
  j["grid"] = {{"t_max", r.t_max}, {"steps", r.steps}};
  j["modes"] = {{"paper_printed", mode(r.paper_printed)}, {"independent", mode(r.independent)}};
  j["coherence_residual"] = r.coherence;
  j["coherence_exponent"] = opt(r.coherence_exponent);
  j["threshold"] = r.threshold;
  j["favored_mode"] = r.favored_mode ? oj(*r.favored_mode) : oj(nullptr);
  return j.dump(2) + "\n";
}

fs::path convergence_report(const fs::path& config_path, const fs::path& out_dir, std::vector<double> epsilons) {
  const ConvergenceReport r = convergence_report(load_config(config_path), std::move(epsilons));
  make_dir(out_dir);
  const fs::path path = out_dir / "convergence_report.json";
  write_text(path, report_json(r));
  return path;
}

ValidationSummary validate_config(const ScenarioConfig& cfg) {
  const ValidatedSystem sys = validate_system(cfg.system);
  const double phase = aliasing_phase_per_step(sys);
  if (phase > kAliasingGuard) {
    throw Error(ErrorKind::GridTooCoarse, "phase advance per step " + std::to_string(phase) + " rad", "grid/steps");
  }
  return {static_cast<long>(sys.dim()), sys.energy_scale(), sys.grid().steps(), resolve_columns(cfg)};
}

}  // namespace qtp::runner
