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

#include "qtp/thermo.hpp"

#include <cmath>
#include <string>

#include "qtp/error.hpp"
#include "qtp/quadrature.hpp"

namespace qtp {

namespace {

// <n|H(t)|n> and <n|Hdot(t)|n> in the energy basis, as d x 1 series.
RealMatrixSeries level_energies(const ValidatedSystem& sys) {
  const TimeGrid& g = sys.grid();
  RealMatrixSeries e(g.samples(), sys.dim());
  for (std::size_t i = 0; i < g.samples(); ++i) e[i] = sys.hamiltonian(g.time(i)).diagonal().real();
  return e;
}

RealMatrixSeries level_rates(const ValidatedSystem& sys) {
  const TimeGrid& g = sys.grid();
  RealMatrixSeries e(g.samples(), sys.dim());
  for (std::size_t i = 0; i < g.samples(); ++i) e[i] = sys.hamiltonian_rate(g.time(i)).diagonal().real();
  return e;
}

// Same, in the rho0 eigenbasis {|k>}.
RealMatrixSeries state_energies(const ValidatedSystem& sys) {
  const TimeGrid& g = sys.grid();
  const CMatrix& K = sys.k_basis();
  RealMatrixSeries e(g.samples(), sys.dim());
  for (std::size_t i = 0; i < g.samples(); ++i) e[i] = (K.adjoint() * sys.hamiltonian(g.time(i)) * K).diagonal().real();
  return e;
}

RealMatrixSeries state_rates(const ValidatedSystem& sys) {
  const TimeGrid& g = sys.grid();
  const CMatrix& K = sys.k_basis();
  RealMatrixSeries e(g.samples(), sys.dim());
  for (std::size_t i = 0; i < g.samples(); ++i) e[i] = (K.adjoint() * sys.hamiltonian_rate(g.time(i)) * K).diagonal().real();
  return e;
}

// sum_j cumulative Stieltjes of f_j against g_j.
ScalarSeries stieltjes_sum(const RealMatrixSeries& f, const RealMatrixSeries& g) {
  ScalarSeries out(f.samples(), 0.0);
  for (std::size_t i = 1; i < f.samples(); ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < f.rows(); ++j) s += 0.5 * (f(i - 1, j) + f(i, j)) * (g(i, j) - g(i - 1, j));
    out[i] = out[i - 1] + s;
  }
  return out;
}

ScalarSeries dot_rows(const RealMatrixSeries& a, const RealMatrixSeries& b) {
  ScalarSeries out(a.samples());
  for (std::size_t i = 0; i < a.samples(); ++i) out[i] = a[i].cwiseProduct(b[i]).sum();
  return out;
}

ScalarSeries zeros(const ValidatedSystem& sys) { return ScalarSeries(sys.grid().samples(), 0.0); }

ScalarSeries scaled(ScalarSeries s, double f) {
  for (double& x : s) x *= f;
  return s;
}

ScalarSeries sum(const ScalarSeries& a, const ScalarSeries& b) {
  ScalarSeries out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

// Real part of tr(rho1_op Hdot) per sample; the imaginary part must vanish.
ScalarSeries drive_power(const ValidatedSystem& sys, const ComplexMatrixSeries& rho1_op) {
  const TimeGrid& g = sys.grid();
  const double limit = 1e-8 * sys.energy_scale();
  ScalarSeries out(g.samples());
  for (std::size_t i = 0; i < g.samples(); ++i) {
    const cplx v = (rho1_op[i] * sys.hamiltonian_rate(g.time(i))).trace();
    if (std::abs(v.imag()) > limit) {
      throw Error(ErrorKind::NonRealResult, "imaginary residue " + std::to_string(v.imag()) + " at t = " + std::to_string(g.time(i)));
    }
    out[i] = v.real();
  }
  return out;
}

// rho1_nn reconstructed from amplitudes: sum_k rho_k 2 Re(conj(c0_nk) c1_nk).
RealMatrixSeries first_order_levels(const ValidatedSystem& sys, const AmplitudeSet& a) {
  const Eigen::Index d = sys.dim();
  const RVector& rho = sys.rho0_populations();
  RealMatrixSeries out(a.c1.samples(), d);
  for (std::size_t i = 0; i < a.c1.samples(); ++i) {
    const RMatrix mix = 2.0 * (a.c0.conjugate().cwiseProduct(a.c1[i])).real();
    out[i] = mix * rho;
  }
  return out;
}

}  // namespace

ComplexMatrixSeries first_order_state(const ValidatedSystem& sys) {
  const TimeGrid& g = sys.grid();
  const Eigen::Index d = sys.dim();
  const CMatrix& rho0 = sys.rho0_energy();
  const cplx pre(0.0, -1.0 / sys.hbar());
  ComplexMatrixSeries out(g.samples(), d, d);
  CMatrix prev = CMatrix::Zero(d, d);
  CMatrix acc = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < g.samples(); ++i) {
    const CMatrix v = interaction_picture_drive(sys, g.time(i));
    CMatrix comm = v * rho0 - rho0 * v;
    if (i > 0) acc += (0.5 * g.dt()) * (prev + comm);
    out[i] = pre * acc;
    prev = std::move(comm);
  }
  return out;
}

ScalarSeries work_order0(const ValidatedSystem& sys) {
  const TimeGrid& g = sys.grid();
  const RVector pop = sys.rho0_energy().diagonal().real();
  const RVector& E0 = sys.levels();
  ScalarSeries out(g.samples());
  for (std::size_t i = 0; i < g.samples(); ++i) out[i] = (sys.levels_at(g.time(i)) - E0).dot(pop);
  out[0] = 0.0;
  return out;
}

ScalarSeries work_order1(const ValidatedSystem& sys, const ComplexMatrixSeries& rho1_op) {
  return scaled(quad::cumulative_trapezoid(drive_power(sys, rho1_op), sys.grid().dt()), 2.0);
}

ScalarSeries work_order1(const ValidatedSystem& sys) { return work_order1(sys, first_order_state(sys)); }

ScalarSeries work_order2(const ValidatedSystem& sys, const AmplitudeSet& a, const DensityCorrections& d) {
  ScalarSeries integrand;
  if (d.mode == Rho2Mode::paper_printed) {
    integrand = dot_rows(state_rates(sys), a.pk);
  } else {
    integrand = sum(dot_rows(state_rates(sys), d.rho2), dot_rows(level_rates(sys), a.pn_tilde));
  }
  return quad::cumulative_trapezoid(integrand, sys.grid().dt());
}

HeatOrders heat_orders(const ValidatedSystem& sys, const DensityCorrections& d, const AmplitudeSet& a) {
  const Eigen::Index dim = sys.dim();
  const std::size_t n = sys.grid().samples();
  const RealMatrixSeries ek = state_energies(sys);
  const RealMatrixSeries en = level_energies(sys);
  const RVector& rho = sys.rho0_populations();

  HeatOrders h;
  h.Q0 = zeros(sys);
  h.Q1 = stieltjes_sum(ek, d.rho1);
  h.Q2 = stieltjes_sum(ek, d.rho2);

  h.Q2_final = zeros(sys);
  ScalarSeries rate_integrand(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    double r = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
      for (Eigen::Index m = 0; m < dim; ++m) {
        r += rho(k) * (ek(i, k) - en(i, m)) * a.rates(i, m, k);
        if (i > 0) {
          const double gap = 0.5 * (ek(i - 1, k) - en(i - 1, m) + ek(i, k) - en(i, m));
          s += rho(k) * gap * (a.p1sq(i, m, k) - a.p1sq(i - 1, m, k));
        }
      }
    }
    rate_integrand[i] = r;
    if (i > 0) h.Q2_final[i] = h.Q2_final[i - 1] + s;
  }
  h.Q2_rate_form = quad::cumulative_trapezoid(rate_integrand, sys.grid().dt());
  return h;
}

CoherenceOrder1 coherence_order1(const ValidatedSystem& sys, const AmplitudeSet& a, const ComplexMatrixSeries& rho1_op) {
  const std::size_t n = sys.grid().samples();
  const RealMatrixSeries en = level_energies(sys);
  CoherenceOrder1 c;
  c.q1.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.q1[i] = en.vec(i).dot(rho1_op[i].diagonal().real());
  c.w1 = scaled(quad::cumulative_trapezoid(drive_power(sys, rho1_op), sys.grid().dt()), -1.0);
  c.C1 = sum(c.q1, c.w1);

  const RealMatrixSeries g = first_order_levels(sys, a);
  c.C1_direct = stieltjes_sum(en, g);
  c.w1_levels = scaled(stieltjes_sum(g, en), -1.0);
  return c;
}

CoherenceOrder1 coherence_order1(const ValidatedSystem& sys, const AmplitudeSet& a) {
  return coherence_order1(sys, a, first_order_state(sys));
}

CoherenceOrder2 coherence_order2(const ValidatedSystem& sys, const AmplitudeSet& a) {
  const RealMatrixSeries en = level_energies(sys);
  CoherenceOrder2 c;
  c.C2 = stieltjes_sum(en, a.pn_tilde);
  c.q2 = dot_rows(en, a.pn_tilde);
  c.w2 = scaled(quad::cumulative_trapezoid(dot_rows(level_rates(sys), a.pn_tilde), sys.grid().dt()), -1.0);
  return c;
}

LedgerSeries first_law_ledger(LedgerComponents parts) {
  const std::size_t n = parts.times.size();
  auto check = [n](const ScalarSeries& s, const char* name) {
    if (s.size() != n) {
      throw Error(ErrorKind::GridMismatch, std::string(name) + " has " + std::to_string(s.size()) + " samples, expected " + std::to_string(n));
    }
  };
  const char* names[3] = {"0", "1", "2"};
  for (int k = 0; k < 3; ++k) {
    check(parts.W[k], (std::string("W") + names[k]).c_str());
    check(parts.Q[k], (std::string("Q") + names[k]).c_str());
    check(parts.C[k], (std::string("C") + names[k]).c_str());
  }
  check(parts.q1, "q1");
  check(parts.w1, "w1");
  check(parts.q2, "q2");
  check(parts.w2, "w2");

  LedgerSeries L;
  static_cast<LedgerComponents&>(L) = std::move(parts);
  for (int k = 0; k < 3; ++k) L.U[k] = sum(sum(L.W[k], L.Q[k]), L.C[k]);
  L.U_sum = sum(sum(L.U[0], L.U[1]), L.U[2]);
  L.W_eff[0] = L.W[0];
  L.Q_eff[0] = L.Q[0];
  L.W_eff[1] = sum(L.W[1], L.w1);
  L.Q_eff[1] = sum(L.Q[1], L.q1);
  L.W_eff[2] = sum(L.W[2], L.w2);
  L.Q_eff[2] = sum(L.Q[2], L.q2);
  return L;
}

LedgerSeries build_ledger(const ValidatedSystem& sys, const AmplitudeSet& a, Rho2Mode mode) {
  const DensityCorrections d = density_corrections(sys, a, mode);
  const ComplexMatrixSeries rho1_op = first_order_state(sys);
  const HeatOrders h = heat_orders(sys, d, a);
  CoherenceOrder1 c1 = coherence_order1(sys, a, rho1_op);
  CoherenceOrder2 c2 = coherence_order2(sys, a);

  LedgerComponents parts;
  parts.times = sys.grid().times();
  parts.mode = mode;
  parts.W = {work_order0(sys), work_order1(sys, rho1_op), work_order2(sys, a, d)};
  parts.Q = {h.Q0, h.Q1, h.Q2};
  parts.C = {zeros(sys), c1.C1, c2.C2};
  parts.q1 = std::move(c1.q1);
  parts.w1 = std::move(c1.w1);
  parts.q2 = std::move(c2.q2);
  parts.w2 = std::move(c2.w2);
  parts.C1_direct = std::move(c1.C1_direct);
  parts.w1_levels = std::move(c1.w1_levels);
  parts.Q2_final = h.Q2_final;
  parts.Q2_rate_form = h.Q2_rate_form;
  return first_law_ledger(std::move(parts));
}

LedgerSeries build_ledger(const ValidatedSystem& sys, Rho2Mode mode) {
  return build_ledger(sys, compute_amplitudes(sys), mode);
}

}  // namespace qtp
