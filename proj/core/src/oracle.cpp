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

#include "qtp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "qtp/error.hpp"
#include "qtp/quadrature.hpp"

namespace qtp {

namespace {

struct Frame {
  RVector values;
  CMatrix vectors;
  double min_overlap = 1.0;
};

// Aligns a fresh eigensystem to the previous frame: greedy max-modulus
// assignment, orthogonal Procrustes inside (near-)degenerate clusters, then
// phases chosen so every matched overlap is real and positive.
Frame align(const CMatrix& prev, const RVector& vals, const CMatrix& vecs) {
  const Eigen::Index d = vals.size();
  const RMatrix mag = (prev.adjoint() * vecs).cwiseAbs();
  std::vector<Eigen::Index> slot_of(static_cast<std::size_t>(d), -1);
  std::vector<bool> slot_used(static_cast<std::size_t>(d), false);
  for (Eigen::Index it = 0; it < d; ++it) {
    double best = -1.0;
    Eigen::Index bj = 0, bm = 0;
    for (Eigen::Index m = 0; m < d; ++m) {
      if (slot_of[static_cast<std::size_t>(m)] >= 0) continue;
      for (Eigen::Index j = 0; j < d; ++j) {
        if (slot_used[static_cast<std::size_t>(j)]) continue;
        if (mag(j, m) > best) {
          best = mag(j, m);
          bj = j;
          bm = m;
        }
      }
    }
    slot_of[static_cast<std::size_t>(bm)] = bj;
    slot_used[static_cast<std::size_t>(bj)] = true;
  }

  Frame f;
  f.values.resize(d);
  f.vectors.resize(d, d);
  const double tol = 1e-9 * std::max(1.0, vals.cwiseAbs().maxCoeff());
  Eigen::Index b = 0;
  while (b < d) {
    Eigen::Index e = b + 1;
    while (e < d && vals(e) - vals(e - 1) <= tol) ++e;
    const Eigen::Index m = e - b;
    if (m == 1) {
      const Eigen::Index j = slot_of[static_cast<std::size_t>(b)];
      f.vectors.col(j) = vecs.col(b);
      f.values(j) = vals(b);
    } else {
      CMatrix P(d, m);
      for (Eigen::Index q = 0; q < m; ++q) P.col(q) = prev.col(slot_of[static_cast<std::size_t>(b + q)]);
      const CMatrix B = vecs.middleCols(b, m);
      Eigen::JacobiSVD<CMatrix> svd(B.adjoint() * P, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const CMatrix A = B * (svd.matrixU() * svd.matrixV().adjoint());
      const double mean = vals.segment(b, m).mean();
      for (Eigen::Index q = 0; q < m; ++q) {
        const Eigen::Index j = slot_of[static_cast<std::size_t>(b + q)];
        f.vectors.col(j) = A.col(q);
        f.values(j) = mean;
      }
    }
    b = e;
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    const cplx c = prev.col(j).dot(f.vectors.col(j));
    const double a = std::abs(c);
    if (a > 0.0) f.vectors.col(j) *= std::conj(c) / a;
    f.min_overlap = std::min(f.min_overlap, a);
  }
  return f;
}

Frame solve_and_align(const CMatrix& prev, const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  return align(prev, es.eigenvalues(), es.eigenvectors());
}

CMatrix step_propagator(const CMatrix& h, double dt, double hbar) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const CVector phases = (es.eigenvalues() * (-dt / hbar)).unaryExpr([](double x) { return std::polar(1.0, x); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

ScalarSeries diff(const ScalarSeries& a, double a0) {
  ScalarSeries out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - a0;
  return out;
}

// Per-sample tracked quantities in plain series form.
struct Tracked {
  RealMatrixSeries E;      // H slot values
  RealMatrixSeries rho;    // rho slot values
  RealMatrixSeries w;      // |c_nk|^2
  RealMatrixSeries dE, drho, dw;
};

Tracked tracked(const Trajectory& traj) {
  Tracked t{traj.h_track.values, traj.rho_track.values, traj.weights, {}, {}, {}};
  t.dE = quad::derivative(t.E, traj.dt);
  t.drho = quad::derivative(t.rho, traj.dt);
  t.dw = quad::derivative(t.w, traj.dt);
  return t;
}

}  // namespace

EigenTrack track_eigensystem(const ComplexMatrixSeries& m, const std::vector<double>& times, const OffGridSampler& at) {
  const std::size_t n = m.samples();
  const Eigen::Index d = m.rows();
  EigenTrack track;
  track.values = RealMatrixSeries(n, d);
  track.vectors = ComplexMatrixSeries(n, d, d);
  if (n == 0) return track;
  const Spectrum s0 = eigendecompose(CMatrix(m[0]));
  track.values[0] = s0.eigenvalues;
  track.vectors[0] = s0.eigenvectors;
  for (std::size_t i = 1; i < n; ++i) {
    const CMatrix prev = track.vectors[i - 1];
    Frame f = solve_and_align(prev, m[i]);
    if (f.min_overlap < kMinTrackingOverlap) {
      bool ok = false;
      for (int level = 1; level <= kMaxRefineLevel && !ok; ++level) {
        const int pieces = 1 << level;
        CMatrix cur = prev;
        double worst = 1.0;
        ok = true;
        for (int s = 1; s <= pieces; ++s) {
          const double tau = times[i - 1] + (times[i] - times[i - 1]) * s / pieces;
          const CMatrix target = s == pieces ? CMatrix(m[i]) : at(i - 1, tau);
          Frame g = solve_and_align(cur, target);
          if (g.min_overlap < kMinTrackingOverlap) {
            ok = false;
            break;
          }
          worst = std::min(worst, g.min_overlap);
          cur = g.vectors;
          if (s == pieces) {
            f = std::move(g);
            f.min_overlap = worst;
          }
        }
      }
      if (!ok) {
        throw Error(ErrorKind::ContinuityLoss,
                    "eigenvector matching failed near t = " + std::to_string(times[i]) + " after refinement");
      }
      ++track.refined_steps;
    }
    track.values[i] = f.values;
    track.vectors[i] = f.vectors;
    track.min_overlap = std::min(track.min_overlap, f.min_overlap);
  }
  return track;
}

Trajectory propagate_exact(const ValidatedSystem& sys) {
  const TimeGrid& g = sys.grid();
  const std::size_t n = g.samples();
  const Eigen::Index d = sys.dim();
  const double dt = g.dt();
  const double hbar = sys.hbar();

  Trajectory tr;
  tr.times = g.times();
  tr.dt = dt;
  tr.hbar = hbar;
  tr.energy_scale = sys.energy_scale();
  tr.rho = ComplexMatrixSeries(n, d, d);
  tr.hamiltonian = ComplexMatrixSeries(n, d, d);
  const CMatrix eye = CMatrix::Identity(d, d);

  CMatrix rho = sys.rho0_energy();
  for (std::size_t i = 0; i < n; ++i) {
    tr.rho[i] = rho;
    tr.hamiltonian[i] = sys.hamiltonian(g.time(i));
    if (i + 1 == n) break;
    const CMatrix u = step_propagator(sys.hamiltonian(g.time(i) + 0.5 * dt), dt, hbar);
    const double defect = (u.adjoint() * u - eye).cwiseAbs().maxCoeff();
    tr.max_unitarity_defect = std::max(tr.max_unitarity_defect, defect);
    if (defect >= 1e-12) {
      throw Error(ErrorKind::StepUnstable, "unitarity defect " + std::to_string(defect) + " at t = " + std::to_string(g.time(i)));
    }
    CMatrix next = u * rho * u.adjoint();
    rho = 0.5 * (next + next.adjoint());
  }

  tr.h_track = track_eigensystem(tr.hamiltonian, tr.times, [&](std::size_t, double tau) { return sys.hamiltonian(tau); });
  tr.rho_track = track_eigensystem(tr.rho, tr.times, [&](std::size_t i, double tau) {
    const double h = tau - tr.times[i];
    const CMatrix u = step_propagator(sys.hamiltonian(tr.times[i] + 0.5 * h), h, hbar);
    return CMatrix(u * tr.rho[i] * u.adjoint());
  });

  tr.weights = RealMatrixSeries(n, d, d);
  for (std::size_t i = 0; i < n; ++i) tr.weights[i] = (tr.h_track.vectors[i].adjoint() * tr.rho_track.vectors[i]).cwiseAbs2();
  return tr;
}

ScalarSeries internal_energy(const Trajectory& traj) {
  ScalarSeries u(traj.times.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = (traj.rho[i] * traj.hamiltonian[i]).trace().real();
  return u;
}

ScalarSeries internal_energy_change(const Trajectory& traj) {
  ScalarSeries u = internal_energy(traj);
  return u.empty() ? u : diff(u, u[0]);
}

AlickiResult alicki_decomposition(const Trajectory& traj) {
  const std::size_t n = traj.times.size();
  const ComplexMatrixSeries hdot = quad::derivative(traj.hamiltonian, traj.dt);
  const ComplexMatrixSeries rdot = quad::derivative(traj.rho, traj.dt);
  ScalarSeries pw(n), ph(n);
  for (std::size_t i = 0; i < n; ++i) {
    pw[i] = (traj.rho[i] * hdot[i]).trace().real();
    ph[i] = (rdot[i] * traj.hamiltonian[i]).trace().real();
  }
  AlickiResult r{quad::cumulative_trapezoid(pw, traj.dt), quad::cumulative_trapezoid(ph, traj.dt), 0.0};
  const ScalarSeries du = internal_energy_change(traj);
  for (std::size_t i = 0; i < n; ++i) r.max_residual = std::max(r.max_residual, std::abs(r.work[i] + r.heat[i] - du[i]));
  return r;
}

BertulioResult bertulio_decomposition(const Trajectory& traj) {
  const std::size_t n = traj.times.size();
  const Tracked t = tracked(traj);
  ScalarSeries pw(n), ph(n), pc(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto w = t.w[i];
    auto dw = t.dw[i];
    pw[i] = t.dE.vec(i).dot(w * t.rho.vec(i));
    ph[i] = t.E.vec(i).dot(w * t.drho.vec(i));
    pc[i] = t.E.vec(i).dot(dw * t.rho.vec(i));
  }
  BertulioResult r{quad::cumulative_trapezoid(pw, traj.dt), quad::cumulative_trapezoid(ph, traj.dt),
                   quad::cumulative_trapezoid(pc, traj.dt), 0.0};
  const ScalarSeries du = internal_energy_change(traj);
  for (std::size_t i = 0; i < n; ++i) {
    r.max_residual = std::max(r.max_residual, std::abs(r.work[i] + r.heat[i] + r.coherence[i] - du[i]));
  }
  return r;
}

EntropyBasedResult entropy_based_decomposition(const Trajectory& traj) {
  const std::size_t n = traj.times.size();
  const Tracked t = tracked(traj);
  // <k(t)|H(t)|k(t)> = sum_n E_n |c_nk|^2
  RealMatrixSeries ek(n, t.rho.rows());
  for (std::size_t i = 0; i < n; ++i) ek[i] = t.w[i].transpose() * t.E[i];
  const RealMatrixSeries dek = quad::derivative(ek, traj.dt);
  ScalarSeries pw(n), ph(n);
  for (std::size_t i = 0; i < n; ++i) {
    pw[i] = t.rho.vec(i).dot(dek.vec(i));
    ph[i] = t.drho.vec(i).dot(ek.vec(i));
  }
  EntropyBasedResult r{quad::cumulative_trapezoid(pw, traj.dt), quad::cumulative_trapezoid(ph, traj.dt), 0.0, 0.0};
  const BertulioResult b = bertulio_decomposition(traj);
  for (std::size_t i = 0; i < n; ++i) {
    r.max_work_residual = std::max(r.max_work_residual, std::abs(r.work[i] - b.work[i] - b.coherence[i]));
    r.max_heat_residual = std::max(r.max_heat_residual, std::abs(r.heat[i] - b.heat[i]));
  }
  return r;
}

HeatCurrentSplit heat_current_split(const Trajectory& traj, double temperature) {
  if (!(temperature > 0.0)) throw Error(ErrorKind::NonPositiveTemperature, "temperature must be positive", "temperature");
  const std::size_t n = traj.times.size();
  const Tracked t = tracked(traj);
  RealMatrixSeries pop(n, t.E.rows());
  for (std::size_t i = 0; i < n; ++i) pop[i] = t.w[i] * t.rho.vec(i);
  const RealMatrixSeries dpop = quad::derivative(pop, traj.dt);
  HeatCurrentSplit h;
  h.q_dot_energy.resize(n);
  h.q_dot_pop.resize(n);
  h.q_dot_coh.resize(n);
  h.phi_pop.resize(n);
  h.phi_coh.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    h.q_dot_energy[i] = t.E.vec(i).dot(dpop.vec(i));
    h.q_dot_pop[i] = t.E.vec(i).dot(t.w[i] * t.drho.vec(i));
    h.q_dot_coh[i] = t.E.vec(i).dot(t.dw[i] * t.rho.vec(i));
    h.phi_pop[i] = -h.q_dot_pop[i] / temperature;
    h.phi_coh[i] = -h.q_dot_coh[i] / temperature;
    h.max_residual = std::max(h.max_residual, std::abs(h.q_dot_energy[i] - h.q_dot_pop[i] - h.q_dot_coh[i]));
  }
  return h;
}

ScalarSeries von_neumann_entropy(const Trajectory& traj) {
  const RealMatrixSeries& p = traj.rho_track.values;
  ScalarSeries s(p.samples(), 0.0);
  for (std::size_t i = 0; i < p.samples(); ++i) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < p.rows(); ++k) {
      const double x = p(i, k);
      if (x > 0.0) acc -= x * std::log(x);
    }
    s[i] = acc;
  }
  return s;
}

RealMatrixSeries interaction_populations(const ValidatedSystem& sys, const Trajectory& traj) {
  const std::size_t n = traj.times.size();
  const Eigen::Index d = sys.dim();
  const CMatrix& K = sys.k_basis();
  RealMatrixSeries out(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const RVector theta = sys.free_phase(traj.times[i]);
    CMatrix r = traj.rho[i];
    for (Eigen::Index c = 0; c < d; ++c)
      for (Eigen::Index q = 0; q < d; ++q) r(q, c) *= std::polar(1.0, theta(q) - theta(c));
    out[i] = (K.adjoint() * r * K).diagonal().real();
  }
  return out;
}

}  // namespace qtp
