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

#include "qtp/dyson.hpp"

#include <cmath>
#include <string>

#include "qtp/error.hpp"
#include "qtp/quadrature.hpp"

namespace qtp {

namespace {

// Fastest phase drift of any coupled channel of V_I over the grid.
double max_channel_frequency(const ValidatedSystem& sys) {
  const Eigen::Index d = sys.dim();
  const DriveSpec& drive = sys.drive();
  const double t_max = sys.grid().t_max();
  const RVector E0 = sys.levels_at(0.0);
  const RVector E1 = sys.levels_at(t_max);
  double top = 0.0;
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index k = 0; k < n; ++k) {
      bool coupled = false;
      double w = 0.0;
      if (drive.kind == DriveKind::harmonic) {
        coupled = std::abs(drive.coupling(n, k)) > 0.0;
        w = drive.omega;
      } else {
        for (const auto& s : drive.samples) coupled = coupled || std::abs(s.value(n, k)) > 0.0;
      }
      if (!coupled) continue;
      // Bohr frequency moves linearly with the ramp, so the extremes are at the ends.
      const double a = (E0(n) - E0(k)) / sys.hbar() - w;
      const double b = (E1(n) - E1(k)) / sys.hbar() - w;
      top = std::max({top, std::abs(a), std::abs(b)});
    }
  }
  return top;
}

}  // namespace

std::string_view to_string(Rho2Mode mode) {
  return mode == Rho2Mode::paper_printed ? "paper_printed" : "independent";
}

double aliasing_phase_per_step(const ValidatedSystem& sys) { return sys.grid().dt() * max_channel_frequency(sys); }

CMatrix interaction_picture_drive(const ValidatedSystem& sys, double t) {
  CMatrix v = drive_value(sys.drive(), t);
  const RVector theta = sys.free_phase(t);
  const Eigen::Index d = sys.dim();
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r)
      if (r != c) v(r, c) *= std::polar(1.0, theta(r) - theta(c));
  return v;
}

AmplitudeSet first_order_amplitudes(const ValidatedSystem& sys) {
  const TimeGrid& g = sys.grid();
  const double guard = aliasing_phase_per_step(sys);
  if (guard > kAliasingGuard) {
    throw Error(ErrorKind::GridTooCoarse,
                "phase advance per step " + std::to_string(guard) + " rad exceeds " + std::to_string(kAliasingGuard),
                "grid/steps");
  }
  const Eigen::Index d = sys.dim();
  const std::size_t n = g.samples();
  const CMatrix& K = sys.k_basis();
  const double dt = g.dt();
  const cplx pre(0.0, -1.0 / sys.hbar());

  AmplitudeSet a;
  a.c0 = K;
  a.c1 = ComplexMatrixSeries(n, d, d);
  a.p1sq = RealMatrixSeries(n, d, d);
  CMatrix prev = interaction_picture_drive(sys, 0.0) * K;
  CMatrix acc = CMatrix::Zero(d, d);
  for (std::size_t i = 1; i < n; ++i) {
    CMatrix cur = interaction_picture_drive(sys, g.time(i)) * K;
    acc += (0.5 * dt) * (prev + cur);
    a.c1[i] = pre * acc;
    a.p1sq[i] = a.c1[i].cwiseAbs2();
    prev = std::move(cur);
  }
  return a;
}

AmplitudeSet transition_probabilities(AmplitudeSet a, const ValidatedSystem& sys) {
  const Eigen::Index d = sys.dim();
  const std::size_t n = a.p1sq.samples();
  const RVector& rho = sys.rho0_populations();
  a.pk = RealMatrixSeries(n, d);
  a.pn_tilde = RealMatrixSeries(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    auto p = a.p1sq[i];
    // P_k = rho_k sum_n |c_nk|^2, P~_n = sum_k rho_k |c_nk|^2
    a.pk[i] = (p.colwise().sum().transpose().array() * rho.array()).matrix();
    a.pn_tilde[i] = p * rho;
  }
  a.rates = quad::derivative(a.p1sq, sys.grid().dt());
  return a;
}

RealMatrixSeries rho_first_order(const ValidatedSystem& sys) {
  const TimeGrid& g = sys.grid();
  const Eigen::Index d = sys.dim();
  const std::size_t n = g.samples();
  const CMatrix& K = sys.k_basis();
  const CMatrix rho_k = sys.rho0_populations().cast<cplx>().asDiagonal();
  const cplx pre(0.0, -1.0 / sys.hbar());
  RealMatrixSeries integrand(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const CMatrix v = K.adjoint() * interaction_picture_drive(sys, g.time(i)) * K;
    const CMatrix comm = v * rho_k - rho_k * v;
    integrand[i] = (pre * comm.diagonal()).real();
  }
  return quad::cumulative_trapezoid(integrand, g.dt());
}

RealMatrixSeries rho_second_order(const ValidatedSystem& sys, const AmplitudeSet& a, Rho2Mode mode) {
  const Eigen::Index d = sys.dim();
  const std::size_t n = a.c1.samples();
  const RVector& rho = sys.rho0_populations();
  RealMatrixSeries out(n, d);
  if (mode == Rho2Mode::paper_printed) {
    RealMatrixSeries rate(n, d);
    for (std::size_t i = 0; i < n; ++i) {
      auto R = a.rates[i];
      for (Eigen::Index k = 0; k < d; ++k) {
        double s = 0.0;
        for (Eigen::Index m = 0; m < d; ++m) s += rho(k) * R(m, k) - rho(m) * R(k, m);
        rate(i, k) = s;
      }
    }
    return quad::cumulative_trapezoid(rate, sys.grid().dt());
  }
  const CMatrix& K = sys.k_basis();
  for (std::size_t i = 0; i < n; ++i) {
    // B[k'][k] = <k'|U1|k>
    const RMatrix b2 = (K.adjoint() * a.c1[i]).cwiseAbs2();
    const RVector gain = b2 * rho;
    const RVector loss = (b2.colwise().sum().transpose().array() * rho.array()).matrix();
    out[i] = gain - loss;
  }
  return out;
}

DensityCorrections density_corrections(const ValidatedSystem& sys, const AmplitudeSet& a, Rho2Mode mode) {
  return DensityCorrections{rho_first_order(sys), rho_second_order(sys, a, mode), mode};
}

}  // namespace qtp
