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

#include "qtp/twolevel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qtp/dyson.hpp"
#include "qtp/error.hpp"

namespace qtp {

void check_params(const TwoLevelParams& p) {
  if (!(p.hbar > 0.0)) throw Error(ErrorKind::InvalidArgument, "hbar must be positive");
  if (std::abs(p.rho1 + p.rho2 - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "rho1 + rho2 must be 1");
  if (!(p.e2 > p.e1)) throw Error(ErrorKind::InvalidArgument, "e2 must exceed e1");
  if (!p.free_energies && std::abs(p.hbar * p.omega21 - (p.e2 - p.e1)) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "hbar*omega21 must equal e2 - e1");
  }
}

SystemSpec two_level_spec(const TwoLevelParams& p, const TimeGrid& grid) {
  const double levels[2] = {p.e1, p.e2};
  const double pops[2] = {p.rho1, p.rho2};
  CMatrix v = CMatrix::Zero(2, 2);
  v(1, 0) = p.epsilon;
  v(0, 1) = p.epsilon;
  return SystemSpec{p.hbar, HermitianMatrix::diagonal(levels), HermitianMatrix::diagonal(pops),
                    DriveSpec::harmonic(v, p.omega), grid,
                    Rho0Basis::energy, CMatrix(), RVector()};
}

double sinc_kernel(double delta, double t) {
  const double x = delta * t;
  if (std::abs(x) < 1e-6) return t * t * (1.0 - x * x / 12.0);
  const double s = std::sin(0.5 * x);
  return s * s / (0.25 * delta * delta);
}

double sinc_kernel_rate(double delta, double t) {
  const double x = delta * t;
  if (std::abs(x) < 1e-6) return 2.0 * t * (1.0 - x * x / 6.0);
  return 2.0 * std::sin(x) / delta;
}

double kernel_window_integral(double t, double window) {
  // Composite Simpson on [0, window/t], doubled by symmetry; ~200 nodes per
  // kernel oscillation.
  const double b = window / t;
  const std::size_t n = 2 * static_cast<std::size_t>(std::ceil(100.0 * window));
  const double h = b / static_cast<double>(n);
  double s = sinc_kernel(0.0, t) + sinc_kernel(b, t);
  for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * sinc_kernel(h * static_cast<double>(i), t);
  return 2.0 * s * h / 3.0;
}

GoldenRuleReport golden_rule_checks(const TwoLevelParams& p, double t, double window, std::size_t steps) {
  check_params(p);
  GoldenRuleReport r;
  r.t = t;
  r.window = window;
  r.kernel_integral = kernel_window_integral(t, window);
  r.kernel_ratio = r.kernel_integral / (2.0 * std::numbers::pi * t);

  TwoLevelParams res = p;
  res.omega = p.omega21;
  const ValidatedSystem sys = validate_system(two_level_spec(res, TimeGrid(t, steps)));
  const AmplitudeSet a = compute_amplitudes(sys);
  r.resonant_pk_over_t2 = a.pk(a.pk.samples() - 1, 0) / (t * t);
  r.expected_pk_over_t2 = p.rho1 * p.epsilon * p.epsilon / (p.hbar * p.hbar);
  r.resonant_rel_error = r.expected_pk_over_t2 == 0.0
                             ? std::abs(r.resonant_pk_over_t2)
                             : std::abs(r.resonant_pk_over_t2 / r.expected_pk_over_t2 - 1.0);
  return r;
}

ClosedForms closed_forms(const TwoLevelParams& p, double t) {
  check_params(p);
  const double delta = p.omega - p.omega21;
  if (std::abs(delta) <= 1e-12 * std::max(std::abs(p.omega), std::abs(p.omega21))) {
    throw Error(ErrorKind::ResonantInput, "omega equals omega21; use resonant_w1");
  }
  const double g = p.epsilon * p.epsilon / (p.hbar * p.hbar);
  const double K = sinc_kernel(delta, t);
  ClosedForms c;
  const double pre = 4.0 * p.epsilon * p.epsilon * p.omega * (p.rho1 - p.rho2) / (p.hbar * delta);
  c.W1 = pre * ((1.0 - std::cos(p.omega * t)) / p.omega - (1.0 - std::cos(p.omega21 * t)) / p.omega21);
  c.w1 = -0.5 * c.W1;
  c.U1 = 0.5 * c.W1;
  c.Q2 = (p.e2 - p.e1) * g * (p.rho2 - p.rho1) * K;
  c.q2 = (p.rho1 * p.e2 + p.rho2 * p.e1) * g * K;
  c.U2 = (p.rho1 * p.e1 + p.rho2 * p.e2) * g * K;
  const double gap = std::abs(c.Q2 + c.q2 - c.U2);
  if (gap > 1e-13 * (std::abs(c.Q2) + std::abs(c.q2) + std::abs(c.U2))) {
    throw std::logic_error("closed forms: Q2 + q2 != U2");
  }
  if (c.U1 != -c.w1) throw std::logic_error("closed forms: U1 != -w1");
  return c;
}

double resonant_w1(const TwoLevelParams& p, double t) {
  check_params(p);
  const double w = p.omega21;
  return (4.0 * p.epsilon * p.epsilon * w * (p.rho1 - p.rho2) / p.hbar) *
         (t * std::sin(w * t) / w - (1.0 - std::cos(w * t)) / (w * w));
}

double rabi_upper_population(const TwoLevelParams& p, double t) {
  const double delta = p.omega - (p.e2 - p.e1) / p.hbar;
  const double g2 = p.epsilon * p.epsilon / (p.hbar * p.hbar);
  const double om2 = 0.25 * delta * delta + g2;
  if (om2 == 0.0) return p.rho2;
  const double s = std::sin(std::sqrt(om2) * t);
  return p.rho2 + (p.rho1 - p.rho2) * g2 / om2 * s * s;
}

}  // namespace qtp
