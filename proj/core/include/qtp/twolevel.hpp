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

#include "qtp/core_model.hpp"

namespace qtp {

struct TwoLevelParams {
  double hbar = 1.0;
  double epsilon = 0.0;
  double omega = 0.0;
  double omega21 = 1.0;
  double e1 = 0.0;
  double e2 = 1.0;
  double rho1 = 1.0;
  double rho2 = 0.0;
  // Waives hbar*omega21 == e2 - e1 so levels can be rescaled for figure panels.
  bool free_energies = false;
};

// Throws InvalidArgument when populations do not sum to 1, e2 <= e1, or
// (unless free_energies) hbar*omega21 differs from e2 - e1.
void check_params(const TwoLevelParams& p);

// h0 = diag(e1, e2), rho0 = diag(rho1, rho2), off-diagonal harmonic coupling epsilon.
SystemSpec two_level_spec(const TwoLevelParams& p, const TimeGrid& grid);

// sin^2(delta t / 2) / (delta / 2)^2 with a series branch near delta t = 0.
double sinc_kernel(double delta, double t);
// d/dt of the kernel, 2 sin(delta t) / delta.
double sinc_kernel_rate(double delta, double t);

struct GoldenRuleReport {
  double t = 0.0;
  double window = 0.0;           // half-width of the detuning window, times t
  double kernel_integral = 0.0;  // int K(delta, t) d delta over the window
  double kernel_ratio = 0.0;     // kernel_integral / (2 pi t)
  double resonant_pk_over_t2 = 0.0;
  double expected_pk_over_t2 = 0.0;
  double resonant_rel_error = 0.0;
};

inline constexpr double kDefaultGoldenWindow = 200.0;

// (a) kernel integral over |delta| <= window / t against 2 pi t;
// (b) P_1(t)/t^2 at exact resonance from the amplitude engine against rho1 eps^2/hbar^2.
GoldenRuleReport golden_rule_checks(const TwoLevelParams& p, double t, double window = kDefaultGoldenWindow,
                                    std::size_t steps = 100000);

double kernel_window_integral(double t, double window);

struct ClosedForms {
  double W1 = 0.0, w1 = 0.0, U1 = 0.0;
  double Q2 = 0.0, q2 = 0.0, U2 = 0.0;
  double W2 = 0.0, w2 = 0.0, q1 = 0.0;
};

// Off-resonant two-level results. Throws ResonantInput when omega == omega21.
ClosedForms closed_forms(const TwoLevelParams& p, double t);

// omega -> omega21 limit of W1.
double resonant_w1(const TwoLevelParams& p, double t);

// Exact rotating-frame population of the upper level.
double rabi_upper_population(const TwoLevelParams& p, double t);

}  // namespace qtp
