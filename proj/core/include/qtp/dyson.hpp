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

#include <string_view>

#include "qtp/core_model.hpp"
#include "qtp/types.hpp"

namespace qtp {

// Largest admissible phase advance per step of an interaction-picture channel.
inline constexpr double kAliasingGuard = 0.1;

// Amplitudes are indexed [n][k]: n an energy level, k a state of the rho0
// eigenbasis. p1sq and rates are d x d; pk and pn_tilde are d x 1.
struct AmplitudeSet {
  CMatrix c0;
  ComplexMatrixSeries c1;
  RealMatrixSeries p1sq;
  RealMatrixSeries pk;
  RealMatrixSeries pn_tilde;
  RealMatrixSeries rates;
};

enum class Rho2Mode { paper_printed, independent };

// d x 1 series indexed by k.
struct DensityCorrections {
  RealMatrixSeries rho1;
  RealMatrixSeries rho2;
  Rho2Mode mode = Rho2Mode::paper_printed;
};

// V_I[n][k] = exp(i (theta_n - theta_k)) V[n][k] in the energy basis.
CMatrix interaction_picture_drive(const ValidatedSystem& sys, double t);

// dt times the fastest phase drift of any coupled channel of V_I.
double aliasing_phase_per_step(const ValidatedSystem& sys);

// Fills c0, c1 and p1sq. c1 = -(i/hbar) cumtrapz(<n|V_I|k>).
AmplitudeSet first_order_amplitudes(const ValidatedSystem& sys);

// Fills pk, pn_tilde and rates (finite differences of p1sq) from c1.
AmplitudeSet transition_probabilities(AmplitudeSet a, const ValidatedSystem& sys);

inline AmplitudeSet compute_amplitudes(const ValidatedSystem& sys) {
  return transition_probabilities(first_order_amplitudes(sys), sys);
}

// rho1_k = -(i/hbar) cumtrapz(<k|[V_I, rho0]|k>).
RealMatrixSeries rho_first_order(const ValidatedSystem& sys);

// paper_printed integrates the rate equation as literally indexed,
//   d rho2_k/dt = sum_n rho_k R[n][k] - sum_n rho_n R[k][n]
// with R taken from the amplitude table as [n][k]. independent uses the
// gain-loss form on <k'|U1|k> amplitudes.
RealMatrixSeries rho_second_order(const ValidatedSystem& sys, const AmplitudeSet& a, Rho2Mode mode);

DensityCorrections density_corrections(const ValidatedSystem& sys, const AmplitudeSet& a, Rho2Mode mode);

std::string_view to_string(Rho2Mode mode);

}  // namespace qtp
