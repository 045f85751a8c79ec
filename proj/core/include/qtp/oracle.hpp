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

#include <cstddef>
#include <functional>
#include <vector>

#include "qtp/core_model.hpp"
#include "qtp/types.hpp"

namespace qtp {

// Overlap below which a tracking step is refined, and then rejected.
inline constexpr double kMinTrackingOverlap = 0.9;
// Tracking subdivides a bad step into at most 2^kMaxRefineLevel pieces.
inline constexpr int kMaxRefineLevel = 6;

// Continuous eigen-trajectory: slot j follows one eigenvector through time.
// values are d x 1, vectors d x d (column j is slot j).
struct EigenTrack {
  RealMatrixSeries values;
  ComplexMatrixSeries vectors;
  double min_overlap = 1.0;
  std::size_t refined_steps = 0;
};

// Matrix at an off-grid time tau in (t_i, t_{i+1}), used only for refinement.
using OffGridSampler = std::function<CMatrix(std::size_t i, double tau)>;

EigenTrack track_eigensystem(const ComplexMatrixSeries& m, const std::vector<double>& times, const OffGridSampler& at);

// Schroedinger-picture trajectory in the energy representation of h0.
struct Trajectory {
  std::vector<double> times;
  double dt = 0.0;
  double hbar = 1.0;
  double energy_scale = 1.0;
  ComplexMatrixSeries rho;
  ComplexMatrixSeries hamiltonian;
  EigenTrack rho_track;
  EigenTrack h_track;
  // |<n(t)|k(t)>|^2, rows over H slots, columns over rho slots.
  RealMatrixSeries weights;
  double max_unitarity_defect = 0.0;
};

// Midpoint exponential stepper, u = exp(-i H(t + dt/2) dt / hbar).
Trajectory propagate_exact(const ValidatedSystem& sys);

ScalarSeries internal_energy(const Trajectory& traj);
// U(t) - U(0).
ScalarSeries internal_energy_change(const Trajectory& traj);

struct AlickiResult {
  ScalarSeries work;
  ScalarSeries heat;
  double max_residual = 0.0;  // max |W + Q - dU|
};
AlickiResult alicki_decomposition(const Trajectory& traj);

struct BertulioResult {
  ScalarSeries work;
  ScalarSeries heat;
  ScalarSeries coherence;
  double max_residual = 0.0;  // max |W + Q + C - dU|
};
BertulioResult bertulio_decomposition(const Trajectory& traj);

struct EntropyBasedResult {
  ScalarSeries work;
  ScalarSeries heat;
  double max_work_residual = 0.0;  // max |W_E - (W_B + C_B)|
  double max_heat_residual = 0.0;  // max |Q_E - Q_B|
};
EntropyBasedResult entropy_based_decomposition(const Trajectory& traj);

struct HeatCurrentSplit {
  ScalarSeries q_dot_energy;  // sum_n E_n d/dt sum_k rho_k |c_nk|^2
  ScalarSeries q_dot_pop;
  ScalarSeries q_dot_coh;
  ScalarSeries phi_pop;
  ScalarSeries phi_coh;
  double max_residual = 0.0;  // max |q_dot_energy - q_dot_pop - q_dot_coh|
};
HeatCurrentSplit heat_current_split(const Trajectory& traj, double temperature);

ScalarSeries von_neumann_entropy(const Trajectory& traj);

// <k|rho_I(t)|k> for the rho0 eigenbasis, the exact counterpart of
// rho_k^(0) + rho1_k + rho2_k.
RealMatrixSeries interaction_populations(const ValidatedSystem& sys, const Trajectory& traj);

}  // namespace qtp
