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

#include <array>
#include <vector>

#include "qtp/core_model.hpp"
#include "qtp/dyson.hpp"
#include "qtp/types.hpp"

namespace qtp {

// First-order correction to the state, -(i/hbar) cumtrapz([V_I, rho0]), as
// a d x d operator series in the energy representation (interaction picture).
ComplexMatrixSeries first_order_state(const ValidatedSystem& sys);

// sum_n [E_n(t) - E_n(0)] <n|rho0|n> over the scheduled static levels.
ScalarSeries work_order0(const ValidatedSystem& sys);

// -(2i/hbar) double integral of tr([V_I(t''), rho0] Hdot(t')).
ScalarSeries work_order1(const ValidatedSystem& sys);
ScalarSeries work_order1(const ValidatedSystem& sys, const ComplexMatrixSeries& rho1_op);

// paper_printed: int sum_k <k|Hdot|k> P_k.
// independent: int [sum_k <k|Hdot|k> rho2_k + sum_n <n|Hdot|n> P~_n].
ScalarSeries work_order2(const ValidatedSystem& sys, const AmplitudeSet& a, const DensityCorrections& d);

struct HeatOrders {
  ScalarSeries Q0;
  ScalarSeries Q1;
  // Stieltjes sum of <k|H|k> against rho2_k of the given mode.
  ScalarSeries Q2;
  // sum rho_k int (E_k - E_n) d|c1_nk|^2, as a Stieltjes sum and as a
  // trapezoid over the finite-difference rates.
  ScalarSeries Q2_final;
  ScalarSeries Q2_rate_form;
};

HeatOrders heat_orders(const ValidatedSystem& sys, const DensityCorrections& d, const AmplitudeSet& a);

struct CoherenceOrder1 {
  // C1 = q1 + w1 where w1 carries the full Hdot; this is the bookkeeping the
  // first-order ledger uses.
  ScalarSeries C1;
  ScalarSeries q1;
  ScalarSeries w1;
  // int sum_n E_n d rho1_nn taken literally from the amplitudes, and its
  // integration-by-parts partner -int sum_n Edot_n rho1_nn. They satisfy
  // C1_direct = q1 + w1_levels.
  ScalarSeries C1_direct;
  ScalarSeries w1_levels;
};

CoherenceOrder1 coherence_order1(const ValidatedSystem& sys, const AmplitudeSet& a);
CoherenceOrder1 coherence_order1(const ValidatedSystem& sys, const AmplitudeSet& a, const ComplexMatrixSeries& rho1_op);

struct CoherenceOrder2 {
  ScalarSeries C2;
  ScalarSeries q2;
  ScalarSeries w2;
};

CoherenceOrder2 coherence_order2(const ValidatedSystem& sys, const AmplitudeSet& a);

struct LedgerComponents {
  std::vector<double> times;
  Rho2Mode mode = Rho2Mode::paper_printed;
  std::array<ScalarSeries, 3> W;
  std::array<ScalarSeries, 3> Q;
  std::array<ScalarSeries, 3> C;
  ScalarSeries q1, w1, q2, w2;
  ScalarSeries C1_direct, w1_levels, Q2_final, Q2_rate_form;
};

struct LedgerSeries : LedgerComponents {
  std::array<ScalarSeries, 3> U;
  ScalarSeries U_sum;
  // W[n] + w[n] and Q[n] + q[n]; order 0 has no coherent split.
  std::array<ScalarSeries, 3> W_eff;
  std::array<ScalarSeries, 3> Q_eff;
};

LedgerSeries first_law_ledger(LedgerComponents parts);

LedgerSeries build_ledger(const ValidatedSystem& sys, const AmplitudeSet& a, Rho2Mode mode);
LedgerSeries build_ledger(const ValidatedSystem& sys, Rho2Mode mode);

}  // namespace qtp
