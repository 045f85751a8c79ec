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

#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "test_support.hpp"

namespace qtp {
namespace {

using testing::kTwoPi;
using testing::max_abs;

struct Conservation {
  double trace = 0.0, purity = 0.0, entropy = 0.0, hermiticity = 0.0;
};

Conservation drift(const Trajectory& tr) {
  Conservation c;
  const ScalarSeries S = von_neumann_entropy(tr);
  const double p0 = (tr.rho[0] * tr.rho[0]).trace().real();
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const auto r = tr.rho[i];
    c.trace = std::max(c.trace, std::abs(r.trace() - 1.0));
    c.purity = std::max(c.purity, std::abs((r * r).trace().real() - p0));
    c.entropy = std::max(c.entropy, std::abs(S[i] - S[0]));
    c.hermiticity = std::max(c.hermiticity, (r - r.adjoint()).cwiseAbs().maxCoeff());
  }
  return c;
}

TEST(Oracle, RabiPopulation) {
  const TwoLevelParams p = testing::two_level(0.05, 1.5);
  const Trajectory tr = propagate_exact(testing::two_level_system(p, kTwoPi, 100000));
  double err = 0.0;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    err = std::max(err, std::abs(tr.rho(i, 1, 1).real() - rabi_upper_population(p, tr.times[i])));
  }
  EXPECT_LT(err, 1e-8);
  EXPECT_NEAR(tr.rho(tr.times.size() - 1, 1, 1).real(), 0.22305459871105403, 1e-8);
  const Conservation c = drift(tr);
  EXPECT_LT(c.trace, 1e-9);
  EXPECT_LT(c.purity, 1e-9);
  EXPECT_LT(c.entropy, 1e-9);
  EXPECT_LT(tr.max_unitarity_defect, 1e-12);
}

TEST(Oracle, EntropyValues) {
  const Trajectory tr = propagate_exact(testing::two_level_system(testing::benchmark_params(), 5.0, 500));
  for (double s : von_neumann_entropy(tr)) EXPECT_NEAR(s, 0.50040242353818785, 1e-12);
  TwoLevelParams mixed = testing::benchmark_params();
  mixed.rho1 = mixed.rho2 = 0.5;
  for (double s : von_neumann_entropy(propagate_exact(testing::two_level_system(mixed, 5.0, 500)))) {
    EXPECT_NEAR(s, std::log(2.0), 1e-12);
  }
  TwoLevelParams pure = testing::benchmark_params();
  pure.rho1 = 1.0;
  pure.rho2 = 0.0;
  for (double s : von_neumann_entropy(propagate_exact(testing::two_level_system(pure, 5.0, 500)))) {
    EXPECT_NEAR(s, 0.0, 1e-12);
  }
}

TEST(Oracle, StaticAndUndrivenLimits) {
  SystemSpec s = two_level_spec(testing::benchmark_params(), TimeGrid(10.0, 1000));
  s.drive.coupling.setZero();
  const Trajectory tr = propagate_exact(validate_system(s));
  const AlickiResult A = alicki_decomposition(tr);
  EXPECT_LT(max_abs(A.work), 1e-15);
  EXPECT_LT(max_abs(A.heat), 1e-14);
  const HeatCurrentSplit H = heat_current_split(tr, 1.0);
  EXPECT_LT(max_abs(H.phi_pop), 1e-12);
  EXPECT_LT(max_abs(H.phi_coh), 1e-12);
  EXPECT_LT(max_abs(internal_energy_change(tr)), 1e-14);
}

TEST(Oracle, FrameworkEquivalencesOnRandomSystem) {
  for (Eigen::Index d : {3, 4}) {
    const ValidatedSystem sys = validate_system(testing::random_system(21, d, 6.0, 30000));
    const Trajectory tr = propagate_exact(sys);
    const double tol = 1e-6 * sys.energy_scale();
    EXPECT_LT(alicki_decomposition(tr).max_residual, tol);
    EXPECT_LT(bertulio_decomposition(tr).max_residual, tol);
    const EntropyBasedResult E = entropy_based_decomposition(tr);
    EXPECT_LT(E.max_work_residual, tol);
    EXPECT_LT(E.max_heat_residual, tol);
    EXPECT_LT(heat_current_split(tr, 0.7).max_residual, tol);
    const Conservation c = drift(tr);
    EXPECT_LT(c.trace, 1e-9);
    EXPECT_LT(c.purity, 1e-9);
    EXPECT_LT(c.entropy, 1e-9);
    EXPECT_LT(c.hermiticity, 1e-12);
  }
}

TEST(Oracle, HeatFluxScalesWithInverseTemperature) {
  const Trajectory tr = propagate_exact(validate_system(testing::random_system(4, 3, 4.0, 4000)));
  const HeatCurrentSplit a = heat_current_split(tr, 0.8);
  const HeatCurrentSplit b = heat_current_split(tr, 1.6);
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    EXPECT_EQ(b.phi_pop[i], 0.5 * a.phi_pop[i]);
    EXPECT_EQ(b.phi_coh[i], 0.5 * a.phi_coh[i]);
  }
  EXPECT_QTP_ERROR(heat_current_split(tr, 0.0), ErrorKind::NonPositiveTemperature, "temperature");
  EXPECT_QTP_ERROR(heat_current_split(tr, -1.0), ErrorKind::NonPositiveTemperature, "temperature");
}

TEST(Oracle, InteractionPopulationsStartAtRho0) {
  const ValidatedSystem sys = validate_system(testing::random_system(8, 4, 3.0, 3000));
  const RealMatrixSeries p = interaction_populations(sys, propagate_exact(sys));
  for (Eigen::Index k = 0; k < 4; ++k) EXPECT_NEAR(p(0, k), sys.rho0_populations()(k), 1e-14);
}

// Gain-loss second order leaves a fourth-order remainder: halving eps cuts it 16x.
TEST(Oracle, PerturbativeDensityRemainderIsFourthOrder) {
  auto remainder = [](double eps) {
    const ValidatedSystem sys = testing::two_level_system(testing::two_level(eps, 1.5), 10.0, 20000);
    const RealMatrixSeries exact = interaction_populations(sys, propagate_exact(sys));
    const RealMatrixSeries r2 = rho_second_order(sys, compute_amplitudes(sys), Rho2Mode::independent);
    double err = 0.0;
    for (std::size_t i = 0; i < exact.samples(); ++i) err = std::max(err, std::abs(exact(i, 1) - 0.2 - r2(i, 1)));
    return err;
  };
  const double ratio = remainder(0.02) / remainder(0.01);
  EXPECT_GT(ratio, 14.0);
  EXPECT_LT(ratio, 18.0);
}

// Two levels that cross exactly: sorted eigenvalues swap branches, tracked ones must not.
TEST(EigenTracking, FollowsCrossing) {
  const std::size_t n = 201;
  std::vector<double> times(n);
  ComplexMatrixSeries m(n, 2, 2);
  for (std::size_t i = 0; i < n; ++i) {
    times[i] = -1.0 + 0.01 * static_cast<double>(i);
    m(i, 0, 0) = times[i];
    m(i, 1, 1) = -times[i];
  }
  const auto at = [](std::size_t, double tau) {
    CMatrix h = CMatrix::Zero(2, 2);
    h(0, 0) = tau;
    h(1, 1) = -tau;
    return h;
  };
  const EigenTrack tr = track_eigensystem(m, times, at);
  const double first = tr.values(0, 0);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(tr.values(i, 0), first < 0 ? times[i] : -times[i], 1e-14);
  }
  EXPECT_GT(tr.min_overlap, 0.99);
}

TEST(EigenTracking, ContinuityLoss) {
  // A basis that jumps by 90 degrees between samples at any resolution.
  const std::size_t n = 11;
  std::vector<double> times(n);
  ComplexMatrixSeries m(n, 2, 2);
  auto h = [](double t) {
    CMatrix x = CMatrix::Zero(2, 2);
    if (t < 0.5) {
      x(0, 0) = 1.0;
      x(1, 1) = -1.0;
    } else {
      x(0, 1) = x(1, 0) = 1.0;
    }
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    times[i] = 0.1 * static_cast<double>(i) + 0.05;
    m[i] = h(times[i]);
  }
  EXPECT_QTP_ERROR(track_eigensystem(m, times, [&](std::size_t, double tau) { return h(tau); }), ErrorKind::ContinuityLoss,
                   "");
}

}  // namespace
}  // namespace qtp
