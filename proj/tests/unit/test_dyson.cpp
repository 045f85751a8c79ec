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

// eps = 0.05, detuning 0.5, t = 2 pi: |c1|^2 = eps^2 sin^2(pi/2) / 0.25^2 = 0.04.
class SmallBenchmark : public ::testing::Test {
 protected:
  SmallBenchmark() : sys(testing::two_level_system(testing::small_params(), kTwoPi, 100000)), a(compute_amplitudes(sys)) {}
  ValidatedSystem sys;
  AmplitudeSet a;
};

TEST_F(SmallBenchmark, TransitionProbability) {
  const std::size_t end = sys.grid().steps();
  EXPECT_NEAR(a.p1sq(end, 1, 0), 0.04, 1e-8);
  EXPECT_NEAR(a.p1sq(end, 0, 1), 0.04, 1e-8);
  EXPECT_EQ(a.p1sq(end, 0, 0), 0.0);
  EXPECT_NEAR(a.pk(end, 0), 0.8 * 0.04, 1e-9);
  EXPECT_NEAR(a.pn_tilde(end, 1), 0.8 * 0.04, 1e-9);
}

TEST_F(SmallBenchmark, SecondOrderPopulations) {
  const std::size_t end = sys.grid().steps();
  const RealMatrixSeries ind = rho_second_order(sys, a, Rho2Mode::independent);
  EXPECT_NEAR(ind(end, 0), -0.024, 1e-8);
  EXPECT_NEAR(ind(end, 1), 0.024, 1e-8);
  // The literal rate equation has the opposite sign on this benchmark.
  const RealMatrixSeries pp = rho_second_order(sys, a, Rho2Mode::paper_printed);
  EXPECT_NEAR(pp(end, 0), 0.024, 1e-8);
  EXPECT_NEAR(pp(end, 1), -0.024, 1e-8);
  for (std::size_t i = 0; i < sys.grid().samples(); i += 997) {
    EXPECT_NEAR(ind(i, 0) + ind(i, 1), 0.0, 1e-15);
    EXPECT_NEAR(pp(i, 0) + pp(i, 1), 0.0, 1e-12);
  }
}

TEST_F(SmallBenchmark, FirstOrderPopulationsVanish) {
  const RealMatrixSeries r1 = rho_first_order(sys);
  for (double v : r1.flat()) EXPECT_EQ(v, 0.0);
}

TEST_F(SmallBenchmark, RatesAreDerivatives) {
  const std::size_t i = sys.grid().steps() / 3;
  const double dt = sys.grid().dt();
  EXPECT_NEAR(a.rates(i, 1, 0), (a.p1sq(i + 1, 1, 0) - a.p1sq(i - 1, 1, 0)) / (2 * dt), 1e-15);
}

TEST(Dyson, InteractionPictureAtZero) {
  const ValidatedSystem sys = testing::two_level_system(testing::benchmark_params(), 10.0, 1000);
  const CMatrix v = interaction_picture_drive(sys, 0.0);
  EXPECT_EQ(v(1, 0), cplx(0.3));
  EXPECT_EQ(v(0, 1), cplx(0.3));
  // Detuning 0.2: V_I[1][0] = eps e^{-i 0.2 t}.
  const CMatrix w = interaction_picture_drive(sys, 2.0);
  EXPECT_NEAR(std::abs(w(1, 0) - 0.3 * std::exp(cplx(0.0, -0.4))), 0.0, 1e-15);
}

TEST(Dyson, GridTooCoarse) {
  const ValidatedSystem sys = testing::two_level_system(testing::two_level(0.1, 30.0), 100.0, 1000);
  EXPECT_QTP_ERROR(first_order_amplitudes(sys), ErrorKind::GridTooCoarse, "grid/steps");
}

TEST(Dyson, AmplitudesScaleWithCoupling) {
  const SystemSpec s1 = testing::random_system(2, 4, 6.0, 6000, 0.1);
  SystemSpec s2 = s1;
  s2.drive.coupling *= 3.0;
  const AmplitudeSet a1 = compute_amplitudes(validate_system(s1));
  const AmplitudeSet a2 = compute_amplitudes(validate_system(s2));
  double m = 0.0, n = 0.0;
  for (std::size_t i = 0; i < a1.p1sq.flat().size(); ++i) {
    m = std::max(m, std::abs(a2.p1sq.flat()[i] - 9.0 * a1.p1sq.flat()[i]));
    n = std::max(n, std::abs(a1.p1sq.flat()[i]));
  }
  EXPECT_LT(m, 1e-13 * n);
  for (std::size_t i = 0; i < a1.c1.flat().size(); ++i) EXPECT_LT(std::abs(a2.c1.flat()[i] - 3.0 * a1.c1.flat()[i]), 1e-14);
}

// A phase on each coupling channel is a gauge choice for diagonal rho0; no
// population, probability or second-order density may move.
TEST(Dyson, ChannelPhasesDoNotMatter) {
  SystemSpec s1 = testing::random_system(9, 3, 6.0, 6000, 0.1);
  s1.rho0_basis = Rho0Basis::energy;
  s1.rho0_basis_vectors = CMatrix();
  s1.h0 = HermitianMatrix::diagonal(std::vector<double>{0.0, 0.7, 1.9});
  s1.rho0 = HermitianMatrix::diagonal(std::vector<double>{0.5, 0.3, 0.2});
  SystemSpec s2 = s1;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (Eigen::Index r = 1; r < 3; ++r) {
    for (Eigen::Index c = 0; c < r; ++c) {
      s2.drive.coupling(r, c) *= std::polar(1.0, u(rng));
      s2.drive.coupling(c, r) = std::conj(s2.drive.coupling(r, c));
    }
  }
  const ValidatedSystem v1 = validate_system(s1), v2 = validate_system(s2);
  const AmplitudeSet a1 = compute_amplitudes(v1), a2 = compute_amplitudes(v2);
  for (Rho2Mode mode : {Rho2Mode::paper_printed, Rho2Mode::independent}) {
    const RealMatrixSeries r1 = rho_second_order(v1, a1, mode), r2 = rho_second_order(v2, a2, mode);
    for (std::size_t i = 0; i < r1.flat().size(); ++i) EXPECT_NEAR(r1.flat()[i], r2.flat()[i], 1e-14);
  }
  for (std::size_t i = 0; i < a1.p1sq.flat().size(); ++i) EXPECT_NEAR(a1.p1sq.flat()[i], a2.p1sq.flat()[i], 1e-14);
}

// hbar -> 2 hbar with every energy doubled leaves the dynamics unchanged.
TEST(Dyson, HbarScalingAudit) {
  TwoLevelParams p = testing::small_params();
  const AmplitudeSet a1 = compute_amplitudes(testing::two_level_system(p, kTwoPi, 20000));
  p.hbar = 2.0;
  p.epsilon *= 2.0;
  p.e2 = 2.0;
  const AmplitudeSet a2 = compute_amplitudes(testing::two_level_system(p, kTwoPi, 20000));
  for (std::size_t i = 0; i < a1.p1sq.flat().size(); ++i) EXPECT_NEAR(a1.p1sq.flat()[i], a2.p1sq.flat()[i], 1e-14);
}

TEST(Dyson, ModeNames) {
  EXPECT_EQ(to_string(Rho2Mode::paper_printed), "paper_printed");
  EXPECT_EQ(to_string(Rho2Mode::independent), "independent");
}

}  // namespace
}  // namespace qtp
