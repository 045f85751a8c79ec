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

TEST(TwoLevel, FrozenClosedForms) {
  const ClosedForms c = closed_forms(testing::benchmark_params(), kTwoPi);
  EXPECT_NEAR(c.W1, 0.74626164607505680, 1e-14);
  EXPECT_NEAR(c.w1, -0.5 * c.W1, 1e-15);
  EXPECT_NEAR(c.U1, 0.5 * c.W1, 1e-15);
  EXPECT_EQ(c.q1, 0.0);
  EXPECT_EQ(c.W2, 0.0);
  EXPECT_EQ(c.w2, 0.0);

  const ClosedForms s = closed_forms(testing::small_params(), kTwoPi);
  EXPECT_NEAR(s.Q2, -0.024, 1e-15);
  EXPECT_NEAR(s.q2, 0.032, 1e-15);
  EXPECT_NEAR(s.U2, 0.008, 1e-15);
}

TEST(TwoLevel, ResonantLimit) {
  const TwoLevelParams r = testing::two_level(0.3, 1.0);
  EXPECT_NEAR(resonant_w1(r, std::numbers::pi), -0.432, 1e-14);
  EXPECT_QTP_ERROR(closed_forms(r, 1.0), ErrorKind::ResonantInput, "");
  const TwoLevelParams near = testing::two_level(0.3, 1.0 + 1e-6);
  EXPECT_NEAR(closed_forms(near, std::numbers::pi).W1, -0.43200106591727536, 1e-9);
}

TEST(TwoLevel, EqualPopulations) {
  TwoLevelParams p = testing::small_params();
  p.rho1 = p.rho2 = 0.5;
  const ClosedForms c = closed_forms(p, 3.0);
  EXPECT_EQ(c.W1, 0.0);
  EXPECT_EQ(c.w1, 0.0);
  EXPECT_EQ(c.Q2, 0.0);
  EXPECT_NEAR(c.q2, 0.5 * (p.e1 + p.e2) * p.epsilon * p.epsilon * sinc_kernel(0.5, 3.0), 1e-16);
}

TEST(TwoLevel, Kernel) {
  EXPECT_DOUBLE_EQ(sinc_kernel(0.0, 3.0), 9.0);
  EXPECT_NEAR(sinc_kernel(1e-9, 3.0), 9.0, 1e-12);
  EXPECT_NEAR(sinc_kernel(0.5, kTwoPi), 16.0, 1e-12);
  const double h = 1e-6;
  EXPECT_NEAR(sinc_kernel_rate(0.7, 2.0), (sinc_kernel(0.7, 2.0 + h) - sinc_kernel(0.7, 2.0 - h)) / (2 * h), 1e-8);
}

// The 20/t window stated for the kernel check captures only 96.68 % of 2 pi t.
TEST(TwoLevel, KernelWindowWidths) {
  const double t = 100.0;
  EXPECT_NEAR(kernel_window_integral(t, 20.0) / (kTwoPi * t), 0.96679994613, 1e-9);
  EXPECT_NEAR(kernel_window_integral(t, 200.0) / (kTwoPi * t), 0.99683087553, 1e-9);
}

TEST(TwoLevel, GoldenRule) {
  const TwoLevelParams p = testing::two_level(0.05, 1.0);
  const GoldenRuleReport g = golden_rule_checks(p, 100.0);
  EXPECT_GE(g.kernel_ratio, 0.98);
  EXPECT_LE(g.kernel_ratio, 1.02);
  EXPECT_DOUBLE_EQ(g.expected_pk_over_t2, 0.002);
  EXPECT_LT(g.resonant_rel_error, 1e-6);
}

TEST(TwoLevel, RabiFrozen) {
  EXPECT_NEAR(rabi_upper_population(testing::two_level(0.05, 1.5), kTwoPi), 0.22305459871105403, 1e-15);
  EXPECT_EQ(rabi_upper_population(testing::benchmark_params(), 0.0), 0.2);
}

TEST(TwoLevel, Params) {
  TwoLevelParams p = testing::benchmark_params();
  p.rho1 = 0.7;
  EXPECT_QTP_ERROR(check_params(p), ErrorKind::InvalidArgument, "");
  p = testing::benchmark_params();
  p.e2 = 2.0;
  EXPECT_QTP_ERROR(check_params(p), ErrorKind::InvalidArgument, "");
  p.free_energies = true;
  EXPECT_NO_THROW(check_params(p));
}

TEST(TwoLevel, QuadratureMatchesClosedForms) {
  const TwoLevelParams p = testing::benchmark_params();
  const ValidatedSystem sys = testing::two_level_system(p, 20.0 * std::numbers::pi, 10000);
  const LedgerSeries L = build_ledger(sys, Rho2Mode::paper_printed);
  const auto& g = sys.grid();
  EXPECT_LT(testing::sup_relative_error(L.W[1], [&](double t) { return closed_forms(p, t).W1; }, g), 1e-5);
  EXPECT_LT(testing::sup_relative_error(L.Q[2], [&](double t) { return closed_forms(p, t).Q2; }, g), 1e-5);
  EXPECT_LT(testing::sup_relative_error(L.q2, [&](double t) { return closed_forms(p, t).q2; }, g), 1e-5);
  EXPECT_LT(testing::sup_relative_error(L.U[2], [&](double t) { return closed_forms(p, t).U2; }, g), 1e-5);
}

}  // namespace
}  // namespace qtp
