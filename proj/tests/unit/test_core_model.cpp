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

TEST(HermitianMatrix, RejectsBadInput) {
  CMatrix m(2, 2);
  m << 0.0, cplx(1.0, 1.0), cplx(1.0, 1.0), 1.0;
  EXPECT_QTP_ERROR(HermitianMatrix{m}, ErrorKind::NonHermitian, "");
  EXPECT_QTP_ERROR(HermitianMatrix{CMatrix::Zero(1, 1)}, ErrorKind::InvalidArgument, "");
  EXPECT_QTP_ERROR(HermitianMatrix{CMatrix::Zero(65, 65)}, ErrorKind::InvalidArgument, "");
  EXPECT_QTP_ERROR(HermitianMatrix{CMatrix::Zero(2, 3)}, ErrorKind::InvalidArgument, "");
  CMatrix n = CMatrix::Zero(2, 2);
  n(0, 0) = std::nan("");
  EXPECT_QTP_ERROR(HermitianMatrix{n}, ErrorKind::InvalidArgument, "");
}

TEST(HermitianMatrix, ToleratesRoundoff) {
  CMatrix m(2, 2);
  m << 0.0, cplx(0.5, 1e-14), cplx(0.5, 0.0), 1.0;
  EXPECT_NO_THROW(HermitianMatrix{m});
}

TEST(Eigendecompose, RandomHermitianProperties) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index d = 2 + trial % 7;
    const CMatrix h = testing::random_hermitian(rng, d, 1.0 + trial);
    const Spectrum s = eigendecompose(HermitianMatrix(h));
    const double scale = std::max(1.0, s.eigenvalues.cwiseAbs().maxCoeff());
    const CMatrix& v = s.eigenvectors;
    EXPECT_LT((v * s.eigenvalues.cast<cplx>().asDiagonal() * v.adjoint() - h).cwiseAbs().maxCoeff(), 1e-11 * scale);
    EXPECT_LT((v.adjoint() * v - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-12);
    for (Eigen::Index j = 1; j < d; ++j) EXPECT_LE(s.eigenvalues(j - 1), s.eigenvalues(j));
    for (Eigen::Index j = 0; j < d; ++j) {
      Eigen::Index r;
      v.col(j).cwiseAbs().maxCoeff(&r);
      EXPECT_GT(v(r, j).real(), 0.0);
      EXPECT_EQ(v(r, j).imag(), 0.0);
    }
    const Spectrum again = eigendecompose(HermitianMatrix(h));
    EXPECT_EQ(again.eigenvectors, s.eigenvectors);
    EXPECT_EQ(again.eigenvalues, s.eigenvalues);
  }
}

TEST(Eigendecompose, DiagonalInputIsSortedExactly) {
  const std::vector<double> e{2.0, -1.0, 0.5};
  const Spectrum s = eigendecompose(HermitianMatrix::diagonal(e));
  EXPECT_EQ(s.eigenvalues(0), -1.0);
  EXPECT_EQ(s.eigenvalues(1), 0.5);
  EXPECT_EQ(s.eigenvalues(2), 2.0);
  EXPECT_EQ(s.eigenvectors(1, 0), cplx(1.0));
  EXPECT_EQ(s.eigenvectors(2, 1), cplx(1.0));
  EXPECT_EQ(s.eigenvectors(0, 2), cplx(1.0));
}

TEST(Eigendecompose, DegenerateBlockIsCanonical) {
  std::mt19937_64 rng(5);
  const CMatrix u = testing::random_unitary(rng, 4);
  RVector e(4);
  e << 1.0, 1.0, 1.0, 3.0;
  const CMatrix h = u * e.cast<cplx>().asDiagonal() * u.adjoint();
  const Spectrum s = eigendecompose(CMatrix(0.5 * (h + h.adjoint())));
  EXPECT_EQ(degenerate_blocks(s.eigenvalues).size(), 2u);
  // Same eigenspace through a different rotation inside the block.
  CMatrix w = CMatrix::Identity(4, 4);
  w.topLeftCorner(3, 3) = testing::random_unitary(rng, 3);
  const CMatrix u2 = u * w;
  const CMatrix h2 = u2 * e.cast<cplx>().asDiagonal() * u2.adjoint();
  const Spectrum s2 = eigendecompose(CMatrix(0.5 * (h2 + h2.adjoint())));
  EXPECT_LT((s.eigenvectors - s2.eigenvectors).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(DegenerateBlocks, GroupsEqualValues) {
  RVector e(5);
  e << 0.0, 0.0, 1.0, 2.0, 2.0 + 1e-13;
  const auto b = degenerate_blocks(e);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0], std::make_pair(Eigen::Index{0}, Eigen::Index{2}));
  EXPECT_EQ(b[2], std::make_pair(Eigen::Index{3}, Eigen::Index{5}));
}

TEST(TimeGrid, Basics) {
  const TimeGrid g(2.0, 4);
  EXPECT_EQ(g.samples(), 5u);
  EXPECT_DOUBLE_EQ(g.dt(), 0.5);
  EXPECT_DOUBLE_EQ(g.times().back(), 2.0);
  EXPECT_QTP_ERROR(TimeGrid(1.0, 1), ErrorKind::InvalidArgument, "");
  EXPECT_QTP_ERROR(TimeGrid(0.0, 10), ErrorKind::InvalidArgument, "");
}

TEST(Drive, HarmonicAtZeroIsCoupling) {
  const ValidatedSystem sys = testing::two_level_system(testing::benchmark_params(), 10.0, 1000);
  const CMatrix v = drive_value(sys.drive(), 0.0);
  EXPECT_EQ(v(0, 1), cplx(0.3));
  EXPECT_EQ(v(1, 0), cplx(0.3));
  EXPECT_EQ(v(0, 0), cplx(0.0));
}

TEST(Drive, HarmonicPhaseConvention) {
  CMatrix c(2, 2);
  c << 0.1, cplx(0.2, -0.1), cplx(0.2, 0.1), -0.3;
  const DriveSpec d = DriveSpec::harmonic(c, 0.7);
  const double t = 1.3;
  const CMatrix v = drive_value(d, t);
  EXPECT_NEAR(std::abs(v(1, 0) - c(1, 0) * std::exp(cplx(0.0, -0.7 * t))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v(0, 1) - std::conj(v(1, 0))), 0.0, 1e-15);
  EXPECT_EQ(v(0, 0), cplx(0.1));
  const double h = 1e-5;
  const CMatrix fd = (drive_value(d, t + h) - drive_value(d, t - h)) / (2 * h);
  EXPECT_LT((fd - drive_rate(d, t)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_DOUBLE_EQ(drive_amplitude(d), 0.3);
}

TEST(Drive, SampledInterpolatesLinearly) {
  CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(2, 2);
  b(0, 1) = b(1, 0) = 1.0;
  const DriveSpec d = DriveSpec::sampled({{0.0, a}, {2.0, b}});
  EXPECT_NEAR(drive_value(d, 0.5)(0, 1).real(), 0.25, 1e-15);
  EXPECT_NEAR(drive_rate(d, 0.5)(1, 0).real(), 0.5, 1e-15);
  EXPECT_QTP_ERROR(drive_value(d, 2.5), ErrorKind::OutOfTable, "");
}

TEST(ValidateSystem, CaptionSystem) {
  const ValidatedSystem sys = testing::two_level_system(testing::benchmark_params(), kTwoPi, 1000);
  EXPECT_DOUBLE_EQ(sys.bohr_frequencies()(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(sys.energy_scale(), 1.0);
  EXPECT_DOUBLE_EQ(sys.rho0_populations()(0), 0.8);
  EXPECT_TRUE(sys.static_levels());
  EXPECT_EQ(validate_system(sys), sys);
}

SystemSpec base_spec() { return two_level_spec(testing::benchmark_params(), TimeGrid(10.0, 1000)); }

TEST(ValidateSystem, KeyPaths) {
  SystemSpec s = base_spec();
  s.hbar = 0.0;
  EXPECT_QTP_ERROR(validate_system(s), ErrorKind::InvalidArgument, "hbar");

  s = base_spec();
  s.rho0 = HermitianMatrix::diagonal(std::vector<double>{0.7, 0.2});
  EXPECT_QTP_ERROR(validate_system(s), ErrorKind::NotDensityMatrix, "rho0");

  s = base_spec();
  s.rho0 = HermitianMatrix::diagonal(std::vector<double>{1.2, -0.2});
  EXPECT_QTP_ERROR(validate_system(s), ErrorKind::NotDensityMatrix, "rho0");

  s = base_spec();
  CMatrix coh(2, 2);
  coh << 0.5, 0.2, 0.2, 0.5;
  s.rho0 = HermitianMatrix(coh);
  EXPECT_QTP_ERROR(validate_system(s), ErrorKind::NotDiagonalInDeclaredBasis, "rho0");

  s = base_spec();
  s.drive.coupling = CMatrix::Zero(3, 3);
  EXPECT_QTP_ERROR(validate_system(s), ErrorKind::InvalidArgument, "drive/coupling");

  s = base_spec();
  s.drive.coupling(0, 1) = cplx(0.0, 0.3);
  EXPECT_QTP_ERROR(validate_system(s), ErrorKind::NonHermitian, "drive/coupling");

  s = base_spec();
  s.level_ramp = RVector::Zero(3);
  EXPECT_QTP_ERROR(validate_system(s), ErrorKind::InvalidArgument, "level_ramp");

  s = base_spec();
  s.rho0_basis = Rho0Basis::custom;
  s.rho0_basis_vectors = CMatrix::Identity(2, 2) * 1.1;
  EXPECT_QTP_ERROR(validate_system(s), ErrorKind::NonUnitaryBasis, "rho0_basis_vectors");
}

TEST(ValidateSystem, DegenerateBlockCoherence) {
  SystemSpec s = base_spec();
  s.h0 = HermitianMatrix::diagonal(std::vector<double>{0.0, 0.0});
  CMatrix coh(2, 2);
  coh << 0.5, 0.2, 0.2, 0.5;
  s.rho0 = HermitianMatrix(coh);
  EXPECT_QTP_ERROR(validate_system(s), ErrorKind::DegenerateBasisAmbiguity, "rho0_basis");
  // Declaring the basis resolves it.
  CMatrix b(2, 2);
  b << 1.0, 1.0, 1.0, -1.0;
  s.rho0_basis = Rho0Basis::custom;
  s.rho0_basis_vectors = b / std::sqrt(2.0);
  const ValidatedSystem sys = validate_system(s);
  EXPECT_NEAR(sys.rho0_populations().sum(), 1.0, 1e-15);
  EXPECT_NEAR(sys.rho0_populations().maxCoeff(), 0.7, 1e-14);
}

TEST(ValidateSystem, HamiltonianRateMatchesDifference) {
  const ValidatedSystem sys = validate_system(testing::random_system(3, 4, 5.0, 1000));
  const double t = 2.1, h = 1e-5;
  const CMatrix fd = (sys.hamiltonian(t + h) - sys.hamiltonian(t - h)) / (2 * h);
  EXPECT_LT((fd - sys.hamiltonian_rate(t)).cwiseAbs().maxCoeff(), 1e-8);
  const CMatrix ht = sys.hamiltonian(t);
  EXPECT_LT((ht - ht.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((sys.levels_at(t) - ht.diagonal().real()).cwiseAbs().maxCoeff(), 1.0);
}

TEST(ValidateSystem, EnergyScaleUsesScheduledLevels) {
  SystemSpec s = base_spec();
  s.level_ramp = RVector::Zero(2);
  s.level_ramp(1) = 0.5;
  EXPECT_DOUBLE_EQ(validate_system(s).energy_scale(), 1.0 + 0.5 * 10.0);
  s.h0 = HermitianMatrix::diagonal(std::vector<double>{0.0, 0.0});
  s.level_ramp = RVector::Zero(2);
  EXPECT_DOUBLE_EQ(validate_system(s).energy_scale(), 1.0);
}

TEST(Errors, MessageCarriesKindAndKey) {
  const Error e(ErrorKind::GridTooCoarse, "too coarse", "grid/steps");
  EXPECT_EQ(std::string(e.what()), "GridTooCoarse at 'grid/steps': too coarse");
  EXPECT_EQ(to_string(ErrorKind::ConfigParse), "ConfigParse");
}

}  // namespace
}  // namespace qtp
