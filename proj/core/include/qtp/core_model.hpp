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
#include <span>
#include <vector>

#include "qtp/types.hpp"

namespace qtp {

inline constexpr double kHermitianAtol = 1e-12;
inline constexpr Eigen::Index kMaxDim = 64;

// Dense Hermitian matrix. Construction checks squareness, dim >= 2 and
// entry-wise Hermiticity within an absolute tolerance.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(CMatrix entries, double atol = kHermitianAtol);
  static HermitianMatrix diagonal(std::span<const double> values);

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  cplx operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b);

 private:
  CMatrix m_;
};

// Eigenvalues ascending; column j of eigenvectors belongs to eigenvalue j.
struct Spectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;
};

// Eigenvalues closer than this (relative to the spectral radius, floor 1) share a block.
inline constexpr double kDegeneracyRtol = 1e-10;

// Deterministic Hermitian eigendecomposition. Inside a degenerate block the
// basis is canonicalized (projected unit vectors, greedy by norm), ordered by
// the index of each vector's largest-modulus component, and every vector is
// phased so that component is real and positive.
Spectrum eigendecompose(const HermitianMatrix& m);
Spectrum eigendecompose(const CMatrix& m);

// Groups of consecutive equal eigenvalues as [begin, end) index ranges.
std::vector<std::pair<Eigen::Index, Eigen::Index>> degenerate_blocks(const RVector& ascending);

enum class DriveKind { harmonic, custom_sampled };

struct DriveSample {
  double t = 0.0;
  CMatrix value;
};

// V(t) in the energy basis of h0 (levels ascending).
// harmonic: V_nk = v_nk e^{-i w t} for n > k, V_kn = conj(V_nk), V_nn = Re v_nn.
// custom_sampled: linear interpolation between Hermitian samples.
struct DriveSpec {
  DriveKind kind = DriveKind::harmonic;
  CMatrix coupling;
  double omega = 0.0;
  std::vector<DriveSample> samples;

  static DriveSpec harmonic(CMatrix coupling, double omega);
  static DriveSpec sampled(std::vector<DriveSample> samples);
};

CMatrix drive_value(const DriveSpec& d, double t);
CMatrix drive_rate(const DriveSpec& d, double t);
// Largest coupling modulus (harmonic) or largest sampled entry (custom).
double drive_amplitude(const DriveSpec& d);

class TimeGrid {
 public:
  TimeGrid(double t_max, std::size_t steps);

  double t_max() const { return t_max_; }
  std::size_t steps() const { return steps_; }
  std::size_t samples() const { return steps_ + 1; }
  double dt() const { return t_max_ / static_cast<double>(steps_); }
  double time(std::size_t i) const { return static_cast<double>(i) * dt(); }
  std::vector<double> times() const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t_max_;
  std::size_t steps_;
};

enum class Rho0Basis { energy, custom };

// The problem statement. h0 and rho0 are in the computational basis; the
// drive coupling and the optional level ramp dE_n/dt are in the energy basis.
// With rho0_basis == custom, columns of rho0_basis_vectors are the states |k>
// in the computational basis.
struct SystemSpec {
  double hbar = 1.0;
  HermitianMatrix h0;
  HermitianMatrix rho0;
  DriveSpec drive;
  TimeGrid grid;
  Rho0Basis rho0_basis = Rho0Basis::energy;
  CMatrix rho0_basis_vectors;
  RVector level_ramp;
};

class ValidatedSystem {
 public:
  const SystemSpec& spec() const { return spec_; }
  double hbar() const { return spec_.hbar; }
  Eigen::Index dim() const { return spec_.h0.dim(); }
  const TimeGrid& grid() const { return spec_.grid; }
  const DriveSpec& drive() const { return spec_.drive; }

  const Spectrum& h0_spectrum() const { return spectrum_; }
  // E_n(0) ascending.
  const RVector& levels() const { return spectrum_.eigenvalues; }
  const RVector& level_ramp() const { return ramp_; }
  // Columns are |k> in the energy representation, i.e. c0[n][k] = <n|k>.
  const CMatrix& k_basis() const { return k_basis_; }
  const RVector& rho0_populations() const { return rho_k_; }
  const CMatrix& rho0_energy() const { return rho0_energy_; }
  // (E_n - E_k)/hbar at t = 0.
  const RMatrix& bohr_frequencies() const { return bohr_; }
  // max |E_n| over the scheduled levels, or 1 when that is zero.
  double energy_scale() const { return scale_; }
  bool static_levels() const { return ramp_.isZero(0.0); }

  // Scheduled static-part levels E_n + r_n t.
  RVector levels_at(double t) const { return spectrum_.eigenvalues + ramp_ * t; }
  // Everything below is in the energy representation of h0.
  CMatrix hamiltonian(double t) const;
  CMatrix hamiltonian_rate(double t) const;
  // theta_n(t) = (E_n t + r_n t^2 / 2) / hbar, the free phase of level n.
  RVector free_phase(double t) const;

  friend bool operator==(const ValidatedSystem& a, const ValidatedSystem& b);

 private:
  explicit ValidatedSystem(SystemSpec spec) : spec_(std::move(spec)) {}
  friend ValidatedSystem validate_system(const SystemSpec& spec);

  SystemSpec spec_;
  Spectrum spectrum_;
  RVector ramp_;
  CMatrix k_basis_;
  RVector rho_k_;
  CMatrix rho0_energy_;
  RMatrix bohr_;
  double scale_ = 1.0;
};

ValidatedSystem validate_system(const SystemSpec& spec);
ValidatedSystem validate_system(const ValidatedSystem& sys);

}  // namespace qtp
