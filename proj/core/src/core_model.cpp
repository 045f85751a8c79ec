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

#include "qtp/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qtp/error.hpp"

namespace qtp {

namespace {

template <typename A, typename B>
bool same(const A& a, const B& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return a.size() == 0 || a == b;
}

double hermiticity_defect(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_diagonal(const CMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (r != c && m(r, c) != cplx(0.0, 0.0)) return false;
  return true;
}

// Index of the largest-modulus component; near-ties go to the lower index.
Eigen::Index dominant_index(const CVector& v) {
  const double top = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) >= top - 1e-12 * std::max(1.0, top)) return i;
  return 0;
}

void fix_phase(Eigen::Ref<CVector> v) {
  const cplx a = v(dominant_index(v));
  if (std::abs(a) > 0.0) {
    const Eigen::Index i = dominant_index(v);
    v *= std::conj(a) / std::abs(a);
    v(i) = std::abs(a);
  }
}

void check_square(const CMatrix& m, const std::string& what) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidArgument, what + " must be square");
}

void canonicalize_block(CMatrix& vecs, Eigen::Index begin, Eigen::Index end) {
  const Eigen::Index m = end - begin;
  const Eigen::Index d = vecs.rows();
  CMatrix block = vecs.middleCols(begin, m);
  if (m > 1) {
    CMatrix residual = block * block.adjoint();
    for (Eigen::Index j = 0; j < m; ++j) {
      Eigen::Index pick = 0;
      double best = -1.0;
      for (Eigen::Index i = 0; i < d; ++i) {
        const double w = residual(i, i).real();
        if (w > best + 1e-12) {
          best = w;
          pick = i;
        }
      }
      CVector v = residual.col(pick) / std::sqrt(best);
      block.col(j) = v;
      residual -= v * v.adjoint();
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::vector<Eigen::Index> key(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) key[static_cast<std::size_t>(j)] = dominant_index(block.col(j));
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)];
    });
    CMatrix sorted(d, m);
    for (Eigen::Index j = 0; j < m; ++j) sorted.col(j) = block.col(order[static_cast<std::size_t>(j)]);
    block = sorted;
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    CVector v = block.col(j);
    fix_phase(v);
    vecs.col(begin + j) = v;
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(CMatrix entries, double atol) : m_(std::move(entries)) {
  check_square(m_, "Hermitian matrix");
  if (m_.rows() < 2) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 2");
  if (m_.rows() > kMaxDim) throw Error(ErrorKind::InvalidArgument, "dimension above 64 is not supported");
  if (!m_.allFinite()) throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
  const double defect = hermiticity_defect(m_);
  if (defect > atol) {
    throw Error(ErrorKind::NonHermitian, "max |m - m^dagger| = " + std::to_string(defect));
  }
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
  return HermitianMatrix(std::move(m));
}

bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) { return same(a.m_, b.m_); }

std::vector<std::pair<Eigen::Index, Eigen::Index>> degenerate_blocks(const RVector& ascending) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
  const Eigen::Index n = ascending.size();
  if (n == 0) return blocks;
  const double tol = kDegeneracyRtol * std::max(1.0, ascending.cwiseAbs().maxCoeff());
  Eigen::Index begin = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i == n || ascending(i) - ascending(i - 1) > tol) {
      blocks.emplace_back(begin, i);
      begin = i;
    }
  }
  return blocks;
}

Spectrum eigendecompose(const CMatrix& m) {
  check_square(m, "matrix");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianAtol) {
    throw Error(ErrorKind::NonHermitian, "max |m - m^dagger| = " + std::to_string(defect));
  }
  const Eigen::Index d = m.rows();
  Spectrum s;
  if (is_diagonal(m)) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return m(a, a).real() < m(b, b).real(); });
    s.eigenvalues.resize(d);
    s.eigenvectors = CMatrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
      const Eigen::Index src = order[static_cast<std::size_t>(j)];
      s.eigenvalues(j) = m(src, src).real();
      s.eigenvectors(src, j) = 1.0;
    }
    return s;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::InvalidArgument, "eigensolver did not converge");
  s.eigenvalues = solver.eigenvalues();
  s.eigenvectors = solver.eigenvectors();
  for (auto [b, e] : degenerate_blocks(s.eigenvalues)) canonicalize_block(s.eigenvectors, b, e);
  return s;
}

Spectrum eigendecompose(const HermitianMatrix& m) { return eigendecompose(m.matrix()); }

DriveSpec DriveSpec::harmonic(CMatrix coupling, double omega) {
  DriveSpec d;
  d.kind = DriveKind::harmonic;
  d.coupling = std::move(coupling);
  d.omega = omega;
  return d;
}

DriveSpec DriveSpec::sampled(std::vector<DriveSample> samples) {
  DriveSpec d;
  d.kind = DriveKind::custom_sampled;
  d.samples = std::move(samples);
  return d;
}

namespace {

// Segment index j with samples[j].t <= t <= samples[j+1].t.
std::size_t locate(const std::vector<DriveSample>& s, double t) {
  if (s.size() < 2) throw Error(ErrorKind::OutOfTable, "sampled drive needs at least two samples");
  const double span = s.back().t - s.front().t;
  const double slack = 1e-12 * std::max(1.0, std::abs(span));
  if (t < s.front().t - slack || t > s.back().t + slack) {
    throw Error(ErrorKind::OutOfTable, "t = " + std::to_string(t) + " outside the sampled range");
  }
  auto it = std::upper_bound(s.begin(), s.end(), t, [](double x, const DriveSample& a) { return x < a.t; });
  std::size_t j = it == s.begin() ? 0 : static_cast<std::size_t>(it - s.begin()) - 1;
  return std::min(j, s.size() - 2);
}

}  // namespace

CMatrix drive_value(const DriveSpec& d, double t) {
  if (d.kind == DriveKind::custom_sampled) {
    const std::size_t j = locate(d.samples, t);
    const auto& a = d.samples[j];
    const auto& b = d.samples[j + 1];
    const double x = std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0);
    return (1.0 - x) * a.value + x * b.value;
  }
  const Eigen::Index n = d.coupling.rows();
  CMatrix v = CMatrix::Zero(n, n);
  const cplx phase = std::polar(1.0, -d.omega * t);
  for (Eigen::Index c = 0; c < n; ++c) {
    v(c, c) = d.coupling(c, c).real();
    for (Eigen::Index r = c + 1; r < n; ++r) {
      v(r, c) = d.coupling(r, c) * phase;
      v(c, r) = std::conj(v(r, c));
    }
  }
  return v;
}

CMatrix drive_rate(const DriveSpec& d, double t) {
  if (d.kind == DriveKind::custom_sampled) {
    const std::size_t j = locate(d.samples, t);
    const auto& a = d.samples[j];
    const auto& b = d.samples[j + 1];
    return (b.value - a.value) / (b.t - a.t);
  }
  const Eigen::Index n = d.coupling.rows();
  CMatrix v = CMatrix::Zero(n, n);
  const cplx phase = cplx(0.0, -d.omega) * std::polar(1.0, -d.omega * t);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = c + 1; r < n; ++r) {
      v(r, c) = d.coupling(r, c) * phase;
      v(c, r) = std::conj(v(r, c));
    }
  }
  return v;
}

double drive_amplitude(const DriveSpec& d) {
  if (d.kind == DriveKind::harmonic) return d.coupling.size() == 0 ? 0.0 : d.coupling.cwiseAbs().maxCoeff();
  double a = 0.0;
  for (const auto& s : d.samples) a = std::max(a, s.value.cwiseAbs().maxCoeff());
  return a;
}

TimeGrid::TimeGrid(double t_max, std::size_t steps) : t_max_(t_max), steps_(steps) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw Error(ErrorKind::InvalidArgument, "t_max must be positive");
  if (steps < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 steps");
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(samples());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = time(i);
  return t;
}

CMatrix ValidatedSystem::hamiltonian(double t) const {
  CMatrix h = drive_value(spec_.drive, t);
  h.diagonal() += levels_at(t).cast<cplx>();
  return h;
}

CMatrix ValidatedSystem::hamiltonian_rate(double t) const {
  CMatrix h = drive_rate(spec_.drive, t);
  h.diagonal() += ramp_.cast<cplx>();
  return h;
}

RVector ValidatedSystem::free_phase(double t) const {
  return (spectrum_.eigenvalues * t + 0.5 * ramp_ * t * t) / spec_.hbar;
}

bool operator==(const ValidatedSystem& a, const ValidatedSystem& b) {
  const SystemSpec& x = a.spec_;
  const SystemSpec& y = b.spec_;
  if (x.hbar != y.hbar || !(x.h0 == y.h0) || !(x.rho0 == y.rho0) || !(x.grid == y.grid)) return false;
  if (x.rho0_basis != y.rho0_basis || !same(x.rho0_basis_vectors, y.rho0_basis_vectors)) return false;
  if (!same(x.level_ramp, y.level_ramp)) return false;
  if (x.drive.kind != y.drive.kind || x.drive.omega != y.drive.omega) return false;
  if (!same(x.drive.coupling, y.drive.coupling) || x.drive.samples.size() != y.drive.samples.size()) return false;
  for (std::size_t i = 0; i < x.drive.samples.size(); ++i) {
    if (x.drive.samples[i].t != y.drive.samples[i].t) return false;
    if (!same(x.drive.samples[i].value, y.drive.samples[i].value)) return false;
  }
  return same(a.k_basis_, b.k_basis_) && same(a.rho_k_, b.rho_k_) && same(a.spectrum_.eigenvectors, b.spectrum_.eigenvectors);
}

namespace {

void validate_drive(const DriveSpec& d, Eigen::Index dim) {
  auto check = [&](const CMatrix& m, const std::string& key) {
    if (m.rows() != dim || m.cols() != dim) {
      throw Error(ErrorKind::InvalidArgument, "drive matrix must be " + std::to_string(dim) + "x" + std::to_string(dim), key);
    }
    if (!m.allFinite()) throw Error(ErrorKind::InvalidArgument, "drive matrix has non-finite entries", key);
    if (hermiticity_defect(m) > kHermitianAtol) throw Error(ErrorKind::NonHermitian, "drive matrix is not Hermitian", key);
  };
  if (d.kind == DriveKind::harmonic) {
    check(d.coupling, "drive/coupling");
    if (!std::isfinite(d.omega)) throw Error(ErrorKind::InvalidArgument, "omega must be finite", "drive/omega");
    return;
  }
  if (d.samples.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples", "drive/samples");
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    const std::string key = "drive/samples/" + std::to_string(i);
    check(d.samples[i].value, key + "/value");
    if (i > 0 && !(d.samples[i].t > d.samples[i - 1].t)) {
      throw Error(ErrorKind::InvalidArgument, "sample times must increase strictly", key + "/t");
    }
  }
}

}  // namespace

ValidatedSystem validate_system(const SystemSpec& spec) {
  if (!(spec.hbar > 0.0) || !std::isfinite(spec.hbar)) throw Error(ErrorKind::InvalidArgument, "hbar must be positive", "hbar");
  const Eigen::Index d = spec.h0.dim();
  if (spec.rho0.dim() != d) throw Error(ErrorKind::InvalidArgument, "rho0 and h0 dimensions differ", "rho0");

  const CMatrix& rho = spec.rho0.matrix();
  const double trace_err = std::abs(rho.trace() - 1.0);
  if (trace_err > 1e-12) throw Error(ErrorKind::NotDensityMatrix, "trace differs from 1 by " + std::to_string(trace_err), "rho0");
  const double min_eig = eigendecompose(spec.rho0).eigenvalues.minCoeff();
  if (min_eig < -1e-12) throw Error(ErrorKind::NotDensityMatrix, "negative eigenvalue " + std::to_string(min_eig), "rho0");

  validate_drive(spec.drive, d);

  ValidatedSystem sys(spec);
  sys.spectrum_ = eigendecompose(spec.h0);
  if (spec.level_ramp.size() == 0) {
    sys.ramp_ = RVector::Zero(d);
  } else if (spec.level_ramp.size() != d) {
    throw Error(ErrorKind::InvalidArgument, "level_ramp needs one entry per level", "level_ramp");
  } else {
    sys.ramp_ = spec.level_ramp;
  }

  const CMatrix& T = sys.spectrum_.eigenvectors;
  CMatrix in_basis;
  if (spec.rho0_basis == Rho0Basis::energy) {
    sys.k_basis_ = CMatrix::Identity(d, d);
    in_basis = T.adjoint() * rho * T;
  } else {
    const CMatrix& U = spec.rho0_basis_vectors;
    if (U.rows() != d || U.cols() != d) {
      throw Error(ErrorKind::InvalidArgument, "basis must be a square matrix of the system dimension", "rho0_basis_vectors");
    }
    const double defect = (U.adjoint() * U - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (defect > 1e-10) throw Error(ErrorKind::NonUnitaryBasis, "basis vectors are not orthonormal", "rho0_basis_vectors");
    sys.k_basis_ = T.adjoint() * U;
    in_basis = U.adjoint() * rho * U;
  }

  // Off-diagonal weight in the declared basis. In the energy basis, weight
  // that sits entirely inside degenerate blocks of h0 is an ambiguity rather
  // than a plain violation: some other basis of the block would diagonalize it.
  const auto blocks = degenerate_blocks(sys.spectrum_.eigenvalues);
  std::vector<Eigen::Index> block_of(static_cast<std::size_t>(d));
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (Eigen::Index i = blocks[b].first; i < blocks[b].second; ++i) block_of[static_cast<std::size_t>(i)] = static_cast<Eigen::Index>(b);
  bool outside = false;
  bool inside = false;
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) {
      if (r == c || std::abs(in_basis(r, c)) <= 1e-12) continue;
      const bool same_block = block_of[static_cast<std::size_t>(r)] == block_of[static_cast<std::size_t>(c)];
      (spec.rho0_basis == Rho0Basis::energy && same_block ? inside : outside) = true;
    }
  }
  if (outside) throw Error(ErrorKind::NotDiagonalInDeclaredBasis, "rho0 has off-diagonal elements in its declared basis", "rho0");
  if (inside) {
    throw Error(ErrorKind::DegenerateBasisAmbiguity,
                "rho0 mixes states inside a degenerate level of h0; declare a custom basis", "rho0_basis");
  }

  sys.rho_k_ = in_basis.diagonal().real();
  CMatrix r0 = sys.k_basis_ * sys.rho_k_.cast<cplx>().asDiagonal() * sys.k_basis_.adjoint();
  sys.rho0_energy_ = 0.5 * (r0 + r0.adjoint());

  const RVector& E = sys.spectrum_.eigenvalues;
  sys.bohr_.resize(d, d);
  for (Eigen::Index n = 0; n < d; ++n)
    for (Eigen::Index k = 0; k < d; ++k) sys.bohr_(n, k) = (E(n) - E(k)) / spec.hbar;

  const double top = std::max(E.cwiseAbs().maxCoeff(), sys.levels_at(spec.grid.t_max()).cwiseAbs().maxCoeff());
  sys.scale_ = top > 0.0 ? top : 1.0;
  return sys;
}

ValidatedSystem validate_system(const ValidatedSystem& sys) { return validate_system(sys.spec()); }

}  // namespace qtp
