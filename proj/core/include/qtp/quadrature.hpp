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

// Uniform-grid quadrature and differentiation. Everything is second order in dt.
namespace qtp::quad {

// F[0] = 0, F[i] = F[i-1] + dt (y[i-1] + y[i]) / 2.
template <typename T>
std::vector<T> cumulative_trapezoid(std::span<const T> y, double dt) {
  std::vector<T> out(y.size(), T(0));
  for (std::size_t i = 1; i < y.size(); ++i) out[i] = out[i - 1] + 0.5 * dt * (y[i - 1] + y[i]);
  return out;
}

template <typename T>
std::vector<T> cumulative_trapezoid(const std::vector<T>& y, double dt) {
  return cumulative_trapezoid(std::span<const T>(y), dt);
}

// Elementwise cumulative trapezoid of a matrix series.
template <typename Scalar>
SampledMatrix<Scalar> cumulative_trapezoid(const SampledMatrix<Scalar>& y, double dt) {
  SampledMatrix<Scalar> out(y.samples(), y.rows(), y.cols());
  const std::size_t m = y.stride();
  auto src = y.flat();
  auto dst = out.flat();
  for (std::size_t i = 1; i < y.samples(); ++i) {
    for (std::size_t e = 0; e < m; ++e) {
      dst[i * m + e] = dst[(i - 1) * m + e] + 0.5 * dt * (src[(i - 1) * m + e] + src[i * m + e]);
    }
  }
  return out;
}

// Central differences inside, second-order one-sided stencils at both ends.
// Needs at least three samples.
template <typename T>
std::vector<T> derivative(std::span<const T> y, double dt) {
  const std::size_t n = y.size();
  std::vector<T> out(n, T(0));
  if (n < 3) return out;
  const double h2 = 0.5 / dt;
  out[0] = h2 * (-3.0 * y[0] + 4.0 * y[1] - y[2]);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = h2 * (y[i + 1] - y[i - 1]);
  out[n - 1] = h2 * (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]);
  return out;
}

template <typename T>
std::vector<T> derivative(const std::vector<T>& y, double dt) {
  return derivative(std::span<const T>(y), dt);
}

template <typename Scalar>
SampledMatrix<Scalar> derivative(const SampledMatrix<Scalar>& y, double dt) {
  SampledMatrix<Scalar> out(y.samples(), y.rows(), y.cols());
  const std::size_t n = y.samples();
  if (n < 3) return out;
  const std::size_t m = y.stride();
  const double h2 = 0.5 / dt;
  auto s = y.flat();
  auto d = out.flat();
  for (std::size_t e = 0; e < m; ++e) {
    d[e] = h2 * (-3.0 * s[e] + 4.0 * s[m + e] - s[2 * m + e]);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i * m + e] = h2 * (s[(i + 1) * m + e] - s[(i - 1) * m + e]);
    d[(n - 1) * m + e] = h2 * (3.0 * s[(n - 1) * m + e] - 4.0 * s[(n - 2) * m + e] + s[(n - 3) * m + e]);
  }
  return out;
}

// Cumulative Riemann-Stieltjes sum of f dg with trapezoidal weights:
// F[i] = F[i-1] + (f[i-1] + f[i]) / 2 * (g[i] - g[i-1]).
inline ScalarSeries cumulative_stieltjes(std::span<const double> f, std::span<const double> g) {
  ScalarSeries out(f.size(), 0.0);
  for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + 0.5 * (f[i - 1] + f[i]) * (g[i] - g[i - 1]);
  return out;
}

}  // namespace qtp::quad
