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

#include <benchmark/benchmark.h>

#include <numbers>

#include "qtp/qtp.hpp"

namespace {

qtp::ValidatedSystem benchmark_system(std::size_t steps) {
  qtp::TwoLevelParams p;
  p.epsilon = 0.3;
  p.omega = 1.2;
  p.rho1 = 0.8;
  p.rho2 = 0.2;
  return qtp::validate_system(qtp::two_level_spec(p, qtp::TimeGrid(20.0 * std::numbers::pi, steps)));
}

void BM_Ledger(benchmark::State& state) {
  const qtp::ValidatedSystem sys = benchmark_system(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qtp::build_ledger(sys, qtp::Rho2Mode::paper_printed));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Ledger)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Amplitudes(benchmark::State& state) {
  const qtp::ValidatedSystem sys = benchmark_system(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qtp::compute_amplitudes(sys));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Amplitudes)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_ExactPropagation(benchmark::State& state) {
  const qtp::ValidatedSystem sys = benchmark_system(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qtp::propagate_exact(sys));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExactPropagation)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Eigendecompose(benchmark::State& state) {
  const auto d = static_cast<Eigen::Index>(state.range(0));
  qtp::CMatrix m = qtp::CMatrix::Random(d, d);
  const qtp::HermitianMatrix h(0.5 * (m + m.adjoint()));
  for (auto _ : state) benchmark::DoNotOptimize(qtp::eigendecompose(h));
}
BENCHMARK(BM_Eigendecompose)->Arg(2)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
