// Copyright 2026 The msgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "msgate/mtms.hpp"
#include "msgate/noise.hpp"
#include "msgate/phase_space.hpp"
#include "msgate/quantum_core.hpp"

using namespace msgate;

namespace {

ModulationBase base() {
  ModulationBase b{kTwoPi * 30e3, 0.0, 0.0};
  b.delta0 = 2.0 * 0.01 * b.omega0;
  return b;
}

void BM_PstIntegrals(benchmark::State& state) {
  std::vector<double> phases(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < phases.size(); ++i) phases[i] = 0.1 * static_cast<double>(i);
  const auto seq = ModulationSequence::phase_modulated(base(), 1.2e-3, phases);
  ModeSpec m;
  m.eta = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(pst_integrals(seq, m));
}
BENCHMARK(BM_PstIntegrals)->Arg(32)->Arg(256);

void BM_ToneMetrics(benchmark::State& state) {
  const ToneSet t = solve_coefficients(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tone_metrics(t));
}
BENCHMARK(BM_ToneMetrics)->Arg(2)->Arg(8);

void BM_SolveCoefficients(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_coefficients(16));
}
BENCHMARK(BM_SolveCoefficients);

void BM_SampleOu(benchmark::State& state) {
  const OUParams p{1e-3, 100.0};
  const TimeGrid g{0.0, 1e-2, static_cast<int>(state.range(0))};
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sample_ou(p, g, seed++));
}
BENCHMARK(BM_SampleOu)->Arg(1000)->Arg(10000);

void BM_EvolveUnitary(benchmark::State& state) {
  HamiltonianParams p;
  p.omega0 = kTwoPi * 30e3;
  p.delta = 2.0 * p.eta * p.omega0;
  p.fock_cutoff = static_cast<int>(state.range(0));
  const SpaceSpec space = space_for(Scheme::Primitive, p);
  const HamiltonianFn h = [&](double t) -> Operator { return build_hamiltonian(Scheme::Primitive, p, t); };
  Vec psi = Vec::Zero(space.dim());
  psi(0) = 1.0;
  const double tau = kTwoPi / p.delta;
  for (auto _ : state) benchmark::DoNotOptimize(evolve_unitary(h, QuantumState::ket(psi), {0.0, tau, 200}));
}
BENCHMARK(BM_EvolveUnitary)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
