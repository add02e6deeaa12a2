// Copyright 2026 The LOSR Inflation Authors.
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

// Serial vs OpenMP timings of the three hot kernels. Arg 0 is serial, 1 is
// parallel.

#include <benchmark/benchmark.h>

#include "losr/inflation.hpp"
#include "losr/qstate.hpp"
#include "losr/strategies.hpp"

namespace {

using namespace losr;

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

void BM_Born(benchmark::State& state) {
  const QuantumStrategy s = ghz_n_strategy(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(born_behavior(s.state, s.measurements, exec_of(state)));
}
BENCHMARK(BM_Born)->ArgsProduct({{0, 1}, {3, 6, 8}})->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const InflationGraph g = InflationGraph::ring(3);
  const Behavior t = noisy_ghz_behavior(0.9);
  const InputRestriction r = InputRestriction::games(g);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_lp(g, t, r, {}, exec_of(state)));
}
BENCHMARK(BM_Assemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const InflationGraph g = InflationGraph::ring(3);
  const AssembledLp a = assemble_lp(g, noisy_ghz_behavior(1.0), InputRestriction::games(g));
  SolverOptions o;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(solve_feasibility(a.lp, o));
}
BENCHMARK(BM_Solve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
