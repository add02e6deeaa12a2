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

#include "losr/strategies.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "losr/games.hpp"

namespace losr {

std::vector<PartySpec> ghz3_parties() {
  return {{"A", kInputsA}, {"B", kInputsB}, {"C", kInputsC}};
}

void QuantumStrategy::validate() const {
  if (measurements.empty()) throw InvalidArgument("strategy has no parties");
  long long dim = 1;
  for (const PartyMeasurements& party : measurements) {
    if (party.empty()) throw InvalidArgument("every party needs at least one measurement");
    dim *= party.front().dimension();
  }
  if (dim != state.dimension()) throw DimensionError("measurement dimensions do not match the state");
  if (!names.empty() && names.size() != measurements.size()) {
    throw InvalidArgument("one name per party expected");
  }
}

Behavior QuantumStrategy::behavior(Execution exec) const {
  validate();
  Behavior b = born_behavior(state, measurements, exec);
  if (names.empty()) return b;
  std::vector<PartySpec> parties = b.parties();
  for (std::size_t k = 0; k < parties.size(); ++k) parties[k].name = names[k];
  return Behavior(std::move(parties), b.table());
}

namespace {

PartyMeasurements bob_settings() {
  using std::numbers::pi;
  return {BinaryObservable::xz_plane(pi / 4), BinaryObservable::xz_plane(-pi / 4),
          BinaryObservable::pauli_z()};
}

PartyMeasurements zx_settings() {
  return {BinaryObservable::pauli_z(), BinaryObservable::pauli_x()};
}

}  // namespace

QuantumStrategy ghz_quantum_strategy() { return ghz_n_strategy(3); }

Behavior noisy_ghz_behavior(double f, Execution exec) {
  if (!(f >= 0.0 && f <= 1.0)) throw InvalidArgument("fidelity must lie in [0,1]");
  QuantumStrategy s = ghz_quantum_strategy();
  s.state = white_noise_mix(s.state, f);
  return s.behavior(exec);
}

QuantumStrategy ghz_n_strategy(int n) {
  if (n < 3 || n > 12) throw InvalidArgument("GHZ_N strategy supports 3 <= n <= 12, got " + std::to_string(n));
  QuantumStrategy s{ghz_state(n), {}, {}};
  s.measurements.push_back(zx_settings());
  s.measurements.push_back(bob_settings());
  for (int k = 2; k < n; ++k) s.measurements.push_back(zx_settings());
  return s;
}

Behavior ghz_n_behavior(int n, Execution exec) { return ghz_n_strategy(n).behavior(exec); }

// ---------------------------------------------------------------------------
// The r0, r1 box.

namespace {

struct BoxReading {
  const char* name;
  const char* formula;
  // Bob's output bit given r0 and the full input triple.
  std::function<int(int r0, int x, int y, int z)> bob;
};

const std::vector<BoxReading>& box_readings() {
  static const std::vector<BoxReading> readings = {
      {"literal", "B_y = r0 + x*y (mod 2), y = 2 contributes x*2 = 0",
       [](int r0, int x, int y, int) { return (r0 + x * y) & 1; }},
      {"literal-y2-as-1", "B_y = r0 + x*y for y < 2, B_2 = r0 + x",
       [](int r0, int x, int y, int) { return (r0 + x * std::min(y, 1)) & 1; }},
      {"z-gated", "B_y = r0 + z*x*y for y < 2, B_2 = r0",
       [](int r0, int x, int y, int z) { return y == 2 ? r0 : (r0 + z * x * y) & 1; }},
  };
  return readings;
}

Behavior tabulate_box(const BoxReading& reading) {
  return Behavior::tabulate(ghz3_parties(), [&](std::span<const int> in, std::span<const int> bits) {
    const int x = in[0], y = in[1], z = in[2];
    double p = 0.0;
    for (int r0 = 0; r0 < 2; ++r0) {
      for (int r1 = 0; r1 < 2; ++r1) {
        const int a = (r0 + r1 * x) & 1;
        const int b = reading.bob(r0, x, y, z);
        const int c = z == 0 ? r0 : r1;
        if (a == bits[0] && b == bits[1] && c == bits[2]) p += 0.25;
      }
    }
    return p;
  });
}

// <prod of listed outputs> at one full context, no marginalization.
double context_correlator(const Behavior& b, std::array<int, 3> inputs, unsigned mask) {
  const std::size_t ctx = b.context_index(inputs);
  double e = 0.0;
  for (std::size_t o = 0; o < b.num_patterns(); ++o) {
    e += ((std::popcount(o & mask) & 1) ? -1.0 : 1.0) * b.prob(ctx, o);
  }
  return e;
}

}  // namespace

std::vector<NsBoxReading> ns_box_readings() {
  std::vector<NsBoxReading> out;
  for (const BoxReading& r : box_readings()) {
    const Behavior b = tabulate_box(r);
    NsBoxReading d;
    d.name = r.name;
    d.formula = r.formula;
    d.max_signalling = is_nonsignalling(b).max_violation;
    d.a0b2 = context_correlator(b, {0, 2, 0}, 0b110);
    d.b2c0 = context_correlator(b, {0, 2, 0}, 0b011);
    d.c1 = context_correlator(b, {0, 0, 1}, 0b001);
    try {
      d.combined = ghz3_score(b).combined;
    } catch (const SignallingError&) {
      d.combined = std::numeric_limits<double>::quiet_NaN();
    }
    d.accepted = d.max_signalling <= kNonsignallingTol && std::abs(d.combined - 12.0) <= 1e-12 &&
                 std::abs(d.a0b2 - 1.0) <= 1e-12 && std::abs(d.b2c0 - 1.0) <= 1e-12;
    out.push_back(d);
  }
  return out;
}

Behavior ns_box_reading_behavior(const std::string& name) {
  for (const BoxReading& r : box_readings()) {
    if (name == r.name) return tabulate_box(r);
  }
  throw InvalidArgument("unknown box reading '" + name + "'");
}

Behavior ns_box_behavior() {
  const std::vector<NsBoxReading> diag = ns_box_readings();
  for (const NsBoxReading& d : diag) {
    if (d.accepted) return ns_box_reading_behavior(d.name);
  }
  std::ostringstream msg;
  msg << "no reading of the r0,r1 box is nonsignalling with combined score 12:";
  for (const NsBoxReading& d : diag) {
    msg << "\n  " << d.name << ": signalling " << d.max_signalling << ", combined " << d.combined;
  }
  throw Error(msg.str());
}

// ---------------------------------------------------------------------------
// Deterministic strategies and the classical oracle.

Behavior DeterministicStrategy::behavior(const std::vector<PartySpec>& parties) const {
  if (parties.size() != outputs.size()) throw InvalidArgument("one output vector per party expected");
  for (std::size_t k = 0; k < parties.size(); ++k) {
    if (static_cast<int>(outputs[k].size()) != parties[k].n_inputs) {
      throw InvalidArgument("party " + parties[k].name + ": one output per input expected");
    }
  }
  return Behavior::tabulate(parties, [&](std::span<const int> in, std::span<const int> bits) {
    for (std::size_t k = 0; k < outputs.size(); ++k) {
      if (output_bit(outputs[k][in[k]]) != bits[k]) return 0.0;
    }
    return 1.0;
  });
}

std::vector<DeterministicStrategy> deterministic_strategies() {
  std::vector<DeterministicStrategy> out;
  const std::array<int, 3> n = {kInputsA, kInputsB, kInputsC};
  const int total_bits = n[0] + n[1] + n[2];
  for (int code = 0; code < (1 << total_bits); ++code) {
    DeterministicStrategy d;
    int shift = total_bits;
    for (int k = 0; k < 3; ++k) {
      std::vector<int> party;
      for (int x = 0; x < n[k]; ++x) party.push_back(output_value((code >> --shift) & 1));
      d.outputs.push_back(std::move(party));
    }
    out.push_back(std::move(d));
  }
  return out;
}

double linearized_score(const DeterministicStrategy& d, bool include_bell) {
  const auto& A = d.outputs[0];
  const auto& B = d.outputs[1];
  const auto& C = d.outputs[2];
  double s = 4.0 * (A[0] * B[2] + B[2] * C[0]);
  if (include_bell) {
    const int signs[2][2] = {{1, 1}, {1, -1}};
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) s += signs[x][y] * A[x] * B[y] * (1 + C[1]);
    }
  }
  return s;
}

Behavior mixture_behavior(const std::vector<std::pair<DeterministicStrategy, double>>& mixture,
                          const std::vector<PartySpec>& parties) {
  if (mixture.empty()) throw InvalidArgument("empty mixture");
  double total = 0.0;
  for (const auto& [d, w] : mixture) total += w;
  std::vector<double> table;
  for (const auto& [d, w] : mixture) {
    const Behavior b = d.behavior(parties);
    if (table.empty()) table.assign(b.table().size(), 0.0);
    for (std::size_t i = 0; i < table.size(); ++i) table[i] += (w / total) * b.table()[i];
  }
  return Behavior(parties, std::move(table));
}

ClassicalOracleResult classical_max_oracle(const ClassicalOracleOptions& options) {
  std::vector<DeterministicStrategy> pool;
  for (DeterministicStrategy& d : deterministic_strategies()) {
    if (options.only_c1_plus && d.outputs[2][1] != 1) continue;
    pool.push_back(std::move(d));
  }
  const int n = static_cast<int>(pool.size());
  LpProblem lp(n);
  LpRow norm{{}, Relation::kEq, 1.0, "normalization"};
  LpRow c1{{}, Relation::kEq, 0.0, "c1_zero"};
  std::vector<double> objective(n);
  for (int j = 0; j < n; ++j) {
    norm.terms.push_back({j, 1.0});
    c1.terms.push_back({j, static_cast<double>(pool[j].outputs[2][1])});
    objective[j] = linearized_score(pool[j], options.include_bell);
  }
  lp.add_row(std::move(norm));
  if (options.enforce_c1_zero) lp.add_row(std::move(c1));

  SolverOptions so;
  so.backend = options.backend;
  so.exec = Execution::kSerial;
  const OptimizeResult opt = maximize(lp, objective, so);
  ClassicalOracleResult res;
  res.iterations = opt.iterations;
  if (opt.status != OptimizeStatus::kOptimal) return res;
  res.feasible = true;
  res.value = opt.value;
  for (int j = 0; j < n; ++j) {
    if (opt.primal[j] > 1e-12) res.mixture.push_back({pool[j], opt.primal[j]});
  }
  res.behavior = mixture_behavior(res.mixture, ghz3_parties());
  return res;
}

}  // namespace losr
