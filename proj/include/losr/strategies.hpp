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

// Canonical behaviors for the (A: 2 inputs, B: 3 inputs, C: 2 inputs)
// scenario: the GHZ quantum strategy, the algebraically maximal nonsignalling
// box, the white-noise family, and the best classical mixture.

#ifndef LOSR_STRATEGIES_HPP_
#define LOSR_STRATEGIES_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "losr/behavior.hpp"
#include "losr/lpsolve.hpp"
#include "losr/qstate.hpp"

namespace losr {

// Input cardinalities of the tripartite scenario.
inline constexpr int kInputsA = 2;
inline constexpr int kInputsB = 3;
inline constexpr int kInputsC = 2;
std::vector<PartySpec> ghz3_parties();

struct QuantumStrategy {
  QuantumState state;
  std::vector<PartyMeasurements> measurements;  // per party, per input
  std::vector<std::string> names;               // empty: A, B, C, ...

  // Checks that party dimensions multiply to the state dimension.
  void validate() const;
  Behavior behavior(Execution exec = Execution::kParallel) const;
};

// GHZ state; A = {Z, X}, B = {(Z+X)/sqrt2, (Z-X)/sqrt2, Z}, C = {Z, X}.
// Conditioned on C1 = +1 the pair AB holds |phi+>, on which the A and B
// observables in the xz plane at angles {0, pi/2} and {pi/4, -pi/4} are the
// optimal CHSH settings; A0 = B2 = C0 = Z gives perfect agreement.
QuantumStrategy ghz_quantum_strategy();

// The GHZ strategy run on the white-noise mixture of fidelity f.
Behavior noisy_ghz_behavior(double f, Execution exec = Execution::kParallel);

// N-party analogue: party 0 = {Z, X}, party 1 = B's three settings, parties
// 2..n-1 = {Z, X}. Supported for 3 <= n <= 12.
QuantumStrategy ghz_n_strategy(int n);
Behavior ghz_n_behavior(int n, Execution exec = Execution::kParallel);

// Readings of the box  A_x = (-1)^(r0 + r1 x),  B_y = (-1)^(r0 + x y),
// C_z = (-1)^(r_z)  over uniform bits r0, r1. Bob's formula mentions Alice's
// input, so several joint distributions fit the text; each candidate is
// tabulated and checked.
struct NsBoxReading {
  std::string name;
  std::string formula;
  double max_signalling = 0.0;
  double combined = 0.0;  // NaN when undefined because the table signals
  double a0b2 = 0.0;      // <A0 B2> at context (0, 2, 0)
  double b2c0 = 0.0;      // <B2 C0> at context (0, 2, 0)
  double c1 = 0.0;        // <C1> at context (0, 0, 1)
  bool accepted = false;  // nonsignalling, combined = 12, both same-game correlators 1
};

std::vector<NsBoxReading> ns_box_readings();
Behavior ns_box_reading_behavior(const std::string& name);
// The first accepted reading. Throws Error listing every reading if none passes.
Behavior ns_box_behavior();

// One output per input for each party: outputs[k][x] in {+1, -1}.
struct DeterministicStrategy {
  std::vector<std::vector<int>> outputs;

  Behavior behavior(const std::vector<PartySpec>& parties) const;
  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;
};

// All 4 x 8 x 4 = 128 deterministic strategies, A most significant, each
// party's input 0 most significant, +1 before -1.
std::vector<DeterministicStrategy> deterministic_strategies();

// Linearized score of a deterministic strategy:
//   sum_xy s_xy A_x B_y (1 + C_1) + 4 (A_0 B_2 + B_2 C_0),
// equal to the combined score for any mixture with <C1> = 0.
double linearized_score(const DeterministicStrategy& d, bool include_bell = true);

struct ClassicalOracleOptions {
  bool include_bell = true;
  bool enforce_c1_zero = true;
  bool only_c1_plus = false;  // keep only strategies with C_1 = +1
  Backend backend = Backend::kDense;
};

struct ClassicalOracleResult {
  bool feasible = false;
  double value = 0.0;
  std::vector<std::pair<DeterministicStrategy, double>> mixture;  // weight > 0
  std::optional<Behavior> behavior;
  long iterations = 0;
};

ClassicalOracleResult classical_max_oracle(const ClassicalOracleOptions& options = {});

// Mixture sum_k w_k D_k as a behavior over `parties`.
Behavior mixture_behavior(const std::vector<std::pair<DeterministicStrategy, double>>& mixture,
                          const std::vector<PartySpec>& parties);

// JSON: state amplitudes (or density) as [re, im] pairs and, per party and
// input, the observable's Bloch vector.
std::string to_json(const QuantumStrategy& strategy);
QuantumStrategy strategy_from_json(const std::string& text);

}  // namespace losr

#endif  // LOSR_STRATEGIES_HPP_
