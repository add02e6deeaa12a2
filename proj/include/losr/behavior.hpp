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

// Conditional distributions P(outputs | inputs) over binary +-1 outputs.
//
// Layout: the table is dense, indexed by (context, pattern).
//   * A context is one input per party, flattened mixed-radix with party 0
//     most significant ("x,y,z" order).
//   * A pattern is one output per party, flattened as bits with party 0 most
//     significant; bit 0 means +1 and bit 1 means -1. Pattern order is
//     therefore lexicographic with +1 before -1: (+++), (++-), (+-+), ...

#ifndef LOSR_BEHAVIOR_HPP_
#define LOSR_BEHAVIOR_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "losr/common.hpp"

namespace losr {

struct PartySpec {
  std::string name;
  int n_inputs = 0;

  friend bool operator==(const PartySpec&, const PartySpec&) = default;
};

// Output value for a pattern bit: 0 -> +1, 1 -> -1.
constexpr int output_value(int bit) { return bit == 0 ? 1 : -1; }
constexpr int output_bit(int value) { return value == 1 ? 0 : 1; }

class Behavior {
 public:
  // Validates that every context sums to 1 within kDistributionTol and that
  // entries are nonnegative (entries in [-1e-12, 0) are clamped to 0).
  Behavior(std::vector<PartySpec> parties, std::vector<double> table);

  // Builds the table by calling prob(inputs, output_bits) for every entry.
  static Behavior tabulate(
      std::vector<PartySpec> parties,
      const std::function<double(std::span<const int> inputs,
                                 std::span<const int> output_bits)>& prob);

  int num_parties() const { return static_cast<int>(parties_.size()); }
  const std::vector<PartySpec>& parties() const { return parties_; }
  const PartySpec& party(int k) const { return parties_.at(k); }
  std::size_t num_contexts() const { return num_contexts_; }
  std::size_t num_patterns() const { return std::size_t{1} << parties_.size(); }

  std::size_t context_index(std::span<const int> inputs) const;
  std::vector<int> context_inputs(std::size_t context) const;

  double prob(std::size_t context, std::size_t pattern) const {
    return table_[context * num_patterns() + pattern];
  }
  // Outputs given as +-1 values.
  double prob(std::span<const int> inputs, std::span<const int> outputs) const;
  std::span<const double> context(std::size_t context) const {
    return {table_.data() + context * num_patterns(), num_patterns()};
  }
  const std::vector<double>& table() const { return table_; }

 private:
  std::vector<PartySpec> parties_;
  std::size_t num_contexts_ = 0;
  std::vector<double> table_;
};

// Entrywise lambda * p + (1 - lambda) * q. Parties must match.
Behavior mix(const Behavior& p, const Behavior& q, double lambda);

struct NonsignallingReport {
  bool is_nonsignalling = true;
  double max_violation = 0.0;
  // Party whose input change produced max_violation, the two inputs compared,
  // and the other parties' inputs (party order, the worst party's slot = -1).
  int worst_party = -1;
  std::pair<int, int> worst_inputs{-1, -1};
  std::vector<int> worst_context;

  std::string describe() const;
};

NonsignallingReport is_nonsignalling(const Behavior& behavior,
                                     double tol = kNonsignallingTol);

// Sums out every party not listed in keep. Throws SignallingError when the
// result would depend on the discarded parties' inputs by more than tol.
// Retained parties keep their original relative order.
Behavior marginal(const Behavior& behavior, std::vector<int> keep,
                  double tol = kNonsignallingTol);

// Bayes-conditions on party producing `output` (+-1) at `input`. The event must
// have probability > kDistributionTol at every context of the other parties.
Behavior condition(const Behavior& behavior, int party, int input, int output);

// Expectation of the product of the listed parties' +-1 outputs at the given
// inputs, with every other party marginalized.
struct PartyInput {
  int party;
  int input;
};
double correlator(const Behavior& behavior, std::span<const PartyInput> terms,
                  double tol = kNonsignallingTol);
double correlator(const Behavior& behavior,
                  std::initializer_list<PartyInput> terms,
                  double tol = kNonsignallingTol);

// JSON round trip. Writing sorts parties by name; probabilities are written
// as decimal strings with 17 significant digits.
std::string to_json(const Behavior& behavior);
Behavior behavior_from_json(const std::string& text);

// Reorders parties (result party k is input party order[k]).
Behavior permute_parties(const Behavior& behavior, std::span<const int> order);

}  // namespace losr

#endif  // LOSR_BEHAVIOR_HPP_
