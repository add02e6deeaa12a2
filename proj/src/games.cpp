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

#include "losr/games.hpp"

#include <array>
#include <bit>
#include <cmath>

namespace losr {
namespace {

void require_inputs(const Behavior& b, int party, int needed, const char* what) {
  if (b.num_parties() <= party || b.party(party).n_inputs < needed) {
    throw InvalidArgument(std::string(what) + ": party " + std::to_string(party) +
                          " needs at least " + std::to_string(needed) + " inputs");
  }
}

constexpr std::array<int, 4> kChshSigns = {1, 1, 1, -1};  // (x, y) = 00, 01, 10, 11

}  // namespace

double chsh_conditional(const Behavior& behavior) {
  if (behavior.num_parties() < 3) throw InvalidArgument("chsh_conditional needs >= 3 parties");
  require_inputs(behavior, 0, 2, "chsh_conditional");
  require_inputs(behavior, 1, 2, "chsh_conditional");
  Behavior steered = behavior;
  for (int k = behavior.num_parties() - 1; k >= 2; --k) {
    require_inputs(behavior, k, 2, "chsh_conditional");
    steered = condition(steered, k, 1, +1);
  }
  double value = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      value += kChshSigns[2 * x + y] * correlator(steered, {{0, x}, {1, y}});
    }
  }
  return value;
}

double i_same(const Behavior& behavior) {
  if (behavior.num_parties() < 3) throw InvalidArgument("i_same needs >= 3 parties");
  require_inputs(behavior, 0, 1, "i_same");
  require_inputs(behavior, 1, 3, "i_same");
  require_inputs(behavior, 2, 1, "i_same");
  return correlator(behavior, {{0, 0}, {1, 2}}) + correlator(behavior, {{1, 2}, {2, 0}});
}

Ghz3Score ghz3_score(const Behavior& behavior, double tol) {
  Ghz3Score s;
  s.bell_conditional = chsh_conditional(behavior);
  s.same = i_same(behavior);
  s.c1_marginal = correlator(behavior, {{2, 1}});
  s.combined = s.bell_conditional + 4.0 * s.same;
  s.assumption_satisfied = std::abs(s.c1_marginal) <= tol;
  return s;
}

mpq_class exact_combined_score(const Behavior& b) {
  if (b.num_parties() != 3) throw InvalidArgument("exact score needs exactly 3 parties");
  require_inputs(b, 0, 2, "exact_combined_score");
  require_inputs(b, 1, 3, "exact_combined_score");
  require_inputs(b, 2, 2, "exact_combined_score");
  auto q = [&](int x, int y, int z, std::size_t pattern) {
    const std::array<int, 3> in = {x, y, z};
    return mpq_class(b.prob(b.context_index(in), pattern));  // exact conversion
  };
  auto sign = [](std::size_t pattern, std::size_t mask) {
    return (std::popcount(pattern & mask) & 1) ? -1 : 1;
  };
  constexpr std::size_t kA = 4, kB = 2, kC = 1;

  mpq_class bell = 0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      mpq_class event = 0;
      mpq_class corr = 0;
      for (std::size_t o = 0; o < 8; ++o) {
        if (o & kC) continue;  // C1 = +1 only
        event += q(x, y, 1, o);
        corr += sign(o, kA | kB) * q(x, y, 1, o);
      }
      if (event == 0) throw DegenerateConditioningError("P(C1=+1) is zero");
      bell += kChshSigns[2 * x + y] * (corr / event);
    }
  }
  mpq_class same = 0;
  for (std::size_t o = 0; o < 8; ++o) {
    same += sign(o, kA | kB) * q(0, 2, 0, o);
    same += sign(o, kB | kC) * q(0, 2, 0, o);
  }
  return bell + 4 * same;
}

}  // namespace losr
