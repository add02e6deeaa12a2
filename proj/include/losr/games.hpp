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

// Scores for the two intertwined games played on a tripartite behavior with
// parties (A, B, C) = (0, 1, 2):
//
//   bell  = <A0B0> + <A0B1> + <A1B0> - <A1B1>, all conditioned on C1 = +1
//   same  = <A0B2> + <B2C0>
//   combined = bell + 4 * same
//
// Without a three-way nonclassical cause and with <C1> = 0 the combined score
// is at most 10; the algebraic maximum is 12.

#ifndef LOSR_GAMES_HPP_
#define LOSR_GAMES_HPP_

#include <gmpxx.h>

#include "losr/behavior.hpp"

namespace losr {

inline constexpr double kBipartiteCauseBound = 10.0;
inline constexpr double kAlgebraicMaximum = 12.0;
inline constexpr double kDefaultC1Tol = 1e-6;

struct Ghz3Score {
  double bell_conditional = 0.0;
  double same = 0.0;
  double c1_marginal = 0.0;
  double combined = 0.0;
  // |<C1>| <= tol; the bound 10 only applies when this holds.
  bool assumption_satisfied = false;

  bool violates_bipartite_bound() const {
    return assumption_satisfied && combined > kBipartiteCauseBound;
  }
};

// CHSH between parties 0 and 1, conditioned on every party k >= 2 producing
// +1 on input 1. For three parties this is the conditioned Bell score.
double chsh_conditional(const Behavior& behavior);
double i_same(const Behavior& behavior);
Ghz3Score ghz3_score(const Behavior& behavior, double tol = kDefaultC1Tol);

// The combined score evaluated in exact rational arithmetic. Table entries are
// converted to rationals exactly, so dyadic behaviors give exact results.
mpq_class exact_combined_score(const Behavior& behavior);

}  // namespace losr

#endif  // LOSR_GAMES_HPP_
