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

// Randomized property suites: soundness of the inflation LP on classical
// behaviors, nonsignalling of quantum behaviors, and Born-rule laws.

#include <gtest/gtest.h>

#include <random>

#include "losr/inflation.hpp"
#include "losr/qstate.hpp"
#include "losr/strategies.hpp"
#include "test_util.hpp"

namespace losr {
namespace {

constexpr int kTrials = 100;

// Tr_C[rho (1 x 1 x op)] for a three-qubit rho.
CMatrix trace_out_last_qubit(const CMatrix& rho, const CMatrix& op) {
  CMatrix out = CMatrix::Zero(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) out(r, c) += rho(2 * r + k, 2 * c + l) * op(l, k);
      }
    }
  }
  return out;
}

TEST(Soundness, ClassicalMixturesFeasibleOnCut) {
  std::mt19937_64 rng(101);
  CertifyConfig c;
  c.wiring = Wiring::kRing3Cut;
  c.solver.pivot = PivotRule::kBland;
  for (int t = 0; t < kTrials; ++t) {
    const Behavior b = testing::random_classical_mixture(rng, 1 + t % 6);
    const FeasibilityOutcome o = certify(b, c);
    ASSERT_EQ(o.verdict, SolveStatus::kFeasible) << "trial " << t << " " << o.message;
    EXPECT_LE(o.lp.max_residual(o.witness), kPrimalResidualTol);
  }
}

TEST(Soundness, ClassicalMixturesFeasibleOnRingThree) {
  std::mt19937_64 rng(103);
  CertifyConfig c;
  c.solver.pivot = PivotRule::kDantzig;
  for (int t = 0; t < kTrials; ++t) {
    const Behavior b = testing::random_classical_mixture(rng, 1 + t % 6);
    const FeasibilityOutcome o = certify(b, c);
    ASSERT_EQ(o.verdict, SolveStatus::kFeasible) << "trial " << t << " " << o.message;
  }
}

TEST(Soundness, ClassicalOptimumFeasibleEverywhere) {
  const Behavior b = *classical_max_oracle().behavior;
  for (auto [w, order] : {std::pair{Wiring::kRing, 2}, {Wiring::kRing, 3}, {Wiring::kRing3Cut, 3}}) {
    CertifyConfig c;
    c.wiring = w;
    c.order = order;
    EXPECT_EQ(certify(b, c).verdict, SolveStatus::kFeasible) << order;
  }
}

TEST(QuantumBehaviors, AreNonsignalling) {
  std::mt19937_64 rng(107);
  for (int t = 0; t < kTrials; ++t) {
    const auto s = testing::random_qubit_strategy(rng, {2, 3, 2}, t % 2 == 1);
    const Behavior b = born_behavior(s.state, s.measurements);
    const NonsignallingReport r = is_nonsignalling(b);
    EXPECT_TRUE(r.is_nonsignalling) << "trial " << t << ": " << r.describe();
    EXPECT_LE(r.max_violation, 1e-12);
  }
}

TEST(BornRule, AffineInState) {
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 30; ++t) {
    const auto s = testing::random_qubit_strategy(rng, {2, 3, 2}, false);
    const QuantumState other = testing::random_mixed_state(rng, 8, 3);
    const double lambda = u(rng);
    const QuantumState mixed =
        QuantumState::mixed(lambda * s.state.density() + (1 - lambda) * other.density());
    const Behavior lhs = born_behavior(mixed, s.measurements);
    const Behavior rhs =
        mix(born_behavior(s.state, s.measurements), born_behavior(other, s.measurements), lambda);
    EXPECT_LT(testing::max_abs_diff(lhs.table(), rhs.table()), 1e-12);
  }
}

TEST(BornRule, MarginalIsReducedState) {
  std::mt19937_64 rng(113);
  for (int t = 0; t < 30; ++t) {
    const auto s = testing::random_qubit_strategy(rng, {2, 3, 2}, t % 2 == 0);
    const Behavior ab = marginal(born_behavior(s.state, s.measurements), {0, 1});
    const CMatrix rho_ab = trace_out_last_qubit(s.state.density(), CMatrix::Identity(2, 2));
    const std::vector<PartyMeasurements> m = {s.measurements[0], s.measurements[1]};
    const Behavior want = born_behavior(QuantumState::mixed(rho_ab), m);
    EXPECT_LT(testing::max_abs_diff(ab.table(), want.table()), 1e-12);
  }
}

// Conditioning on Charlie's outcome equals measuring A and B on the steered
// state Tr_C[rho (1 x 1 x P)] / p.
TEST(BornRule, ConditioningIsSteering) {
  std::mt19937_64 rng(127);
  for (int t = 0; t < 30; ++t) {
    const auto s = testing::random_qubit_strategy(rng, {2, 3, 2}, t % 2 == 0);
    const Behavior b = born_behavior(s.state, s.measurements);
    for (int z = 0; z < 2; ++z) {
      for (int c : {+1, -1}) {
        const auto& v = s.bloch[2][z];
        const CMatrix proj = testing::bloch_projector(v[0], v[1], v[2], c);
        CMatrix steered = trace_out_last_qubit(s.state.density(), proj);
        const double p = steered.trace().real();
        if (p < 1e-6) continue;
        steered /= p;
        const std::vector<PartyMeasurements> m = {s.measurements[0], s.measurements[1]};
        const Behavior want = born_behavior(QuantumState::mixed(0.5 * (steered + steered.adjoint())), m);
        const Behavior got = condition(b, 2, z, c);
        EXPECT_LT(testing::max_abs_diff(got.table(), want.table()), 1e-10);
      }
    }
  }
}

TEST(BornRule, NoisyFamilyStaysNonsignalling) {
  for (int k = 0; k <= 20; ++k) {
    EXPECT_TRUE(is_nonsignalling(noisy_ghz_behavior(k / 20.0)).is_nonsignalling) << k;
  }
}

}  // namespace
}  // namespace losr
