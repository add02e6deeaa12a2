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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "losr/qstate.hpp"
#include "test_util.hpp"

namespace losr {
namespace {

using testing::kron;
using testing::reference_born;

TEST(GhzState, ThreeQubitAmplitudes) {
  const CVector v = ghz_state(3).amplitudes();
  ASSERT_EQ(v.size(), 8);
  for (int i = 0; i < 8; ++i) {
    const double want = (i == 0 || i == 7) ? 1.0 / std::sqrt(2.0) : 0.0;
    EXPECT_NEAR(std::abs(v(i) - Complex(want, 0)), 0.0, 1e-15) << i;
  }
}

TEST(GhzState, TwoQubitsIsPhiPlus) {
  CVector phi(4);
  phi << 1, 0, 0, 1;
  phi /= std::sqrt(2.0);
  EXPECT_LT((ghz_state(2).amplitudes() - phi).norm(), 1e-15);
}

TEST(GhzState, UnitNormUpToTwelveQubits) {
  for (int n = 2; n <= 12; ++n) EXPECT_NEAR(ghz_state(n).amplitudes().norm(), 1.0, 1e-12) << n;
}

TEST(GhzState, RejectsFewerThanTwoQubits) {
  EXPECT_THROW(ghz_state(1), InvalidArgument);
  EXPECT_THROW(ghz_state(0), InvalidArgument);
}

TEST(WState, Amplitudes) {
  const CVector v = w_state().amplitudes();
  for (int i = 0; i < 8; ++i) {
    const double want = (i == 1 || i == 2 || i == 4) ? 1.0 / std::sqrt(3.0) : 0.0;
    EXPECT_NEAR(std::abs(v(i) - Complex(want, 0)), 0.0, 1e-15) << i;
  }
  EXPECT_NEAR(v.norm(), 1.0, 1e-12);
}

TEST(WState, SingleQubitMarginal) {
  const std::vector<int> dims = {2, 2, 2};
  for (int k = 0; k < 3; ++k) {
    const CMatrix r = reduced_density(w_state(), dims, k);
    // Direct summation: qubit k is 1 in exactly one of the three terms.
    EXPECT_NEAR(r(0, 0).real(), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(r(1, 1).real(), 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(std::abs(r(0, 1)), 0.0, 1e-12);
  }
}

TEST(QuantumState, RejectsInvalidInput) {
  CVector v(2);
  v << 1, 1;
  EXPECT_THROW(QuantumState::pure(v), InvalidArgument);
  CMatrix m(2, 2);
  m << 0.5, Complex(0, 0.1), Complex(0, 0.1), 0.5;  // not Hermitian
  EXPECT_THROW(QuantumState::mixed(m), InvalidArgument);
  m << 0.6, 0, 0, 0.6;  // trace 1.2
  EXPECT_THROW(QuantumState::mixed(m), InvalidArgument);
  m << 1.2, 0, 0, -0.2;  // negative eigenvalue
  EXPECT_THROW(QuantumState::mixed(m), InvalidArgument);
}

TEST(QuantumState, MixedStateHasNoAmplitudes) {
  EXPECT_THROW(white_noise_mix(ghz_state(3), 0.5).amplitudes(), InvalidArgument);
}

TEST(WhiteNoise, FidelityOneKeepsState) {
  const QuantumState g = ghz_state(3);
  EXPECT_LT((white_noise_mix(g, 1.0).density() - g.density()).norm(), 1e-15);
}

TEST(WhiteNoise, FidelityZeroIsMaximallyMixed) {
  EXPECT_LT((white_noise_mix(ghz_state(3), 0.0).density() - CMatrix::Identity(8, 8) / 8.0).norm(), 1e-15);
}

TEST(WhiteNoise, HalfMixtureIsAState) {
  const CMatrix rho = white_noise_mix(ghz_state(3), 0.5).density();
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_LT((rho - rho.adjoint()).norm(), 1e-12);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
}

TEST(WhiteNoise, RejectsOutOfRange) {
  EXPECT_THROW(white_noise_mix(ghz_state(3), -0.1), InvalidArgument);
  EXPECT_THROW(white_noise_mix(ghz_state(3), 1.1), InvalidArgument);
  EXPECT_THROW(white_noise_mix(ghz_state(3), std::nan("")), InvalidArgument);
}

TEST(BinaryObservable, ProjectorLaws) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto n = testing::random_unit(rng);
    const BinaryObservable o = BinaryObservable::from_bloch(n[0], n[1], n[2]);
    const CMatrix& p = o.projector_plus();
    EXPECT_LT((p * p - p).norm(), 1e-10);
    EXPECT_LT((p - p.adjoint()).norm(), 1e-12);
    EXPECT_LT((o.projector(1) + o.projector(-1) - CMatrix::Identity(2, 2)).norm(), 1e-12);
    const auto b = o.bloch_vector();
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(b[k], n[k], 1e-12);
  }
}

TEST(BinaryObservable, RejectsNonProjector) {
  CMatrix m(2, 2);
  m << 0.5, 0, 0, 0.5;
  EXPECT_THROW(BinaryObservable{m}, InvalidArgument);
  EXPECT_THROW(BinaryObservable::from_bloch(1, 1, 0), InvalidArgument);
}

TEST(BinaryObservable, XzPlane) {
  const BinaryObservable o = BinaryObservable::xz_plane(M_PI / 4);
  CMatrix want(2, 2);
  want << 1, 1, 1, -1;
  want /= std::sqrt(2.0);
  EXPECT_LT((o.observable() - want).norm(), 1e-12);
}

TEST(Born, GhzRectilinearCorrelation) {
  const PartyMeasurements z = {BinaryObservable::pauli_z()};
  const std::vector<PartyMeasurements> m = {z, z, z};
  const Behavior b = born_behavior(ghz_state(3), m);
  for (std::size_t o = 0; o < 8; ++o) {
    EXPECT_NEAR(b.prob(0, o), (o == 0 || o == 7) ? 0.5 : 0.0, 1e-15) << o;
  }
}

TEST(Born, ProductEigenstateIsDeterministic) {
  CVector v = CVector::Zero(8);
  v(0) = 1;
  const PartyMeasurements z = {BinaryObservable::pauli_z()};
  const std::vector<PartyMeasurements> m = {z, z, z};
  const Behavior b = born_behavior(QuantumState::pure(v), m);
  EXPECT_NEAR(b.prob(0, 0), 1.0, 1e-15);
}

TEST(Born, HadamardMarginalOfGhzVanishes) {
  const PartyMeasurements z = {BinaryObservable::pauli_z()};
  const PartyMeasurements x = {BinaryObservable::pauli_x()};
  const std::vector<PartyMeasurements> m = {z, z, x};
  const Behavior b = born_behavior(ghz_state(3), m);
  const PartyInput c[] = {{2, 0}};
  EXPECT_NEAR(correlator(b, c), 0.0, 1e-12);
}

TEST(Born, MatchesKroneckerReference) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 25; ++t) {
    const auto s = testing::random_qubit_strategy(rng, {2, 3, 2}, t % 2 == 1);
    const Behavior b = born_behavior(s.state, s.measurements);
    const CMatrix rho = s.state.density();
    for (std::size_t ctx = 0; ctx < b.num_contexts(); ++ctx) {
      const std::vector<int> in = b.context_inputs(ctx);
      std::vector<std::array<double, 3>> bloch;
      for (int k = 0; k < 3; ++k) bloch.push_back(s.bloch[k][in[k]]);
      for (std::size_t o = 0; o < 8; ++o) {
        const std::vector<int> bits = {int(o >> 2) & 1, int(o >> 1) & 1, int(o) & 1};
        EXPECT_NEAR(b.prob(ctx, o), reference_born(rho, bloch, bits), 1e-12);
      }
    }
  }
}

TEST(Born, DimensionMismatch) {
  const PartyMeasurements z = {BinaryObservable::pauli_z()};
  const std::vector<PartyMeasurements> m = {z, z};
  EXPECT_THROW(born_behavior(ghz_state(3), m), DimensionError);
}

TEST(Born, LinearInNoise) {
  const QuantumStrategy s = ghz_quantum_strategy();
  const Behavior pure = born_behavior(s.state, s.measurements);
  const Behavior flat = born_behavior(white_noise_mix(s.state, 0.0), s.measurements);
  for (double f : {0.1, 0.37, 0.5, 0.9239, 0.99}) {
    const Behavior mixed = born_behavior(white_noise_mix(s.state, f), s.measurements);
    for (std::size_t i = 0; i < mixed.table().size(); ++i) {
      EXPECT_NEAR(mixed.table()[i], f * pure.table()[i] + (1 - f) * flat.table()[i], 1e-10);
    }
  }
}

TEST(Born, ProductStateFactorizes) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const QuantumState a = testing::random_pure_state(rng, 2);
    const QuantumState b = testing::random_pure_state(rng, 2);
    const QuantumState c = testing::random_pure_state(rng, 2);
    const CVector abc = kron(kron(a.amplitudes(), b.amplitudes()), c.amplitudes());
    const auto s = testing::random_qubit_strategy(rng, {2, 3, 2}, false);
    const Behavior joint = born_behavior(QuantumState::pure(abc), s.measurements);
    const QuantumState single[] = {a, b, c};
    std::vector<Behavior> parts;
    for (int k = 0; k < 3; ++k) {
      const std::vector<PartyMeasurements> mk = {s.measurements[k]};
      parts.push_back(born_behavior(single[k], mk));
    }
    for (std::size_t ctx = 0; ctx < joint.num_contexts(); ++ctx) {
      const std::vector<int> in = joint.context_inputs(ctx);
      for (std::size_t o = 0; o < 8; ++o) {
        const double p = parts[0].prob(in[0], (o >> 2) & 1) * parts[1].prob(in[1], (o >> 1) & 1) *
                         parts[2].prob(in[2], o & 1);
        EXPECT_NEAR(joint.prob(ctx, o), p, 1e-10);
      }
    }
  }
}

TEST(Born, SerialAndParallelAgreeBitwise) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    const auto s = testing::random_qubit_strategy(rng, {2, 3, 2, 2, 2}, t % 2 == 0);
    const Behavior a = born_behavior(s.state, s.measurements, Execution::kSerial);
    const Behavior b = born_behavior(s.state, s.measurements, Execution::kParallel);
    EXPECT_EQ(a.table(), b.table());
  }
}

}  // namespace
}  // namespace losr
