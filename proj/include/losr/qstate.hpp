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

#ifndef LOSR_QSTATE_HPP_
#define LOSR_QSTATE_HPP_

#include <array>
#include <complex>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "losr/behavior.hpp"
#include "losr/common.hpp"

namespace losr {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// A pure state (unit amplitude vector) or a density operator. Immutable.
class QuantumState {
 public:
  static QuantumState pure(CVector amplitudes);
  static QuantumState mixed(CMatrix density);

  int dimension() const;
  bool is_pure() const { return std::holds_alternative<CVector>(rep_); }
  // Throws InvalidArgument for mixed states.
  const CVector& amplitudes() const;
  // The density operator; computed as |psi><psi| for pure states.
  CMatrix density() const;

 private:
  explicit QuantumState(std::variant<CVector, CMatrix> rep) : rep_(std::move(rep)) {}
  std::variant<CVector, CMatrix> rep_;
};

// Two-outcome projective measurement. Outcome +1 is projector_plus, outcome -1
// is its complement.
class BinaryObservable {
 public:
  explicit BinaryObservable(CMatrix projector_plus);

  // Qubit observable n.sigma for a unit Bloch vector n.
  static BinaryObservable from_bloch(double x, double y, double z);
  // Qubit observable cos(theta) Z + sin(theta) X.
  static BinaryObservable xz_plane(double theta);
  static BinaryObservable pauli_z() { return from_bloch(0, 0, 1); }
  static BinaryObservable pauli_x() { return from_bloch(1, 0, 0); }

  int dimension() const { return static_cast<int>(projector_plus_.rows()); }
  const CMatrix& projector_plus() const { return projector_plus_; }
  CMatrix projector(int output) const;  // output is +1 or -1
  CMatrix observable() const;           // P+ - P-

  // Unitary whose first rank_plus() columns span the +1 eigenspace.
  const CMatrix& eigenbasis() const { return eigenbasis_; }
  int rank_plus() const { return rank_plus_; }

  // Bloch vector (Tr[O sigma_x], Tr[O sigma_y], Tr[O sigma_z]) for qubits.
  std::array<double, 3> bloch_vector() const;

 private:
  CMatrix projector_plus_;
  CMatrix eigenbasis_;
  int rank_plus_ = 0;
};

// One party's measurements, indexed by input.
using PartyMeasurements = std::vector<BinaryObservable>;

QuantumState ghz_state(int n);
QuantumState w_state();
QuantumState white_noise_mix(const QuantumState& state, double f);

// Reduced density operator of one tensor factor.
CMatrix reduced_density(const QuantumState& state, std::span<const int> dims,
                        int factor);

// Born rule: P(a_1..a_n | x_1..x_n) = Tr[rho (P^{x_1}_{a_1} x ... x P^{x_n}_{a_n})].
// Party names default to "A", "B", "C", ... in measurement order.
Behavior born_behavior(const QuantumState& state,
                       std::span<const PartyMeasurements> measurements,
                       Execution exec = Execution::kParallel);

}  // namespace losr

#endif  // LOSR_QSTATE_HPP_
