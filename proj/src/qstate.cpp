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

#include "losr/qstate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

namespace losr {
namespace {

constexpr double kPsdTol = 1e-10;
constexpr double kBornEntryTol = 1e-10;
constexpr int kMaxQubits = 12;

double hermiticity_defect(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Applies the d x d matrix `op` to one tensor factor of the strided vector
// data[0], data[step], ..., data[(len-1)*step]. `stride` is the product of the
// dimensions of the factors to the right.
void apply_factor(const CMatrix& op, bool conjugate, std::size_t stride,
                  Complex* data, std::size_t len, std::size_t step,
                  std::vector<Complex>& scratch) {
  const auto d = static_cast<std::size_t>(op.rows());
  scratch.resize(d);
  const std::size_t block = stride * d;
  for (std::size_t outer = 0; outer < len; outer += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      const std::size_t base = outer + inner;
      for (std::size_t r = 0; r < d; ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          const Complex m = conjugate ? std::conj(op(r, c)) : op(r, c);
          acc += m * data[(base + c * stride) * step];
        }
        scratch[r] = acc;
      }
      for (std::size_t r = 0; r < d; ++r) data[(base + r * stride) * step] = scratch[r];
    }
  }
}

struct BornLayout {
  int parties = 0;
  std::vector<int> dims;
  std::vector<std::size_t> strides;
  std::vector<int> n_inputs;
  std::size_t contexts = 1;
  std::size_t dimension = 1;
  // local[k * dimension + i] = digit of basis index i in factor k
  std::vector<int> local;
};

BornLayout make_layout(const QuantumState& state,
                       std::span<const PartyMeasurements> measurements) {
  BornLayout lay;
  lay.parties = static_cast<int>(measurements.size());
  if (lay.parties == 0) throw InvalidArgument("born_behavior needs at least one party");
  if (lay.parties > kMaxQubits) throw InvalidArgument("too many parties for dense Born rule");
  for (const auto& party : measurements) {
    if (party.empty()) throw InvalidArgument("every party needs at least one input");
    const int d = party.front().dimension();
    for (const auto& m : party) {
      if (m.dimension() != d) throw DimensionError("a party's measurements disagree on dimension");
    }
    lay.dims.push_back(d);
    lay.n_inputs.push_back(static_cast<int>(party.size()));
    lay.dimension *= static_cast<std::size_t>(d);
    lay.contexts *= party.size();
  }
  if (lay.dimension != static_cast<std::size_t>(state.dimension())) {
    throw DimensionError("product of party dimensions (" + std::to_string(lay.dimension) +
                         ") differs from state dimension (" +
                         std::to_string(state.dimension()) + ")");
  }
  lay.strides.assign(lay.parties, 1);
  for (int k = lay.parties - 2; k >= 0; --k) {
    lay.strides[k] = lay.strides[k + 1] * static_cast<std::size_t>(lay.dims[k + 1]);
  }
  lay.local.resize(static_cast<std::size_t>(lay.parties) * lay.dimension);
  for (int k = 0; k < lay.parties; ++k) {
    for (std::size_t i = 0; i < lay.dimension; ++i) {
      lay.local[k * lay.dimension + i] = static_cast<int>((i / lay.strides[k]) % lay.dims[k]);
    }
  }
  return lay;
}

struct BornScratch {
  CVector vec;
  CMatrix mat;
  std::vector<Complex> factor;
  std::vector<int> inputs;
};

// Fills out[0 .. 2^parties) for one context; returns false if the entries
// cannot come from valid projectors.
bool born_context(const QuantumState& state,
                  std::span<const PartyMeasurements> measurements,
                  const BornLayout& lay, std::size_t context, double* out,
                  BornScratch& s) {
  s.inputs.resize(lay.parties);
  std::size_t rest = context;
  for (int k = lay.parties - 1; k >= 0; --k) {
    s.inputs[k] = static_cast<int>(rest % lay.n_inputs[k]);
    rest /= lay.n_inputs[k];
  }
  const std::size_t patterns = std::size_t{1} << lay.parties;
  std::fill(out, out + patterns, 0.0);
  const std::size_t dim = lay.dimension;

  auto pattern_of = [&](std::size_t i) {
    std::size_t pattern = 0;
    for (int k = 0; k < lay.parties; ++k) {
      const auto& m = measurements[k][s.inputs[k]];
      const int bit = lay.local[k * dim + i] >= m.rank_plus() ? 1 : 0;
      pattern = (pattern << 1) | static_cast<std::size_t>(bit);
    }
    return pattern;
  };

  if (state.is_pure()) {
    s.vec = state.amplitudes();
    for (int k = 0; k < lay.parties; ++k) {
      const CMatrix& basis = measurements[k][s.inputs[k]].eigenbasis();
      apply_factor(basis.adjoint(), false, lay.strides[k], s.vec.data(), dim, 1, s.factor);
    }
    for (std::size_t i = 0; i < dim; ++i) out[pattern_of(i)] += std::norm(s.vec[i]);
  } else {
    s.mat = state.density();
    for (int k = 0; k < lay.parties; ++k) {
      const CMatrix basis_dag = measurements[k][s.inputs[k]].eigenbasis().adjoint();
      // rho <- U rho U^dagger, factor by factor; Eigen storage is column-major.
      for (std::size_t col = 0; col < dim; ++col) {
        apply_factor(basis_dag, false, lay.strides[k], s.mat.data() + col * dim, dim, 1,
                     s.factor);
      }
      for (std::size_t row = 0; row < dim; ++row) {
        apply_factor(basis_dag, true, lay.strides[k], s.mat.data() + row, dim, dim,
                     s.factor);
      }
    }
    for (std::size_t i = 0; i < dim; ++i) out[pattern_of(i)] += s.mat(i, i).real();
  }

  double sum = 0.0;
  for (std::size_t o = 0; o < patterns; ++o) {
    if (out[o] < -kBornEntryTol || out[o] > 1.0 + kBornEntryTol) return false;
    out[o] = std::clamp(out[o], 0.0, 1.0);
    sum += out[o];
  }
  if (std::abs(sum - 1.0) > kDistributionTol) return false;
  for (std::size_t o = 0; o < patterns; ++o) out[o] /= sum;
  return true;
}

std::vector<PartySpec> default_party_specs(const BornLayout& lay) {
  std::vector<PartySpec> parties;
  for (int k = 0; k < lay.parties; ++k) {
    parties.push_back({std::string(1, static_cast<char>('A' + k)), lay.n_inputs[k]});
  }
  return parties;
}

}  // namespace

QuantumState QuantumState::pure(CVector amplitudes) {
  if (amplitudes.size() == 0) throw InvalidArgument("empty state vector");
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > kStateTol) {
    std::ostringstream msg;
    msg << "state vector has norm " << norm;
    throw InvalidArgument(msg.str());
  }
  return QuantumState(std::move(amplitudes));
}

QuantumState QuantumState::mixed(CMatrix density) {
  if (density.rows() == 0 || density.rows() != density.cols()) {
    throw DimensionError("density operator must be square and nonempty");
  }
  if (hermiticity_defect(density) > kStateTol) {
    throw InvalidArgument("density operator is not Hermitian");
  }
  const double trace = density.trace().real();
  if (std::abs(trace - 1.0) > kStateTol) {
    throw InvalidArgument("density operator trace is " + std::to_string(trace));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(density, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kPsdTol) {
    throw InvalidArgument("density operator is not positive semidefinite");
  }
  return QuantumState(std::move(density));
}

int QuantumState::dimension() const {
  return std::visit([](const auto& r) { return static_cast<int>(r.rows()); }, rep_);
}

const CVector& QuantumState::amplitudes() const {
  if (!is_pure()) throw InvalidArgument("mixed state has no amplitude vector");
  return std::get<CVector>(rep_);
}

CMatrix QuantumState::density() const {
  if (is_pure()) {
    const auto& v = std::get<CVector>(rep_);
    return v * v.adjoint();
  }
  return std::get<CMatrix>(rep_);
}

BinaryObservable::BinaryObservable(CMatrix projector_plus)
    : projector_plus_(std::move(projector_plus)) {
  if (projector_plus_.rows() == 0 || projector_plus_.rows() != projector_plus_.cols()) {
    throw DimensionError("projector must be square and nonempty");
  }
  if (hermiticity_defect(projector_plus_) > kStateTol) {
    throw InvalidArgument("projector is not Hermitian");
  }
  if ((projector_plus_ * projector_plus_ - projector_plus_).cwiseAbs().maxCoeff() >
      kIdempotenceTol) {
    throw InvalidArgument("projector is not idempotent");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(projector_plus_);
  // Eigenvalues come sorted ascending (0s then 1s); reverse so +1 comes first.
  const auto n = projector_plus_.rows();
  eigenbasis_ = eig.eigenvectors().rowwise().reverse();
  rank_plus_ = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (eig.eigenvalues()(i) > 0.5) ++rank_plus_;
  }
}

BinaryObservable BinaryObservable::from_bloch(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (std::abs(norm - 1.0) > 1e-9) throw InvalidArgument("Bloch vector must be a unit vector");
  x /= norm;
  y /= norm;
  z /= norm;
  CMatrix p(2, 2);
  p << Complex(0.5 * (1 + z), 0), Complex(0.5 * x, -0.5 * y), Complex(0.5 * x, 0.5 * y),
      Complex(0.5 * (1 - z), 0);
  return BinaryObservable(std::move(p));
}

BinaryObservable BinaryObservable::xz_plane(double theta) {
  return from_bloch(std::sin(theta), 0.0, std::cos(theta));
}

CMatrix BinaryObservable::projector(int output) const {
  if (output == 1) return projector_plus_;
  if (output == -1) return CMatrix::Identity(dimension(), dimension()) - projector_plus_;
  throw InvalidArgument("output must be +1 or -1");
}

CMatrix BinaryObservable::observable() const {
  return 2.0 * projector_plus_ - CMatrix::Identity(dimension(), dimension());
}

std::array<double, 3> BinaryObservable::bloch_vector() const {
  if (dimension() != 2) throw DimensionError("Bloch vectors exist for qubit observables only");
  const CMatrix o = observable();
  // O = n.sigma: O01 = nx - i ny, O00 = nz.
  return {o(0, 1).real(), -o(0, 1).imag(), o(0, 0).real()};
}

QuantumState ghz_state(int n) {
  if (n < 2) throw InvalidArgument("GHZ state needs n >= 2 qubits");
  if (n > kMaxQubits) throw InvalidArgument("GHZ state limited to 12 qubits");
  const Eigen::Index d = Eigen::Index{1} << n;
  CVector v = CVector::Zero(d);
  v(0) = v(d - 1) = Complex(1.0 / std::sqrt(2.0), 0.0);
  return QuantumState::pure(std::move(v));
}

QuantumState w_state() {
  CVector v = CVector::Zero(8);
  const Complex a(1.0 / std::sqrt(3.0), 0.0);
  v(1) = v(2) = v(4) = a;
  return QuantumState::pure(std::move(v));
}

QuantumState white_noise_mix(const QuantumState& state, double f) {
  if (!(f >= 0.0 && f <= 1.0)) throw InvalidArgument("fidelity must lie in [0,1]");
  const int d = state.dimension();
  CMatrix rho = f * state.density() +
                ((1.0 - f) / d) * CMatrix::Identity(d, d);
  // Symmetrize away rounding so the Hermiticity check sees an exact adjoint.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return QuantumState::mixed(std::move(rho));
}

CMatrix reduced_density(const QuantumState& state, std::span<const int> dims, int factor) {
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  if (total != static_cast<std::size_t>(state.dimension())) {
    throw DimensionError("factor dimensions do not multiply to the state dimension");
  }
  if (factor < 0 || factor >= static_cast<int>(dims.size())) {
    throw InvalidArgument("factor index out of range");
  }
  std::size_t stride = 1;
  for (std::size_t k = factor + 1; k < dims.size(); ++k) stride *= dims[k];
  const int d = dims[factor];
  const CMatrix rho = state.density();
  CMatrix out = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < total; ++i) {
    const int a = static_cast<int>((i / stride) % d);
    const std::size_t i0 = i - static_cast<std::size_t>(a) * stride;
    for (int b = 0; b < d; ++b) {
      out(a, b) += rho(i, i0 + static_cast<std::size_t>(b) * stride);
    }
  }
  return out;
}

Behavior born_behavior(const QuantumState& state,
                       std::span<const PartyMeasurements> measurements, Execution exec) {
  const BornLayout lay = make_layout(state, measurements);
  const std::size_t patterns = std::size_t{1} << lay.parties;
  std::vector<double> table(lay.contexts * patterns);
  std::atomic<long long> bad_context{-1};

  if (exec == Execution::kSerial) {
    BornScratch scratch;
    for (std::size_t c = 0; c < lay.contexts; ++c) {
      if (!born_context(state, measurements, lay, c, table.data() + c * patterns, scratch)) {
        bad_context = static_cast<long long>(c);
        break;
      }
    }
  } else {
    const auto contexts = static_cast<long long>(lay.contexts);
#pragma omp parallel
    {
      BornScratch scratch;
#pragma omp for schedule(static)
      for (long long c = 0; c < contexts; ++c) {
        if (!born_context(state, measurements, lay, static_cast<std::size_t>(c),
                          table.data() + static_cast<std::size_t>(c) * patterns, scratch)) {
          bad_context = c;
        }
      }
    }
  }
  if (bad_context >= 0) {
    throw InvalidArgument("Born-rule probabilities of context " +
                          std::to_string(bad_context.load()) +
                          " are not a distribution (invalid projectors?)");
  }
  return Behavior(default_party_specs(lay), std::move(table));
}

}  // namespace losr
