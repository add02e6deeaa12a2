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

#ifndef LOSR_COMMON_HPP_
#define LOSR_COMMON_HPP_

#include <stdexcept>
#include <string>

namespace losr {

// Selects between the OpenMP kernel and its serial reference. Both must
// produce bit-identical results; the serial path exists for testing and
// benchmarking.
enum class Execution { kSerial, kParallel };

// Numerical tolerances shared across modules.
inline constexpr double kStateTol = 1e-12;
inline constexpr double kIdempotenceTol = 1e-10;
inline constexpr double kDistributionTol = 1e-9;
inline constexpr double kNonsignallingTol = 1e-8;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// A marginal or correlator was requested on inputs where the behavior signals,
// so the answer would depend on which discarded inputs were picked.
class SignallingError : public Error {
 public:
  using Error::Error;
};

class DegenerateConditioningError : public Error {
 public:
  using Error::Error;
};

}  // namespace losr

#endif  // LOSR_COMMON_HPP_
