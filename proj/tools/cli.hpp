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

// The `losr` command line, callable in-process.
//
//   losr evaluate <behavior> [--exact] [--tol T]
//   losr certify <behavior> [--order N] [--wiring ring|cut]
//                [--restrict-inputs games|full] [--exact] [--pivot bland|dantzig]
//                [--no-presolve] [--cert-out F] [--lp-out F] [--witness-out F]
//   losr sweep --family noisy-ghz --from A --to B --step S
//              [--mode inequality|lp] [--order N] [--wiring ring|cut]
//              [--pivot P] [--jobs J] [--precision P] [--csv F]
//   losr generate <behavior> [--out F]
//   losr strategy ghz|ghz-n:N [--out F]
//   losr check-cert --lp F --cert F [--gap G]
//
// <behavior> is a JSON file or a builtin: ghz, ns-box, classical-opt,
// noisy-ghz:f, ghz-n:N (each also as a versioned alias, e.g. ghz@1).
// evaluate, certify, sweep and check-cert print a JSON run report on stdout
// (also --report F) and a short human summary on stderr; generate and
// strategy print their JSON.
//
// Exit codes: 0 success / feasible / valid certificate, 1 usage or input
// error or invalid certificate, 2 infeasible, 3 numerical failure.

#ifndef LOSR_TOOLS_CLI_HPP_
#define LOSR_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "losr/behavior.hpp"

namespace losr::cli {

inline constexpr const char* kVersion = "1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitNumerical = 3;

struct ResolvedBehavior {
  std::string name;   // canonical alias, e.g. "noisy-ghz@1:0.5", or the file path
  Behavior behavior;
};

// Builtin aliases or a JSON file path.
ResolvedBehavior resolve_behavior(const std::string& spec);

// SHA-256 of the canonical JSON form of a behavior, hex encoded.
std::string behavior_hash(const Behavior& behavior);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace losr::cli

#endif  // LOSR_TOOLS_CLI_HPP_
