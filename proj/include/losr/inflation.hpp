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

// Nonfanout inflations of the triangle (sources AB, BC, CA between parties
// A, B, C) with global shared randomness, and the linear feasibility test they
// induce for a target tripartite behavior.
//
// An inflated party holds one copy of each of its two incident sources; the
// shared randomness reaches every party and is not represented explicitly.
// Only constraints that survive mixing over the shared randomness are used:
// normalization, nonsignalling of the inflated distribution, invariance under
// copy relabelings, marginals of injectable sets equal to the target's, and
// equal marginals for subsets that see isomorphic environments.

#ifndef LOSR_INFLATION_HPP_
#define LOSR_INFLATION_HPP_

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "losr/behavior.hpp"
#include "losr/lpsolve.hpp"

namespace losr {

// Party types double as indices into the target behavior (A, B, C) and into
// the source arrays below (AB, BC, CA).
inline constexpr int kPartyA = 0;
inline constexpr int kPartyB = 1;
inline constexpr int kPartyC = 2;
inline constexpr int kSourceAB = 0;
inline constexpr int kSourceBC = 1;
inline constexpr int kSourceCA = 2;

// Sources incident to each party type.
bool party_uses_source(int type, int source);

struct InflatedParty {
  int type = kPartyA;
  int copy = 1;                         // 1-based, for labels only
  std::array<int, 3> source{-1, -1, -1};  // copy index of AB, BC, CA; -1 if not incident

  std::string label() const;  // e.g. "A2"
  friend bool operator==(const InflatedParty&, const InflatedParty&) = default;
};

class InflationGraph {
 public:
  // Validates the wiring (one copy of each incident source, no source half
  // handed to two parties) and computes the automorphism group.
  InflationGraph(std::string name, std::vector<InflatedParty> parties);

  // order 2: one hexagon. order 3: an original-scenario triangle plus a
  // hexagon. Other orders are rejected.
  static InflationGraph ring(int order);
  // The six-party cut of the order-3 ring (triangle plus the half hexagon
  // A2 B2 C2); some source halves are held by no party.
  static InflationGraph ring3_cut();

  const std::string& name() const { return name_; }
  int num_parties() const { return static_cast<int>(parties_.size()); }
  const std::vector<InflatedParty>& parties() const { return parties_; }
  const InflatedParty& party(int i) const { return parties_.at(i); }
  std::array<int, 3> source_copies() const;
  bool shares_source(int i, int j) const;
  int find(const std::string& label) const;  // -1 if absent

  // Party permutations induced by copy relabelings that map the wiring onto
  // itself; perm[i] is the image of party i. Identity first.
  const std::vector<std::vector<int>>& automorphisms() const { return automorphisms_; }
  bool is_automorphism(const std::vector<int>& perm) const;

  // Same wiring with copy labels of each source permuted (perm[s][old] = new)
  // and parties listed in a new order (result party k = old party order[k]).
  InflationGraph relabeled(const std::array<std::vector<int>, 3>& source_perm,
                           const std::vector<int>& order) const;

 private:
  std::string name_;
  std::vector<InflatedParty> parties_;
  std::vector<std::vector<int>> automorphisms_;
};

// Brute force over per-source copy permutations.
std::vector<std::vector<int>> compute_automorphisms(const std::vector<InflatedParty>& parties);

// Canonical environment of a set of distinct-type parties: the sorted types
// plus, for each pair, whether they share a source copy.
std::string environment_signature(const InflationGraph& graph, const std::vector<int>& subset);

struct InjectableSet {
  std::vector<int> parties;  // sorted by type
  std::vector<int> image;    // the types, i.e. target party indices
  std::string signature;
};

// Subsets of distinct-type parties up to max_size whose every pair shares a
// source copy, i.e. whose environment matches the original triangle's.
std::vector<InjectableSet> injectable_sets(const InflationGraph& graph, int max_size = 3);

// Classes of non-injectable distinct-type subsets with equal signatures; each
// class has at least two members, every member sorted by type.
std::vector<std::vector<std::vector<int>>> environment_classes(const InflationGraph& graph,
                                                               int max_size = 3);

// Allowed inputs per inflated party; contexts are their product.
struct InputRestriction {
  std::vector<std::vector<int>> allowed;

  // Parties of an injectable triangle get the inputs of the conditioned Bell
  // game (A: 0,1; B: 0,1; C: 1); every other party gets the same-game inputs
  // (A: 0; B: 2; C: 0).
  static InputRestriction games(const InflationGraph& graph);
  // Every input of the target for every party.
  static InputRestriction full(const InflationGraph& graph, const std::vector<PartySpec>& target);

  std::size_t num_contexts() const;
  std::vector<int> context_inputs(std::size_t ctx) const;
  std::size_t context_index(const std::vector<int>& inputs) const;  // throws if not allowed
  bool allows(int party, int input) const;
  bool closed_under(const InflationGraph& graph) const;
};

struct ConstraintSelection {
  bool nonsignalling = true;
  bool symmetry = true;
  bool injectable = true;
  bool isomorphism = true;
  // When set, only these subsets (party indices, any order) contribute
  // injectable and isomorphism rows.
  std::optional<std::vector<std::vector<int>>> subsets;
};

struct AssembledLp {
  LpProblem lp;
  InputRestriction restriction;
  int num_parties = 0;
  int rows_normalization = 0;
  int rows_nonsignalling = 0;
  int rows_symmetry = 0;
  int rows_injectable = 0;
  int rows_isomorphism = 0;

  // Variable index of Q(pattern | context).
  int var(std::size_t ctx, std::size_t pattern) const {
    return static_cast<int>((ctx << num_parties) + pattern);
  }
};

// Throws SignallingError for a signalling target and InvalidArgument when the
// restriction is not closed under the automorphisms or asks for inputs the
// target lacks.
AssembledLp assemble_lp(const InflationGraph& graph, const Behavior& target,
                        const InputRestriction& restriction,
                        const ConstraintSelection& selection = {},
                        Execution exec = Execution::kParallel);

enum class Wiring { kRing, kRing3Cut };
enum class RestrictionMode { kGames, kFull };

struct CertifyConfig {
  int order = 3;
  Wiring wiring = Wiring::kRing;
  RestrictionMode restriction = RestrictionMode::kGames;
  ConstraintSelection selection;
  SolverOptions solver;
  Execution assembly = Execution::kParallel;
};

InflationGraph build_graph(const CertifyConfig& config);

struct FeasibilityOutcome {
  // kInfeasible: the target admits no model with bipartite resources and
  // shared randomness. kFeasible: inconclusive.
  SolveStatus verdict = SolveStatus::kNumericalFailure;
  std::vector<double> witness;      // inflated distribution, feasible only
  std::vector<double> certificate;  // Farkas vector, infeasible only
  double certificate_gap = 0.0;
  long iterations = 0;
  int rows = 0, vars = 0;
  int presolved_rows = 0, presolved_vars = 0;
  double assemble_seconds = 0.0, solve_seconds = 0.0;
  std::string graph_name;
  std::string message;
  LpProblem lp;
};

FeasibilityOutcome certify(const Behavior& target, const CertifyConfig& config = {});
// Same on an explicit graph and restriction; config's order and wiring are
// ignored.
FeasibilityOutcome certify_on(const InflationGraph& graph, const Behavior& target,
                              const InputRestriction& restriction, const CertifyConfig& config = {});

struct BisectionResult {
  double threshold = 0.0;  // midpoint of the final bracket
  double lo = 0.0, hi = 1.0;
  bool monotone = true;
  std::vector<std::pair<double, SolveStatus>> evaluations;  // sorted by f
  std::string note;
};

// Smallest f with an infeasible verdict, assuming the family's LP verdicts
// switch once from feasible to infeasible as f grows. Requires family(0)
// feasible and family(1) infeasible. Numerical failures stop the search and
// are reported in `note`; extra points can be added to the monotonicity check.
BisectionResult threshold_bisect(const std::function<Behavior(double)>& family,
                                 const CertifyConfig& config, double precision,
                                 const std::vector<std::pair<double, SolveStatus>>& extra = {});

// Monotone iff no feasible verdict appears above an infeasible one.
bool verdicts_monotone(std::vector<std::pair<double, SolveStatus>> evaluations);

// Bisection of a boolean predicate that is false at lo and true at hi.
double bisect_predicate(const std::function<bool(double)>& holds, double lo, double hi,
                        double precision);

}  // namespace losr

#endif  // LOSR_INFLATION_HPP_
