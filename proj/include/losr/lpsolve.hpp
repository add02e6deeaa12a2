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

// Feasibility linear programs over nonnegative variables:
//
//   find x >= 0  with  sum_j M_ij x_j (=, <=, >=) b_i  for every row i.
//
// An infeasible verdict is always backed by a Farkas vector y with
//   y_i free for = rows, y_i <= 0 for <= rows, y_i >= 0 for >= rows,
//   y^T M <= 0 columnwise and y^T b > 0,
// which anyone can check with validate_certificate().

#ifndef LOSR_LPSOLVE_HPP_
#define LOSR_LPSOLVE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "losr/common.hpp"

namespace losr {

inline constexpr double kCertificateGap = 1e-9;
inline constexpr double kPrimalResidualTol = 1e-8;

enum class Relation { kEq, kLe, kGe };

struct LpTerm {
  int var = 0;
  double coef = 0.0;
};

struct LpRow {
  std::vector<LpTerm> terms;
  Relation rel = Relation::kEq;
  double rhs = 0.0;
  std::string label;
};

class LpProblem {
 public:
  LpProblem() = default;
  explicit LpProblem(int num_vars) : num_vars_(num_vars) {}

  int num_vars() const { return num_vars_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  std::size_t num_nonzeros() const;
  const std::vector<LpRow>& rows() const { return rows_; }
  const LpRow& row(int i) const { return rows_.at(i); }

  // Returns the index of the first new variable.
  int add_variables(int count);
  // Merges repeated variables, drops zero coefficients and checks indices.
  void add_row(LpRow row);
  void add_rows(std::vector<LpRow> rows);

  // Largest constraint violation of x, relative to max(1, |b_i|); negative
  // entries of x count as violations too.
  double max_residual(std::span<const double> x) const;

 private:
  int num_vars_ = 0;
  std::vector<LpRow> rows_;
};

enum class SolveStatus { kFeasible, kInfeasible, kNumericalFailure };
const char* to_string(SolveStatus status);

enum class Backend { kDense, kExact };
enum class PivotRule { kBland, kDantzig };

// Reads LOSR_LP_BACKEND ("dense" or "exact"); defaults to dense.
Backend backend_from_env();
const char* to_string(Backend backend);

struct SolverOptions {
  Backend backend = Backend::kDense;
  PivotRule pivot = PivotRule::kBland;
  bool presolve = true;
  Execution exec = Execution::kParallel;
  long max_iterations = 5'000'000;
  double feasibility_tol = 1e-9;
};

struct SolverResult {
  SolveStatus status = SolveStatus::kNumericalFailure;
  std::vector<double> primal;  // feasible only
  std::vector<double> dual;    // infeasible only: the Farkas vector
  double gap = 0.0;            // validated certificate slack (infeasible only)
  long iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;  // largest positive entry of y^T M
  int presolved_rows = 0;
  int presolved_vars = 0;
  std::string message;
};

SolverResult solve_feasibility(const LpProblem& lp, const SolverOptions& options = {});

// Problem reduction with an exact correspondence of solution sets:
//   * rows are rescaled to unit max-norm and duplicates removed,
//   * singleton equalities fix a variable, which is substituted away,
//   * two-variable equalities with zero right-hand side either tie the
//     variables (x_i = alpha x_j, alpha > 0) or force both to zero,
//   * empty rows are dropped or, if contradictory, prove infeasibility.
// Every reduced row is a recorded linear combination of original rows, so
// reduced certificates map back to certificates of the original problem.
struct PresolveResult {
  struct Combination {
    std::vector<std::pair<int, double>> terms;  // (original row, weight)
  };
  struct Substitution {
    enum Kind { kFixed, kScaled };
    int var = 0;
    Kind kind = kFixed;
    double value = 0.0;  // kFixed: x_var = value; kScaled: x_var = value * x_target
    int target = -1;
  };
  // A row a x_i + c x_j = 0 with a, c of equal sign, used to zero both.
  struct ZeroPair {
    Combination row;
    int var_a = 0, var_b = 0;
  };

  LpProblem original;
  LpProblem reduced;
  // Set when presolve alone proves infeasibility; `certificate` then holds a
  // Farkas vector for the original problem.
  bool infeasible = false;
  std::vector<double> certificate;

  std::vector<Combination> row_origin;      // per reduced row
  std::vector<int> var_origin;              // reduced var -> original var
  std::vector<Substitution> substitutions;  // in elimination order
  std::vector<ZeroPair> zero_pairs;         // in detection order

  int removed_rows() const { return original.num_rows() - reduced.num_rows(); }
  int removed_vars() const { return original.num_vars() - reduced.num_vars(); }

  // Farkas vector for the original rows, normalized to max |y| = 1.
  std::vector<double> map_certificate(std::span<const double> reduced_y) const;
  std::vector<double> map_primal(std::span<const double> reduced_x) const;
};

PresolveResult presolve(const LpProblem& lp);

enum class OptimizeStatus { kOptimal, kInfeasible, kUnbounded, kFailure };

struct OptimizeResult {
  OptimizeStatus status = OptimizeStatus::kFailure;
  double value = 0.0;
  std::vector<double> primal;
  long iterations = 0;
};

// Maximizes objective . x over the feasible set (two-phase simplex).
OptimizeResult maximize(const LpProblem& lp, std::span<const double> objective,
                        const SolverOptions& options = {});

// Certificate slack: y^T b - sum_j max(0, (y^T M)_j) * u_j, where u_j is an
// upper bound on x_j implied by the problem's own rows (a row with nonnegative
// coefficients, an = or <= relation and b_i >= 0). Returns -infinity when a
// column with positive weight has no implied bound or when a sign of y does
// not match its row's relation.
double certificate_slack(const LpProblem& lp, std::span<const double> y);

// True iff the dimensions match, the sign pattern is valid and the slack is at
// least `gap`.
bool validate_certificate(const LpProblem& lp, std::span<const double> y,
                          double gap = kCertificateGap);

// Sparse row-oriented text format, one constraint per line:
//   # comment
//   vars 3
//   row0: +1*x0 +1*x1 = 1
//   cap: +2*x2 -0.5*x0 <= 0.25
// Labels are optional; coefficients are written with 17 significant digits.
std::string to_lp_text(const LpProblem& lp);
LpProblem lp_from_text(std::string_view text);

std::string certificate_to_json(std::span<const double> y, double gap);
std::vector<double> certificate_from_json(const std::string& text);

}  // namespace losr

#endif  // LOSR_LPSOLVE_HPP_
