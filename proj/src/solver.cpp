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

#include <algorithm>
#include <cmath>

#include "losr/lpsolve.hpp"
#include "simplex.hpp"

namespace losr {
namespace {

constexpr int kExactVariableLimit = 2000;

double dual_residual(const LpProblem& lp, std::span<const double> y) {
  std::vector<long double> r(lp.num_vars(), 0.0L);
  for (int i = 0; i < lp.num_rows(); ++i) {
    for (const LpTerm& t : lp.rows()[i].terms) r[t.var] += static_cast<long double>(y[i]) * t.coef;
  }
  long double worst = 0.0L;
  for (long double v : r) worst = std::max(worst, v);
  return static_cast<double>(worst);
}

double rhs_norm(const LpProblem& lp) {
  double s = 0.0;
  for (const LpRow& r : lp.rows()) {
    double big = 0.0;
    for (const LpTerm& t : r.terms) big = std::max(big, std::abs(t.coef));
    s += big > 0.0 ? std::abs(r.rhs) / big : 0.0;
  }
  return s;
}

struct RawOutcome {
  SolveStatus status = SolveStatus::kNumericalFailure;
  std::vector<double> x;  // for `lp` as passed
  std::vector<double> y;  // raw Farkas vector for `lp`, unnormalized
  long iterations = 0;
  std::string message;
};

template <class S>
RawOutcome phase_one(const LpProblem& lp, const SolverOptions& opt) {
  RawOutcome out;
  detail::Tableau<S> tab(lp, opt.pivot, opt.exec);
  const detail::PhaseStatus st = tab.run(opt.max_iterations);
  out.iterations = tab.iterations();
  if (st != detail::PhaseStatus::kOptimal) {
    out.message = st == detail::PhaseStatus::kIterationLimit ? "iteration limit reached"
                                                             : "phase one reported unbounded";
    return out;
  }
  const double w = detail::ScalarOps<S>::to_double(tab.objective_value());
  const bool zero = detail::ScalarOps<S>::kExact ? tab.objective_value() == 0
                                                 : w <= opt.feasibility_tol * (1.0 + rhs_norm(lp));
  if (zero) {
    out.status = SolveStatus::kFeasible;
    out.x = tab.primal();
  } else {
    out.status = SolveStatus::kInfeasible;
    out.y = tab.farkas();
  }
  return out;
}

RawOutcome run_backend(const LpProblem& lp, const SolverOptions& opt) {
  if (lp.num_rows() == 0) {
    RawOutcome out;
    out.status = SolveStatus::kFeasible;
    out.x.assign(lp.num_vars(), 0.0);
    return out;
  }
  if (opt.backend == Backend::kExact) {
    if (lp.num_vars() > kExactVariableLimit) {
      throw InvalidArgument("exact backend is limited to " + std::to_string(kExactVariableLimit) +
                            " variables, problem has " + std::to_string(lp.num_vars()));
    }
    return phase_one<mpq_class>(lp, opt);
  }
  return phase_one<double>(lp, opt);
}

// Checks a raw outcome against the original problem and fills the result.
void finish(const LpProblem& original, std::vector<double> x, std::vector<double> y,
            SolveStatus raw, SolverResult& res) {
  if (raw == SolveStatus::kFeasible) {
    for (double& v : x) v = std::max(v, 0.0);
    res.primal_residual = original.max_residual(x);
    if (res.primal_residual <= kPrimalResidualTol) {
      res.status = SolveStatus::kFeasible;
      res.primal = std::move(x);
    } else {
      res.status = SolveStatus::kNumericalFailure;
      res.message = "primal residual " + std::to_string(res.primal_residual) + " above tolerance";
    }
    return;
  }
  if (raw == SolveStatus::kInfeasible) {
    double big = 0.0;
    for (double v : y) big = std::max(big, std::abs(v));
    if (big > 0.0) {
      for (double& v : y) v /= big;
    }
    // Round-off can leave inequality multipliers just on the wrong side of 0.
    for (int i = 0; i < original.num_rows(); ++i) {
      const Relation rel = original.rows()[i].rel;
      if ((rel == Relation::kLe && y[i] > 0.0 && y[i] < 1e-9) ||
          (rel == Relation::kGe && y[i] < 0.0 && y[i] > -1e-9)) {
        y[i] = 0.0;
      }
    }
    res.gap = certificate_slack(original, y);
    res.dual_residual = dual_residual(original, y);
    if (res.gap >= kCertificateGap) {
      res.status = SolveStatus::kInfeasible;
      res.dual = std::move(y);
    } else {
      res.status = SolveStatus::kNumericalFailure;
      res.message = "Farkas certificate failed validation (slack " + std::to_string(res.gap) + ")";
    }
    return;
  }
  res.status = SolveStatus::kNumericalFailure;
}

SolverResult solve_once(const LpProblem& lp, const SolverOptions& opt) {
  SolverResult res;
  if (!opt.presolve || opt.backend == Backend::kExact) {
    RawOutcome raw = run_backend(lp, opt);
    res.iterations = raw.iterations;
    res.message = raw.message;
    finish(lp, std::move(raw.x), std::move(raw.y), raw.status, res);
    return res;
  }
  const PresolveResult pre = presolve(lp);
  res.presolved_rows = pre.reduced.num_rows();
  res.presolved_vars = pre.reduced.num_vars();
  if (pre.infeasible) {
    finish(lp, {}, pre.certificate, SolveStatus::kInfeasible, res);
    return res;
  }
  RawOutcome raw = run_backend(pre.reduced, opt);
  res.iterations = raw.iterations;
  res.message = raw.message;
  std::vector<double> x, y;
  if (raw.status == SolveStatus::kFeasible) x = pre.map_primal(raw.x);
  if (raw.status == SolveStatus::kInfeasible) y = pre.map_certificate(raw.y);
  finish(lp, std::move(x), std::move(y), raw.status, res);
  return res;
}

}  // namespace

SolverResult solve_feasibility(const LpProblem& lp, const SolverOptions& options) {
  SolverResult res = solve_once(lp, options);
  if (res.status == SolveStatus::kNumericalFailure && options.presolve &&
      options.backend == Backend::kDense) {
    // The reduced problem can be worse conditioned than the original; retry.
    SolverOptions plain = options;
    plain.presolve = false;
    SolverResult retry = solve_once(lp, plain);
    retry.iterations += res.iterations;
    if (retry.status != SolveStatus::kNumericalFailure) return retry;
  }
  return res;
}

namespace {

template <class S>
OptimizeResult maximize_impl(const LpProblem& lp, std::span<const double> objective,
                             const SolverOptions& opt) {
  OptimizeResult out;
  detail::Tableau<S> tab(lp, opt.pivot, opt.exec);
  if (tab.run(opt.max_iterations) != detail::PhaseStatus::kOptimal) return out;
  const double w = detail::ScalarOps<S>::to_double(tab.objective_value());
  const bool zero = detail::ScalarOps<S>::kExact ? tab.objective_value() == 0
                                                 : w <= opt.feasibility_tol * (1.0 + rhs_norm(lp));
  if (!zero) {
    out.status = OptimizeStatus::kInfeasible;
    out.iterations = tab.iterations();
    return out;
  }
  tab.drive_out_artificials();
  tab.set_maximize(objective);
  const detail::PhaseStatus st = tab.run(opt.max_iterations);
  out.iterations = tab.iterations();
  if (st == detail::PhaseStatus::kUnbounded) {
    out.status = OptimizeStatus::kUnbounded;
    return out;
  }
  if (st != detail::PhaseStatus::kOptimal) return out;
  out.primal = tab.primal();
  for (double& v : out.primal) v = std::max(v, 0.0);
  if (lp.max_residual(out.primal) > kPrimalResidualTol) return out;
  long double value = 0.0L;
  for (int j = 0; j < lp.num_vars(); ++j) value += static_cast<long double>(objective[j]) * out.primal[j];
  out.value = static_cast<double>(value);
  out.status = OptimizeStatus::kOptimal;
  return out;
}

}  // namespace

OptimizeResult maximize(const LpProblem& lp, std::span<const double> objective,
                        const SolverOptions& options) {
  if (static_cast<int>(objective.size()) != lp.num_vars()) {
    throw DimensionError("objective size does not match the problem");
  }
  if (options.backend == Backend::kExact) {
    if (lp.num_vars() > kExactVariableLimit) throw InvalidArgument("problem too large for the exact backend");
    return maximize_impl<mpq_class>(lp, objective, options);
  }
  return maximize_impl<double>(lp, objective, options);
}

}  // namespace losr
