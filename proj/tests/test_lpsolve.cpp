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
#include <cstdlib>
#include <random>
#include <string>

#include "losr/inflation.hpp"
#include "losr/lpsolve.hpp"
#include "losr/strategies.hpp"

namespace losr {
namespace {

LpProblem single(double rhs) {
  LpProblem lp(1);
  lp.add_row({{{0, 1.0}}, Relation::kEq, rhs, "x"});
  return lp;
}

// Feasible by construction: b = M x0 with x0 >= 0; a cap row bounds every
// variable. With `infeasible`, a last row demands sum x >= cap + 1.
LpProblem random_lp(std::mt19937_64& rng, int m, int n, bool infeasible) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_real_distribution<double> pos(0, 1);
  std::vector<double> x0(n);
  for (double& x : x0) x = pos(rng) < 0.3 ? 0.0 : pos(rng);
  LpProblem lp(n);
  for (int i = 0; i < m; ++i) {
    LpRow r;
    r.label = "r" + std::to_string(i);
    double b = 0;
    for (int j = 0; j < n; ++j) {
      if (pos(rng) < 0.5) continue;
      const double c = u(rng);
      r.terms.push_back({j, c});
      b += c * x0[j];
    }
    r.rel = i % 3 == 0 ? Relation::kLe : (i % 3 == 1 ? Relation::kGe : Relation::kEq);
    r.rhs = r.rel == Relation::kLe ? b + 0.1 : (r.rel == Relation::kGe ? b - 0.1 : b);
    lp.add_row(std::move(r));
  }
  LpRow cap{{}, Relation::kLe, static_cast<double>(n), "cap"};
  for (int j = 0; j < n; ++j) cap.terms.push_back({j, 1.0});
  lp.add_row(cap);
  if (infeasible) {
    LpRow over{cap.terms, Relation::kGe, n + 1.0, "over"};
    lp.add_row(over);
  }
  return lp;
}

TEST(Solve, OneDimensionalFeasible) {
  const SolverResult r = solve_feasibility(single(1.0));
  ASSERT_EQ(r.status, SolveStatus::kFeasible);
  EXPECT_NEAR(r.primal[0], 1.0, 1e-12);
  EXPECT_LE(r.primal_residual, kPrimalResidualTol);
}

TEST(Solve, OneDimensionalInfeasible) {
  const LpProblem lp = single(-1.0);
  const SolverResult r = solve_feasibility(lp);
  ASSERT_EQ(r.status, SolveStatus::kInfeasible);
  ASSERT_EQ(r.dual.size(), 1u);
  EXPECT_GT(r.dual[0] * -1.0, 0.0);
  EXPECT_LE(r.dual[0] * 1.0, 0.0);
  EXPECT_TRUE(validate_certificate(lp, r.dual));
  EXPECT_GE(r.gap, kCertificateGap);
}

TEST(Certificate, ZeroAndPerturbedAreInvalid) {
  const LpProblem lp = single(-1.0);
  const std::vector<double> zero = {0.0};
  EXPECT_FALSE(validate_certificate(lp, zero));
  const SolverResult r = solve_feasibility(lp);
  std::vector<double> bad = r.dual;
  bad[0] += 1.0;
  EXPECT_FALSE(validate_certificate(lp, bad));
  EXPECT_FALSE(validate_certificate(lp, std::vector<double>{}));
}

TEST(Certificate, SignMustMatchRelation) {
  LpProblem lp(1);
  lp.add_row({{{0, 1.0}}, Relation::kLe, -1.0, "le"});
  // x <= -1: multiplier must be <= 0.
  EXPECT_TRUE(validate_certificate(lp, std::vector<double>{-1.0}));
  EXPECT_FALSE(validate_certificate(lp, std::vector<double>{1.0}));
  LpProblem ge(1);
  ge.add_row({{{0, -1.0}}, Relation::kGe, 1.0, "ge"});
  EXPECT_TRUE(validate_certificate(ge, std::vector<double>{1.0}));
  EXPECT_FALSE(validate_certificate(ge, std::vector<double>{-1.0}));
}

TEST(Certificate, TwoRowContradiction) {
  // x + y = 1, x - y >= 2 is infeasible.
  LpProblem lp(2);
  lp.add_row({{{0, 1.0}, {1, 1.0}}, Relation::kEq, 1.0, "sum"});
  lp.add_row({{{0, 1.0}, {1, -1.0}}, Relation::kGe, 2.0, "diff"});
  const std::vector<double> y = {-1.0, 1.0};  // y^T M = (0, -2), y^T b = 1
  EXPECT_NEAR(certificate_slack(lp, y), 1.0, 1e-15);
  EXPECT_TRUE(validate_certificate(lp, y));
  const SolverResult r = solve_feasibility(lp);
  ASSERT_EQ(r.status, SolveStatus::kInfeasible);
  EXPECT_TRUE(validate_certificate(lp, r.dual));
}

TEST(Solve, RandomProblemsBothBackends) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    const bool infeasible = t % 2 == 1;
    const LpProblem lp = random_lp(rng, 6 + t % 5, 8 + t % 7, infeasible);
    for (Backend backend : {Backend::kDense, Backend::kExact}) {
      SolverOptions o;
      o.backend = backend;
      const SolverResult r = solve_feasibility(lp, o);
      ASSERT_EQ(r.status, infeasible ? SolveStatus::kInfeasible : SolveStatus::kFeasible)
          << "t=" << t << " backend=" << to_string(backend) << " " << r.message;
      if (infeasible) {
        EXPECT_TRUE(validate_certificate(lp, r.dual));
      } else {
        EXPECT_LE(lp.max_residual(r.primal), kPrimalResidualTol);
      }
    }
  }
}

TEST(Solve, PivotRulesAgree) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 20; ++t) {
    const LpProblem lp = random_lp(rng, 10, 14, t % 3 == 0);
    SolverOptions bland, dantzig;
    dantzig.pivot = PivotRule::kDantzig;
    EXPECT_EQ(solve_feasibility(lp, bland).status, solve_feasibility(lp, dantzig).status);
  }
}

TEST(Solve, ScalingInvariance) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> scale(0.001, 1000);
  for (int t = 0; t < 20; ++t) {
    const LpProblem lp = random_lp(rng, 8, 10, t % 2 == 0);
    LpProblem scaled(lp.num_vars());
    for (const LpRow& r : lp.rows()) {
      LpRow s = r;
      const double k = scale(rng);
      for (LpTerm& term : s.terms) term.coef *= k;
      s.rhs *= k;
      scaled.add_row(s);
    }
    EXPECT_EQ(solve_feasibility(lp).status, solve_feasibility(scaled).status);
  }
}

TEST(Solve, Deterministic) {
  std::mt19937_64 rng(29);
  const LpProblem lp = random_lp(rng, 12, 16, true);
  const SolverResult a = solve_feasibility(lp);
  const SolverResult b = solve_feasibility(lp);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.dual, b.dual);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Solve, SerialAndParallelPivotsAgree) {
  const InflationGraph g = InflationGraph::ring3_cut();
  const AssembledLp a = assemble_lp(g, noisy_ghz_behavior(1.0), InputRestriction::games(g));
  SolverOptions serial, parallel;
  serial.exec = Execution::kSerial;
  const SolverResult rs = solve_feasibility(a.lp, serial);
  const SolverResult rp = solve_feasibility(a.lp, parallel);
  EXPECT_EQ(rs.status, rp.status);
  EXPECT_EQ(rs.iterations, rp.iterations);
  EXPECT_EQ(rs.dual, rp.dual);
}

TEST(Solve, MalformedProblems) {
  LpProblem lp(2);
  EXPECT_THROW(lp.add_row({{{2, 1.0}}, Relation::kEq, 1.0, ""}), DimensionError);
  EXPECT_THROW(lp.add_row({{{0, std::nan("")}}, Relation::kEq, 1.0, ""}), InvalidArgument);
  EXPECT_THROW(lp.add_row({{{0, 1.0}}, Relation::kEq, INFINITY, ""}), InvalidArgument);
}

TEST(Solve, ExactBackendSizeLimit) {
  LpProblem lp(2001);
  LpRow r{{}, Relation::kEq, 1.0, "sum"};
  for (int j = 0; j < 2001; ++j) r.terms.push_back({j, 1.0});
  lp.add_row(r);
  SolverOptions o;
  o.backend = Backend::kExact;
  EXPECT_THROW(solve_feasibility(lp, o), InvalidArgument);
}

TEST(Solve, BackendFromEnvironment) {
  ::setenv("LOSR_LP_BACKEND", "exact", 1);
  EXPECT_EQ(backend_from_env(), Backend::kExact);
  ::setenv("LOSR_LP_BACKEND", "dense", 1);
  EXPECT_EQ(backend_from_env(), Backend::kDense);
  ::setenv("LOSR_LP_BACKEND", "bogus", 1);
  EXPECT_THROW(backend_from_env(), InvalidArgument);
  ::unsetenv("LOSR_LP_BACKEND");
  EXPECT_EQ(backend_from_env(), Backend::kDense);
}

TEST(Presolve, DuplicateRowRemoved) {
  LpProblem lp(2);
  lp.add_row({{{0, 1.0}, {1, 2.0}}, Relation::kEq, 3.0, "r0"});
  lp.add_row({{{0, 2.0}, {1, 4.0}}, Relation::kEq, 6.0, "r1"});
  lp.add_row({{{0, 1.0}, {1, -1.0}}, Relation::kLe, 5.0, "r2"});
  const PresolveResult p = presolve(lp);
  EXPECT_EQ(p.reduced.num_rows(), 2);
  EXPECT_EQ(p.removed_rows(), 1);
}

TEST(Presolve, TiedVariablesEliminated) {
  // x - y = 0 and y = 0.5.
  LpProblem lp(3);
  lp.add_row({{{0, 1.0}, {1, -1.0}}, Relation::kEq, 0.0, "tie"});
  lp.add_row({{{1, 1.0}}, Relation::kEq, 0.5, "fix"});
  lp.add_row({{{0, 1.0}, {1, 1.0}, {2, 1.0}}, Relation::kEq, 2.0, "sum"});
  const PresolveResult p = presolve(lp);
  // Substituting both ties leaves z = 1, which is fixed as well.
  EXPECT_EQ(p.removed_vars(), 3);
  EXPECT_EQ(p.substitutions.size(), 3u);
  const SolverResult r = solve_feasibility(lp);
  ASSERT_EQ(r.status, SolveStatus::kFeasible);
  EXPECT_NEAR(r.primal[0], 0.5, 1e-12);
  EXPECT_NEAR(r.primal[1], 0.5, 1e-12);
  EXPECT_NEAR(r.primal[2], 1.0, 1e-12);
}

TEST(Presolve, DetectsInfeasibilityWithCertificate) {
  LpProblem lp(2);
  lp.add_row({{{0, 1.0}}, Relation::kEq, 1.0, "a"});
  lp.add_row({{{0, 1.0}, {1, 1.0}}, Relation::kEq, 0.5, "b"});
  SolverOptions o;
  const SolverResult r = solve_feasibility(lp, o);
  ASSERT_EQ(r.status, SolveStatus::kInfeasible);
  EXPECT_TRUE(validate_certificate(lp, r.dual));
}

TEST(Presolve, CertificateRoundTripOnInflationLp) {
  const InflationGraph g = InflationGraph::ring(3);
  const AssembledLp a = assemble_lp(g, noisy_ghz_behavior(1.0), InputRestriction::games(g));
  const PresolveResult p = presolve(a.lp);
  EXPECT_LT(p.reduced.num_vars(), a.lp.num_vars());
  EXPECT_LT(p.reduced.num_rows(), a.lp.num_rows());
  ASSERT_FALSE(p.infeasible);
  SolverOptions o;
  o.presolve = false;
  const SolverResult reduced = solve_feasibility(p.reduced, o);
  ASSERT_EQ(reduced.status, SolveStatus::kInfeasible);
  EXPECT_TRUE(validate_certificate(p.reduced, reduced.dual));
  EXPECT_TRUE(validate_certificate(a.lp, p.map_certificate(reduced.dual)));
}

TEST(Presolve, VerdictUnchangedOnInflationLps) {
  const InflationGraph g = InflationGraph::ring3_cut();
  for (double f : {0.0, 0.86, 0.9, 1.0}) {
    const AssembledLp a = assemble_lp(g, noisy_ghz_behavior(f), InputRestriction::games(g));
    SolverOptions with, without;
    without.presolve = false;
    const SolverResult r1 = solve_feasibility(a.lp, with);
    const SolverResult r2 = solve_feasibility(a.lp, without);
    EXPECT_EQ(r1.status, r2.status) << f;
    if (r1.status == SolveStatus::kFeasible) EXPECT_LE(a.lp.max_residual(r1.primal), kPrimalResidualTol);
  }
}

TEST(Presolve, RandomRoundTrip) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    LpProblem lp = random_lp(rng, 6, 9, t % 2 == 0);
    // Add structure presolve acts on: a tie, a fixed variable, a duplicate.
    lp.add_row({{{0, 1.0}, {1, -2.0}}, Relation::kEq, 0.0, "tie"});
    lp.add_row({{{2, 4.0}}, Relation::kEq, 0.0, "zero"});
    lp.add_row(lp.row(0));
    const SolverResult r = solve_feasibility(lp);
    ASSERT_NE(r.status, SolveStatus::kNumericalFailure) << r.message;
    SolverOptions raw;
    raw.presolve = false;
    EXPECT_EQ(solve_feasibility(lp, raw).status, r.status);
    if (r.status == SolveStatus::kInfeasible) {
      EXPECT_TRUE(validate_certificate(lp, r.dual));
    } else {
      EXPECT_LE(lp.max_residual(r.primal), kPrimalResidualTol);
    }
  }
}

TEST(Maximize, SimpleProblem) {
  // max x + 2y subject to x + y <= 4, y <= 3.
  LpProblem lp(2);
  lp.add_row({{{0, 1.0}, {1, 1.0}}, Relation::kLe, 4.0, "cap"});
  lp.add_row({{{1, 1.0}}, Relation::kLe, 3.0, "y"});
  const std::vector<double> c = {1.0, 2.0};
  for (Backend b : {Backend::kDense, Backend::kExact}) {
    SolverOptions o;
    o.backend = b;
    const OptimizeResult r = maximize(lp, c, o);
    ASSERT_EQ(r.status, OptimizeStatus::kOptimal);
    EXPECT_NEAR(r.value, 7.0, 1e-12);
  }
  LpProblem open(1);
  open.add_row({{{0, 1.0}}, Relation::kGe, 1.0, "lo"});
  EXPECT_EQ(maximize(open, std::vector<double>{1.0}).status, OptimizeStatus::kUnbounded);
  EXPECT_EQ(maximize(single(-1), std::vector<double>{1.0}).status, OptimizeStatus::kInfeasible);
}

TEST(TextFormat, RoundTrip) {
  std::mt19937_64 rng(37);
  const LpProblem lp = random_lp(rng, 7, 9, true);
  const LpProblem back = lp_from_text(to_lp_text(lp));
  ASSERT_EQ(back.num_vars(), lp.num_vars());
  ASSERT_EQ(back.num_rows(), lp.num_rows());
  for (int i = 0; i < lp.num_rows(); ++i) {
    EXPECT_EQ(back.row(i).label, lp.row(i).label);
    EXPECT_EQ(back.row(i).rel, lp.row(i).rel);
    EXPECT_EQ(back.row(i).rhs, lp.row(i).rhs);
    ASSERT_EQ(back.row(i).terms.size(), lp.row(i).terms.size());
    for (std::size_t k = 0; k < lp.row(i).terms.size(); ++k) {
      EXPECT_EQ(back.row(i).terms[k].var, lp.row(i).terms[k].var);
      EXPECT_EQ(back.row(i).terms[k].coef, lp.row(i).terms[k].coef);
    }
  }
}

TEST(TextFormat, ParsesHandWritten) {
  const LpProblem lp = lp_from_text("# comment\nvars 3\nrow0: +1*x0 +1*x1 = 1\ncap: +2*x2 -0.5*x0 <= 0.25\n-1*x1 >= -3\n");
  EXPECT_EQ(lp.num_vars(), 3);
  ASSERT_EQ(lp.num_rows(), 3);
  EXPECT_EQ(lp.row(1).label, "cap");
  EXPECT_EQ(lp.row(1).rel, Relation::kLe);
  EXPECT_EQ(lp.row(2).rel, Relation::kGe);
  EXPECT_THROW(lp_from_text("r: +1*y0 = 1\n"), InvalidArgument);
  EXPECT_THROW(lp_from_text("r: +1*x0 == 1\n"), InvalidArgument);
}

TEST(CertificateJson, RoundTrip) {
  const std::vector<double> y = {0.1, -2.5e-7, 1.0 / 3.0};
  const std::vector<double> back = certificate_from_json(certificate_to_json(y, 0.01));
  EXPECT_EQ(back, y);
  EXPECT_EQ(certificate_from_json("[1,2]"), (std::vector<double>{1, 2}));
  EXPECT_THROW(certificate_from_json("[1,"), InvalidArgument);
  EXPECT_THROW(certificate_from_json(R"({"y": [true]})"), InvalidArgument);
  EXPECT_THROW(certificate_from_json(R"({"z": []})"), InvalidArgument);
}

}  // namespace
}  // namespace losr
