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

#include "cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "losr/games.hpp"
#include "losr/inflation.hpp"
#include "losr/strategies.hpp"

namespace losr::cli {

using nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidArgument("write to '" + path + "' failed");
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InvalidArgument("bad " + what + " '" + text + "'");
  return v;
}

// JSON numbers cannot hold NaN or infinities.
ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Builtins. Every alias resolves to a versioned name; version 1 is the only
// one so far.

struct Builtin {
  std::string base;  // "ghz", "noisy-ghz", ...
  std::string arg;   // text after ':' if any
};

std::optional<Builtin> split_builtin(const std::string& spec) {
  static const std::vector<std::string> bases = {"ghz", "ns-box", "classical-opt", "noisy-ghz",
                                                 "ghz-n"};
  const std::size_t colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const std::size_t at = head.find('@');
  if (at != std::string::npos) {
    if (head.substr(at + 1) != "1") return std::nullopt;
    head = head.substr(0, at);
  }
  if (std::find(bases.begin(), bases.end(), head) == bases.end()) return std::nullopt;
  return Builtin{head, arg};
}

}  // namespace

ResolvedBehavior resolve_behavior(const std::string& spec) {
  const std::optional<Builtin> b = split_builtin(spec);
  if (!b) return {spec, behavior_from_json(read_file(spec))};
  const bool wants_arg = b->base == "noisy-ghz" || b->base == "ghz-n";
  if (wants_arg == b->arg.empty()) {
    throw InvalidArgument("builtin '" + b->base + "' " +
                          (wants_arg ? "needs an argument, e.g. " + b->base + ":1" : "takes no argument"));
  }
  const std::string name = b->base + "@1" + (wants_arg ? ":" + b->arg : "");
  if (b->base == "ghz") return {name, ghz_quantum_strategy().behavior()};
  if (b->base == "ns-box") return {name, ns_box_behavior()};
  if (b->base == "classical-opt") {
    ClassicalOracleResult r = classical_max_oracle();
    if (!r.behavior) throw Error("classical oracle failed");
    return {name, *r.behavior};
  }
  if (b->base == "noisy-ghz") return {name, noisy_ghz_behavior(parse_real(b->arg, "fidelity"))};
  const double n = parse_real(b->arg, "party count");
  if (n != std::floor(n)) throw InvalidArgument("party count must be an integer");
  return {name, ghz_n_behavior(static_cast<int>(n))};
}

std::string behavior_hash(const Behavior& behavior) {
  const std::string text = to_json(behavior);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

namespace {

ordered_json report_head(const std::vector<std::string>& args, const std::string& command) {
  ordered_json r;
  r["tool"] = "losr";
  r["version"] = kVersion;
  r["command"] = args;
  r["subcommand"] = command;
  return r;
}

ordered_json input_entry(const ResolvedBehavior& rb) {
  ordered_json parties = ordered_json::array();
  for (const PartySpec& p : rb.behavior.parties()) parties.push_back({{"name", p.name}, {"inputs", p.n_inputs}});
  return {{"name", rb.name}, {"sha256", behavior_hash(rb.behavior)}, {"parties", parties}};
}

ordered_json ns_entry(const NonsignallingReport& ns) {
  ordered_json j{{"is_nonsignalling", ns.is_nonsignalling}, {"max_violation", ns.max_violation}};
  if (!ns.is_nonsignalling) j["detail"] = ns.describe();
  return j;
}

ordered_json bounds_entry() {
  return {{"bipartite_cause", kBipartiteCauseBound}, {"algebraic", kAlgebraicMaximum}};
}

ordered_json score_entry(const Ghz3Score& s) {
  return {{"bell_conditional", s.bell_conditional}, {"same", s.same},       {"c1", s.c1_marginal},
          {"combined", s.combined},                 {"c1_zero", s.assumption_satisfied}};
}

std::string score_verdict(const Ghz3Score& s) {
  if (!s.assumption_satisfied) return "assumption <C1> = 0 not satisfied; bound 10 does not apply";
  if (s.combined > kAlgebraicMaximum + 1e-9) return "exceeds algebraic maximum 12";
  if (s.violates_bipartite_bound()) return "violates bipartite-cause bound 10";
  return "no violation";
}

void emit(std::ostream& out, const ordered_json& report, const std::string& report_path) {
  const std::string text = report.dump(2);
  out << text << '\n';
  if (!report_path.empty()) write_file(report_path, text + "\n");
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string behavior;
  bool exact = false;
  double tol = kDefaultC1Tol;
  std::string report;
};

int cmd_evaluate(const EvaluateArgs& a, const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  const auto t0 = Clock::now();
  const ResolvedBehavior rb = resolve_behavior(a.behavior);
  const double t_load = seconds_since(t0);

  ordered_json r = report_head(args, "evaluate");
  r["config"] = {{"behavior", a.behavior}, {"exact", a.exact}, {"tol", a.tol}};
  r["inputs"] = ordered_json::array({input_entry(rb)});
  const NonsignallingReport ns = is_nonsignalling(rb.behavior);
  r["nonsignalling"] = ns_entry(ns);
  r["bounds"] = bounds_entry();

  const auto t1 = Clock::now();
  int code = kExitOk;
  if (!ns.is_nonsignalling) {
    r["scores"] = nullptr;
    r["verdict"] = "signalling input: scores are undefined";
    err << "signalling input: " << ns.describe() << '\n';
    code = kExitUsage;
  } else if (rb.behavior.num_parties() != 3) {
    const double chsh = chsh_conditional(rb.behavior);
    r["scores"] = {{"chsh_conditional", chsh}};
    r["verdict"] = chsh > 2.0 + 1e-9 ? "violates local bound 2" : "no violation";
    err << rb.name << ": conditioned CHSH " << std::setprecision(12) << chsh << '\n';
  } else {
    const Ghz3Score s = ghz3_score(rb.behavior, a.tol);
    r["scores"] = score_entry(s);
    if (a.exact) r["scores"]["combined_exact"] = exact_combined_score(rb.behavior).get_str();
    r["verdict"] = score_verdict(s);
    err << rb.name << ": combined " << std::setprecision(12) << s.combined << " (bell "
        << s.bell_conditional << ", same " << s.same << ", <C1> " << s.c1_marginal << "): "
        << r["verdict"].get<std::string>() << '\n';
  }
  r["timings"] = {{"load_seconds", t_load}, {"evaluate_seconds", seconds_since(t1)}};
  r["exit_code"] = code;
  emit(out, r, a.report);
  return code;
}

// ---------------------------------------------------------------------------
// certify

struct CertifyArgs {
  std::string behavior;
  int order = 3;
  std::string wiring = "ring";
  std::string restrict_inputs = "games";
  bool exact = false;
  std::string pivot = "bland";
  bool no_presolve = false;
  std::string cert_out = "losr-certificate.json";
  std::string lp_out = "losr-certificate.lp";
  std::string witness_out;
  std::string report;
};

CertifyConfig make_config(int order, const std::string& wiring, const std::string& restrict_inputs,
                          bool exact, const std::string& pivot, bool no_presolve) {
  CertifyConfig c;
  c.order = order;
  c.wiring = wiring == "cut" ? Wiring::kRing3Cut : Wiring::kRing;
  c.restriction = restrict_inputs == "full" ? RestrictionMode::kFull : RestrictionMode::kGames;
  c.solver.backend = exact ? Backend::kExact : backend_from_env();
  c.solver.pivot = pivot == "dantzig" ? PivotRule::kDantzig : PivotRule::kBland;
  c.solver.presolve = !no_presolve;
  return c;
}

ordered_json config_entry(const CertifyConfig& c, const std::string& wiring, const std::string& restrict_inputs,
                          const std::string& pivot) {
  return {{"order", c.order},
          {"wiring", wiring},
          {"restrict_inputs", restrict_inputs},
          {"backend", to_string(c.solver.backend)},
          {"pivot", pivot},
          {"presolve", c.solver.presolve},
          {"feasibility_tol", c.solver.feasibility_tol},
          {"max_iterations", c.solver.max_iterations}};
}

int exit_code_for(SolveStatus s) {
  switch (s) {
    case SolveStatus::kFeasible: return kExitOk;
    case SolveStatus::kInfeasible: return kExitInfeasible;
    case SolveStatus::kNumericalFailure: break;
  }
  return kExitNumerical;
}

int cmd_certify(const CertifyArgs& a, const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  const ResolvedBehavior rb = resolve_behavior(a.behavior);
  const CertifyConfig config =
      make_config(a.order, a.wiring, a.restrict_inputs, a.exact, a.pivot, a.no_presolve);
  const FeasibilityOutcome o = certify(rb.behavior, config);

  ordered_json r = report_head(args, "certify");
  r["config"] = config_entry(config, a.wiring, a.restrict_inputs, a.pivot);
  r["config"]["behavior"] = a.behavior;
  r["inputs"] = ordered_json::array({input_entry(rb)});
  ordered_json c{{"graph", o.graph_name},
                 {"verdict", to_string(o.verdict)},
                 {"rows", o.rows},
                 {"vars", o.vars},
                 {"presolved_rows", o.presolved_rows},
                 {"presolved_vars", o.presolved_vars},
                 {"iterations", o.iterations}};
  if (!o.message.empty()) c["message"] = o.message;
  if (o.verdict == SolveStatus::kInfeasible) {
    c["certificate_gap"] = o.certificate_gap;
    c["certificate_valid"] = validate_certificate(o.lp, o.certificate);
    if (!a.cert_out.empty()) {
      write_file(a.cert_out, certificate_to_json(o.certificate, o.certificate_gap) + "\n");
      c["certificate_file"] = a.cert_out;
    }
    if (!a.lp_out.empty()) {
      write_file(a.lp_out, to_lp_text(o.lp));
      c["lp_file"] = a.lp_out;
    }
  }
  if (o.verdict == SolveStatus::kFeasible && !a.witness_out.empty()) {
    ordered_json w = o.witness;
    write_file(a.witness_out, w.dump() + "\n");
    c["witness_file"] = a.witness_out;
  }
  r["certification"] = ordered_json::array({c});
  r["timings"] = {{"assemble_seconds", o.assemble_seconds}, {"solve_seconds", o.solve_seconds}};
  const int code = exit_code_for(o.verdict);
  r["exit_code"] = code;

  err << rb.name << " on " << o.graph_name << " (" << o.rows << " rows x " << o.vars
      << " vars): " << to_string(o.verdict);
  if (o.verdict == SolveStatus::kInfeasible) {
    err << ", certificate gap " << o.certificate_gap;
    if (!a.cert_out.empty()) err << ", written to " << a.cert_out;
  }
  if (!o.message.empty()) err << " [" << o.message << "]";
  err << '\n';
  emit(out, r, a.report);
  return code;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string family = "noisy-ghz";
  double from = 0.8, to = 1.0, step = 0.005;
  std::string mode = "inequality";
  int order = 3;
  std::string wiring = "ring";
  std::string restrict_inputs = "games";
  std::string pivot = "bland";
  bool exact = false;
  bool no_presolve = false;
  int jobs = 1;
  double precision = 1e-4;
  std::string csv;
  std::string report;
};

struct SweepRow {
  double f = 0.0;
  Ghz3Score score;
  std::optional<SolveStatus> lp;
  std::string error;
};

std::vector<double> sweep_grid(double from, double to, double step) {
  if (!(step > 0.0)) throw InvalidArgument("step must be positive");
  if (!(from <= to)) throw InvalidArgument("empty range: from > to");
  if (from < 0.0 || to > 1.0) throw InvalidArgument("fidelity range must lie within [0,1]");
  const long n = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (long i = 0; i < n; ++i) grid[i] = std::min(to, from + static_cast<double>(i) * step);
  return grid;
}

std::string csv_text(const std::vector<SweepRow>& rows) {
  std::ostringstream s;
  s << "f,combined,bell,same,c1,ineq_violated,lp_verdict\n" << std::setprecision(17);
  for (const SweepRow& row : rows) {
    s << row.f << ',' << row.score.combined << ',' << row.score.bell_conditional << ',' << row.score.same
      << ',' << row.score.c1_marginal << ',' << (row.score.violates_bipartite_bound() ? 1 : 0) << ','
      << (row.lp ? to_string(*row.lp) : "") << '\n';
  }
  return s.str();
}

int cmd_sweep(const SweepArgs& a, const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err) {
  if (a.family != "noisy-ghz") throw InvalidArgument("unknown family '" + a.family + "'");
  if (a.jobs < 1) throw InvalidArgument("--jobs must be at least 1");
  if (!(a.precision > 0.0)) throw InvalidArgument("--precision must be positive");
  const std::vector<double> grid = sweep_grid(a.from, a.to, a.step);
  const bool lp_mode = a.mode == "lp";
  const CertifyConfig config =
      make_config(a.order, a.wiring, a.restrict_inputs, a.exact, a.pivot, a.no_presolve);

  const auto t0 = Clock::now();
  std::vector<SweepRow> rows(grid.size());
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(a.jobs)
  for (long i = 0; i < n; ++i) {
    SweepRow& row = rows[i];
    row.f = grid[i];
    try {
      const Behavior b = noisy_ghz_behavior(row.f, Execution::kSerial);
      row.score = ghz3_score(b);
      if (lp_mode) row.lp = certify(b, config).verdict;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  }
  for (const SweepRow& row : rows) {
    if (!row.error.empty()) throw Error("sweep point f = " + std::to_string(row.f) + ": " + row.error);
  }
  const double t_grid = seconds_since(t0);

  ordered_json r = report_head(args, "sweep");
  r["config"] = config_entry(config, a.wiring, a.restrict_inputs, a.pivot);
  r["config"].update({{"family", a.family},
                      {"from", a.from},
                      {"to", a.to},
                      {"step", a.step},
                      {"mode", a.mode},
                      {"jobs", a.jobs},
                      {"precision", a.precision}});
  r["inputs"] = ordered_json::array();
  for (double f : {0.0, 1.0}) {
    std::ostringstream name;
    name << "noisy-ghz@1:" << f;
    r["inputs"].push_back(input_entry({name.str(), noisy_ghz_behavior(f)}));
  }
  r["bounds"] = bounds_entry();

  ordered_json jrows = ordered_json::array();
  bool any_failure = false;
  std::vector<std::pair<double, SolveStatus>> grid_verdicts;
  for (const SweepRow& row : rows) {
    ordered_json j;
    j["f"] = row.f;
    j.update(score_entry(row.score));
    j["ineq_violated"] = row.score.violates_bipartite_bound();
    if (row.lp) {
      j["lp_verdict"] = to_string(*row.lp);
      grid_verdicts.push_back({row.f, *row.lp});
      any_failure |= *row.lp == SolveStatus::kNumericalFailure;
    }
    jrows.push_back(j);
  }
  r["rows"] = jrows;

  const auto t1 = Clock::now();
  const double f_ineq = bisect_predicate(
      [](double f) { return ghz3_score(noisy_ghz_behavior(f, Execution::kSerial)).violates_bipartite_bound(); },
      0.0, 1.0, a.precision);
  ordered_json th{{"inequality", {{"f_star", f_ineq}, {"precision", a.precision}}}};
  const double t_ineq = seconds_since(t1);

  double t_lp = 0.0;
  if (lp_mode) {
    const auto t2 = Clock::now();
    std::vector<std::pair<double, SolveStatus>> extra;
    for (const auto& gv : grid_verdicts) {
      if (gv.second != SolveStatus::kNumericalFailure) extra.push_back(gv);
    }
    try {
      const BisectionResult b = threshold_bisect(
          [](double f) { return noisy_ghz_behavior(f); }, config, a.precision, extra);
      ordered_json evals = ordered_json::array();
      for (const auto& [f, st] : b.evaluations) evals.push_back({{"f", f}, {"verdict", to_string(st)}});
      th["lp"] = {{"f_star", b.threshold},
                  {"bracket", {b.lo, b.hi}},
                  {"monotone", b.monotone && verdicts_monotone(grid_verdicts)},
                  {"lp_at_most_inequality", b.threshold <= f_ineq},
                  {"evaluations", evals}};
      if (!b.note.empty()) th["lp"]["note"] = b.note;
      any_failure |= b.note.find("numerical") != std::string::npos;
    } catch (const InvalidArgument& e) {
      // No feasible-to-infeasible switch on [0,1] under this inflation.
      th["lp"] = {{"f_star", nullptr},
                  {"monotone", verdicts_monotone(grid_verdicts)},
                  {"lp_at_most_inequality", false},
                  {"note", e.what()}};
    }
    t_lp = seconds_since(t2);
  }
  r["thresholds"] = th;
  r["timings"] = {{"grid_seconds", t_grid}, {"inequality_bisect_seconds", t_ineq}, {"lp_bisect_seconds", t_lp}};
  const int code = any_failure ? kExitNumerical : kExitOk;
  r["exit_code"] = code;

  const std::string csv = csv_text(rows);
  if (!a.csv.empty()) {
    write_file(a.csv, csv);
    r["csv_file"] = a.csv;
  } else {
    err << csv;
  }
  err << "f*_inequality = " << std::setprecision(8) << f_ineq;
  if (lp_mode) err << ", f*_lp = " << th["lp"]["f_star"].dump();
  err << '\n';
  emit(out, r, a.report);
  return code;
}

// ---------------------------------------------------------------------------
// generate, strategy, check-cert

int cmd_generate(const std::string& spec, const std::string& path, std::ostream& out, std::ostream& err) {
  const ResolvedBehavior rb = resolve_behavior(spec);
  const std::string text = to_json(rb.behavior);
  if (path.empty()) {
    out << text << '\n';
  } else {
    write_file(path, text + "\n");
    err << rb.name << " written to " << path << " (sha256 " << behavior_hash(rb.behavior) << ")\n";
  }
  return kExitOk;
}

int cmd_strategy(const std::string& spec, const std::string& path, std::ostream& out, std::ostream& err) {
  const std::optional<Builtin> b = split_builtin(spec);
  const bool ghz = b && b->base == "ghz" && b->arg.empty();
  const bool ghz_n = b && b->base == "ghz-n" && !b->arg.empty();
  if (!ghz && !ghz_n) throw InvalidArgument("unknown strategy '" + spec + "' (expected ghz or ghz-n:N)");
  const QuantumStrategy s = ghz ? ghz_quantum_strategy()
                                : ghz_n_strategy(static_cast<int>(parse_real(b->arg, "party count")));
  const std::string text = to_json(s);
  if (path.empty()) {
    out << text << '\n';
  } else {
    write_file(path, text + "\n");
    err << "strategy written to " << path << '\n';
  }
  return kExitOk;
}

int cmd_check_cert(const std::string& lp_path, const std::string& cert_path, double gap,
                   const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const LpProblem lp = lp_from_text(read_file(lp_path));
  const std::vector<double> y = certificate_from_json(read_file(cert_path));
  const double slack = certificate_slack(lp, y);
  const bool valid = validate_certificate(lp, y, gap);
  ordered_json r = report_head(args, "check-cert");
  r["config"] = {{"lp", lp_path}, {"cert", cert_path}, {"gap", gap}};
  r["rows"] = lp.num_rows();
  r["vars"] = lp.num_vars();
  r["slack"] = number(slack);
  r["valid"] = valid;
  const int code = valid ? kExitOk : kExitUsage;
  r["exit_code"] = code;
  err << "certificate " << (valid ? "valid" : "INVALID") << ", slack " << slack << '\n';
  emit(out, r, "");
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bipartite-cause tests for tripartite behaviors", "losr"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  EvaluateArgs ev;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Scores, nonsignalling check and bound comparison");
  evaluate->add_option("behavior", ev.behavior, "Behavior JSON file or builtin")->required();
  evaluate->add_flag("--exact", ev.exact, "Also compute the combined score in rational arithmetic");
  evaluate->add_option("--tol", ev.tol, "Tolerance for <C1> = 0")->check(CLI::PositiveNumber);
  evaluate->add_option("--report", ev.report, "Also write the report to this file");

  CertifyArgs ce;
  CLI::App* cert = app.add_subcommand("certify", "Inflation feasibility test");
  cert->add_option("behavior", ce.behavior, "Behavior JSON file or builtin")->required();
  cert->add_option("--order", ce.order, "Inflation order (2 or 3)")->check(CLI::IsMember({2, 3}));
  cert->add_option("--wiring", ce.wiring, "ring or cut (cut needs order 3)")->check(CLI::IsMember({"ring", "cut"}));
  cert->add_option("--restrict-inputs", ce.restrict_inputs, "games or full")
      ->check(CLI::IsMember({"games", "full"}));
  cert->add_flag("--exact", ce.exact, "Exact rational simplex (small LPs only)");
  cert->add_option("--pivot", ce.pivot, "bland or dantzig")->check(CLI::IsMember({"bland", "dantzig"}));
  cert->add_flag("--no-presolve", ce.no_presolve, "Skip the presolve reductions");
  cert->add_option("--cert-out", ce.cert_out, "Certificate JSON path (empty: do not write)");
  cert->add_option("--lp-out", ce.lp_out, "LP text path written next to the certificate (empty: do not write)");
  cert->add_option("--witness-out", ce.witness_out, "Inflated distribution JSON path when feasible");
  cert->add_option("--report", ce.report, "Also write the report to this file");

  SweepArgs sw;
  CLI::App* sweep = app.add_subcommand("sweep", "Noise sweep with threshold bisection");
  sweep->add_option("--family", sw.family, "Behavior family")->check(CLI::IsMember({"noisy-ghz"}));
  sweep->add_option("--from", sw.from, "First fidelity");
  sweep->add_option("--to", sw.to, "Last fidelity");
  sweep->add_option("--step", sw.step, "Grid step");
  sweep->add_option("--mode", sw.mode, "inequality or lp")->check(CLI::IsMember({"inequality", "lp"}));
  sweep->add_option("--order", sw.order, "Inflation order (lp mode)")->check(CLI::IsMember({2, 3}));
  sweep->add_option("--wiring", sw.wiring, "ring or cut")->check(CLI::IsMember({"ring", "cut"}));
  sweep->add_option("--restrict-inputs", sw.restrict_inputs, "games or full")
      ->check(CLI::IsMember({"games", "full"}));
  sweep->add_option("--pivot", sw.pivot, "bland or dantzig")->check(CLI::IsMember({"bland", "dantzig"}));
  sweep->add_flag("--exact", sw.exact, "Exact rational simplex (small LPs only)");
  sweep->add_flag("--no-presolve", sw.no_presolve, "Skip the presolve reductions");
  sweep->add_option("--jobs", sw.jobs, "Grid points solved concurrently");
  sweep->add_option("--precision", sw.precision, "Bisection bracket width");
  sweep->add_option("--csv", sw.csv, "CSV output path (default: stderr)");
  sweep->add_option("--report", sw.report, "Also write the report to this file");

  std::string gen_spec, gen_out;
  CLI::App* gen = app.add_subcommand("generate", "Print a behavior as JSON");
  gen->add_option("behavior", gen_spec, "Builtin name or behavior file")->required();
  gen->add_option("--out", gen_out, "Output path (default: stdout)");

  std::string strat_spec, strat_out;
  CLI::App* strat = app.add_subcommand("strategy", "Print a quantum strategy as JSON");
  strat->add_option("name", strat_spec, "ghz or ghz-n:N")->required();
  strat->add_option("--out", strat_out, "Output path (default: stdout)");

  std::string cc_lp, cc_cert;
  double cc_gap = kCertificateGap;
  CLI::App* check = app.add_subcommand("check-cert", "Validate an infeasibility certificate");
  check->add_option("--lp", cc_lp, "LP text file")->required();
  check->add_option("--cert", cc_cert, "Certificate JSON file")->required();
  check->add_option("--gap", cc_gap, "Required slack")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*evaluate) return cmd_evaluate(ev, args, out, err);
    if (*cert) return cmd_certify(ce, args, out, err);
    if (*sweep) return cmd_sweep(sw, args, out, err);
    if (*gen) return cmd_generate(gen_spec, gen_out, out, err);
    if (*strat) return cmd_strategy(strat_spec, strat_out, out, err);
    if (*check) return cmd_check_cert(cc_lp, cc_cert, cc_gap, args, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace losr::cli
