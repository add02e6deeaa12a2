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
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "losr/lpsolve.hpp"

namespace losr {

std::size_t LpProblem::num_nonzeros() const {
  std::size_t nnz = 0;
  for (const LpRow& r : rows_) nnz += r.terms.size();
  return nnz;
}

int LpProblem::add_variables(int count) {
  if (count < 0) throw InvalidArgument("negative variable count");
  const int first = num_vars_;
  num_vars_ += count;
  return first;
}

void LpProblem::add_row(LpRow row) {
  std::sort(row.terms.begin(), row.terms.end(),
            [](const LpTerm& a, const LpTerm& b) { return a.var < b.var; });
  std::vector<LpTerm> merged;
  merged.reserve(row.terms.size());
  for (const LpTerm& t : row.terms) {
    if (t.var < 0 || t.var >= num_vars_) {
      throw DimensionError("row references variable " + std::to_string(t.var) +
                           " but the problem has " + std::to_string(num_vars_));
    }
    if (!std::isfinite(t.coef)) throw InvalidArgument("non-finite coefficient");
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const LpTerm& t) { return t.coef == 0.0; });
  if (!std::isfinite(row.rhs)) throw InvalidArgument("non-finite right-hand side");
  row.terms = std::move(merged);
  rows_.push_back(std::move(row));
}

void LpProblem::add_rows(std::vector<LpRow> rows) {
  for (LpRow& r : rows) add_row(std::move(r));
}

double LpProblem::max_residual(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != num_vars_) throw DimensionError("primal size mismatch");
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  for (const LpRow& r : rows_) {
    long double lhs = 0.0L;
    for (const LpTerm& t : r.terms) lhs += static_cast<long double>(t.coef) * x[t.var];
    const double diff = static_cast<double>(lhs - r.rhs);
    double viol = 0.0;
    switch (r.rel) {
      case Relation::kEq: viol = std::abs(diff); break;
      case Relation::kLe: viol = std::max(0.0, diff); break;
      case Relation::kGe: viol = std::max(0.0, -diff); break;
    }
    worst = std::max(worst, viol / std::max(1.0, std::abs(r.rhs)));
  }
  return worst;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kNumericalFailure: return "numerical_failure";
  }
  return "?";
}

const char* to_string(Backend backend) {
  return backend == Backend::kExact ? "exact" : "dense";
}

Backend backend_from_env() {
  const char* v = std::getenv("LOSR_LP_BACKEND");
  if (v == nullptr || *v == '\0') return Backend::kDense;
  const std::string s(v);
  if (s == "dense") return Backend::kDense;
  if (s == "exact") return Backend::kExact;
  throw InvalidArgument("LOSR_LP_BACKEND must be 'dense' or 'exact', got '" + s + "'");
}

double certificate_slack(const LpProblem& lp, std::span<const double> y) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (static_cast<int>(y.size()) != lp.num_rows()) return kNegInf;
  const int n = lp.num_vars();
  std::vector<long double> r(n, 0.0L);
  std::vector<long double> ub(n, std::numeric_limits<long double>::infinity());
  long double yb = 0.0L;
  for (int i = 0; i < lp.num_rows(); ++i) {
    const LpRow& row = lp.rows()[i];
    if (!std::isfinite(y[i])) return kNegInf;
    if (row.rel == Relation::kLe && y[i] > 0.0) return kNegInf;
    if (row.rel == Relation::kGe && y[i] < 0.0) return kNegInf;
    yb += static_cast<long double>(y[i]) * row.rhs;
    for (const LpTerm& t : row.terms) r[t.var] += static_cast<long double>(y[i]) * t.coef;
    // Rows sum_j a_j x_j (= or <=) b with a_j >= 0 bound each x_j by b / a_j.
    if (row.rel == Relation::kGe || row.rhs < 0.0) continue;
    const bool nonneg = std::all_of(row.terms.begin(), row.terms.end(),
                                    [](const LpTerm& t) { return t.coef >= 0.0; });
    if (!nonneg) continue;
    for (const LpTerm& t : row.terms) {
      ub[t.var] = std::min(ub[t.var], static_cast<long double>(row.rhs) / t.coef);
    }
  }
  long double slack = yb;
  for (int j = 0; j < n; ++j) {
    if (r[j] <= 0.0L) continue;
    if (!std::isfinite(static_cast<double>(ub[j]))) return kNegInf;
    slack -= r[j] * ub[j];
  }
  return static_cast<double>(slack);
}

bool validate_certificate(const LpProblem& lp, std::span<const double> y, double gap) {
  return certificate_slack(lp, y) >= gap;
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* relation_token(Relation rel) {
  switch (rel) {
    case Relation::kEq: return "=";
    case Relation::kLe: return "<=";
    case Relation::kGe: return ">=";
  }
  return "=";
}

double parse_number(std::string_view s, int line) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    throw InvalidArgument("line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string to_lp_text(const LpProblem& lp) {
  std::ostringstream out;
  out << "# feasibility LP: x >= 0\n";
  out << "vars " << lp.num_vars() << "\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    const LpRow& r = lp.rows()[i];
    out << (r.label.empty() ? "r" + std::to_string(i) : r.label) << ":";
    for (const LpTerm& t : r.terms) {
      out << ' ' << (t.coef >= 0.0 ? "+" : "") << format_number(t.coef) << "*x" << t.var;
    }
    out << ' ' << relation_token(r.rel) << ' ' << format_number(r.rhs) << "\n";
  }
  return out.str();
}

LpProblem lp_from_text(std::string_view text) {
  std::vector<LpRow> rows;
  int declared = -1;
  int max_var = -1;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream in(line);
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "vars") {
      if (tok.size() != 2) throw InvalidArgument("line " + std::to_string(line_no) + ": bad vars line");
      declared = static_cast<int>(parse_number(tok[1], line_no));
      continue;
    }
    LpRow row;
    std::size_t k = 0;
    if (tok[0].back() == ':') {
      row.label = tok[0].substr(0, tok[0].size() - 1);
      k = 1;
    }
    bool have_rel = false;
    for (; k < tok.size(); ++k) {
      const std::string& t = tok[k];
      if (t == "=" || t == "<=" || t == ">=") {
        row.rel = t == "=" ? Relation::kEq : (t == "<=" ? Relation::kLe : Relation::kGe);
        if (k + 2 != tok.size()) {
          throw InvalidArgument("line " + std::to_string(line_no) + ": expected one constant after relation");
        }
        row.rhs = parse_number(tok[k + 1], line_no);
        have_rel = true;
        break;
      }
      const auto star = t.find("*x");
      if (star == std::string::npos) {
        throw InvalidArgument("line " + std::to_string(line_no) + ": bad term '" + t + "'");
      }
      LpTerm term;
      term.coef = parse_number(std::string_view(t).substr(0, star), line_no);
      term.var = static_cast<int>(parse_number(std::string_view(t).substr(star + 2), line_no));
      max_var = std::max(max_var, term.var);
      row.terms.push_back(term);
    }
    if (!have_rel) throw InvalidArgument("line " + std::to_string(line_no) + ": missing relation");
    rows.push_back(std::move(row));
  }
  if (declared >= 0 && max_var >= declared) {
    throw DimensionError("variable x" + std::to_string(max_var) + " exceeds declared count");
  }
  LpProblem lp(declared >= 0 ? declared : max_var + 1);
  lp.add_rows(std::move(rows));
  return lp;
}

std::string certificate_to_json(std::span<const double> y, double gap) {
  nlohmann::json j;
  j["gap"] = format_number(gap);
  nlohmann::json arr = nlohmann::json::array();
  for (double v : y) arr.push_back(format_number(v));
  j["y"] = std::move(arr);
  return j.dump(1);
}

std::vector<double> certificate_from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    const nlohmann::json& arr = j.is_array() ? j : j.at("y");
    if (!arr.is_array()) throw InvalidArgument("certificate must be an array of multipliers");
    std::vector<double> y;
    y.reserve(arr.size());
    for (const auto& v : arr) {
      if (v.is_string()) {
        const std::string s = v.get<std::string>();
        y.push_back(parse_number(s, 0));
      } else {
        y.push_back(v.get<double>());
      }
    }
    return y;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("certificate JSON: ") + e.what());
  }
}

}  // namespace losr
