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
#include <numeric>

#include "losr/lpsolve.hpp"

namespace losr {
namespace {

using Combination = PresolveResult::Combination;
using Weights = std::vector<std::pair<int, double>>;

constexpr double kDropTol = 1e-13;   // coefficients below this vanish after a row operation
constexpr double kZeroRhs = 1e-12;
constexpr double kDupTol = 1e-12;

struct WorkRow {
  std::vector<LpTerm> terms;  // sorted by var
  Relation rel = Relation::kEq;
  double rhs = 0.0;
  Weights comb;  // sorted by original row
  bool alive = true;
};

// dst += f * src for sorted sparse vectors.
std::vector<LpTerm> axpy(const std::vector<LpTerm>& dst, const std::vector<LpTerm>& src, double f) {
  std::vector<LpTerm> out;
  out.reserve(dst.size() + src.size());
  std::size_t a = 0, b = 0;
  while (a < dst.size() || b < src.size()) {
    if (b == src.size() || (a < dst.size() && dst[a].var < src[b].var)) {
      out.push_back(dst[a++]);
    } else if (a == dst.size() || src[b].var < dst[a].var) {
      out.push_back({src[b].var, f * src[b].coef});
      ++b;
    } else {
      const double c = dst[a].coef + f * src[b].coef;
      if (std::abs(c) > kDropTol) out.push_back({dst[a].var, c});
      ++a;
      ++b;
    }
  }
  return out;
}

Weights axpy(const Weights& dst, const Weights& src, double f) {
  Weights out;
  out.reserve(dst.size() + src.size());
  std::size_t a = 0, b = 0;
  while (a < dst.size() || b < src.size()) {
    if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
      out.push_back(dst[a++]);
    } else if (a == dst.size() || src[b].first < dst[a].first) {
      out.push_back({src[b].first, f * src[b].second});
      ++b;
    } else {
      const double c = dst[a].second + f * src[b].second;
      if (c != 0.0) out.push_back({dst[a].first, c});
      ++a;
      ++b;
    }
  }
  return out;
}

const LpTerm* find_term(const std::vector<LpTerm>& terms, int var) {
  auto it = std::lower_bound(terms.begin(), terms.end(), var,
                             [](const LpTerm& t, int v) { return t.var < v; });
  return (it != terms.end() && it->var == var) ? &*it : nullptr;
}

bool consistent_empty(Relation rel, double rhs) {
  switch (rel) {
    case Relation::kEq: return std::abs(rhs) <= kZeroRhs;
    case Relation::kLe: return rhs >= -kZeroRhs;
    case Relation::kGe: return rhs <= kZeroRhs;
  }
  return false;
}

// Dense column vector of sum_i w_i M_i over the original problem.
std::vector<long double> combine_columns(const LpProblem& lp, const Weights& w) {
  std::vector<long double> col(lp.num_vars(), 0.0L);
  for (const auto& [i, wi] : w) {
    for (const LpTerm& t : lp.rows()[i].terms) col[t.var] += static_cast<long double>(wi) * t.coef;
  }
  return col;
}

// Turns a combination of original rows into a Farkas vector: repairs columns
// that presolve zeroed through nonnegativity, then normalizes.
std::vector<double> finish_certificate(const LpProblem& lp,
                                       const std::vector<PresolveResult::ZeroPair>& zero_pairs,
                                       std::vector<double> y) {
  Weights w;
  for (int i = 0; i < static_cast<int>(y.size()); ++i) {
    if (y[i] != 0.0) w.push_back({i, y[i]});
  }
  std::vector<long double> r = combine_columns(lp, w);
  for (auto it = zero_pairs.rbegin(); it != zero_pairs.rend(); ++it) {
    const std::vector<long double> z = combine_columns(lp, it->row.terms);
    const long double za = z[it->var_a], zb = z[it->var_b];
    if (za == 0.0L || zb == 0.0L || (za > 0.0L) != (zb > 0.0L)) continue;
    const long double need =
        std::max({0.0L, r[it->var_a] / std::abs(za), r[it->var_b] / std::abs(zb)});
    if (need == 0.0L) continue;
    const long double t = za > 0.0L ? -need : need;
    for (const auto& [i, wi] : it->row.terms) y[i] += static_cast<double>(t * wi);
    for (int j = 0; j < lp.num_vars(); ++j) r[j] += t * z[j];
  }
  double big = 0.0;
  for (double v : y) big = std::max(big, std::abs(v));
  if (big > 0.0) {
    for (double& v : y) v /= big;
  }
  return y;
}

class Presolver {
 public:
  explicit Presolver(const LpProblem& lp) : lp_(lp), col_rows_(lp.num_vars()), eliminated_(lp.num_vars(), 0) {
    rows_.reserve(lp.num_rows());
    for (int i = 0; i < lp.num_rows(); ++i) {
      const LpRow& src = lp.rows()[i];
      WorkRow r;
      r.terms = src.terms;
      r.rel = src.rel;
      r.rhs = src.rhs;
      r.comb = {{i, 1.0}};
      for (const LpTerm& t : r.terms) col_rows_[t.var].push_back(i);
      rows_.push_back(std::move(r));
    }
  }

  PresolveResult run() {
    PresolveResult res;
    res.original = lp_;
    bool changed = true;
    while (changed && !infeasible_) {
      changed = normalize_rows();
      if (infeasible_) break;
      changed = eliminate() || changed;
      changed = dedupe() || changed;
    }
    res.substitutions = std::move(subs_);
    res.zero_pairs = std::move(zero_pairs_);
    if (infeasible_) {
      res.infeasible = true;
      res.certificate = finish_certificate(lp_, res.zero_pairs, std::move(certificate_));
      res.reduced = LpProblem(0);
      return res;
    }
    std::vector<int> new_index(lp_.num_vars(), -1);
    for (int j = 0; j < lp_.num_vars(); ++j) {
      if (!eliminated_[j]) {
        new_index[j] = static_cast<int>(res.var_origin.size());
        res.var_origin.push_back(j);
      }
    }
    res.reduced = LpProblem(static_cast<int>(res.var_origin.size()));
    for (WorkRow& r : rows_) {
      if (!r.alive) continue;
      LpRow out;
      out.rel = r.rel;
      out.rhs = r.rhs;
      for (const LpTerm& t : r.terms) out.terms.push_back({new_index[t.var], t.coef});
      res.reduced.add_row(std::move(out));
      res.row_origin.push_back({std::move(r.comb)});
    }
    return res;
  }

 private:
  void scale(WorkRow& r, double f) {
    for (LpTerm& t : r.terms) t.coef *= f;
    r.rhs *= f;
    for (auto& c : r.comb) c.second *= f;
    if (f < 0.0) {
      if (r.rel == Relation::kLe) {
        r.rel = Relation::kGe;
      } else if (r.rel == Relation::kGe) {
        r.rel = Relation::kLe;
      }
    }
  }

  void prove_infeasible(const WorkRow& r, double sign) {
    infeasible_ = true;
    certificate_.assign(lp_.num_rows(), 0.0);
    for (const auto& [i, w] : r.comb) certificate_[i] = sign * w;
  }

  bool normalize_rows() {
    bool changed = false;
    for (WorkRow& r : rows_) {
      if (!r.alive) continue;
      if (r.terms.empty()) {
        if (!consistent_empty(r.rel, r.rhs)) {
          // 0 (rel) rhs is violated; the row itself, signed, is a certificate.
          const double sign = r.rel == Relation::kEq ? (r.rhs > 0 ? 1.0 : -1.0)
                                                     : (r.rel == Relation::kGe ? 1.0 : -1.0);
          prove_infeasible(r, sign);
          return true;
        }
        r.alive = false;
        changed = true;
        continue;
      }
      double big = 0.0;
      for (const LpTerm& t : r.terms) big = std::max(big, std::abs(t.coef));
      double f = 1.0 / big;
      if (r.rel == Relation::kEq && r.terms.front().coef < 0.0) f = -f;
      if (f != 1.0) scale(r, f);
    }
    return changed;
  }

  // row r -= f * row s, keeping column lists current.
  void subtract(int r, int s, double f) {
    WorkRow& dst = rows_[r];
    const WorkRow& src = rows_[s];
    for (const LpTerm& t : src.terms) {
      if (!find_term(dst.terms, t.var)) col_rows_[t.var].push_back(r);
    }
    dst.terms = axpy(dst.terms, src.terms, -f);
    dst.rhs -= f * src.rhs;
    dst.comb = axpy(dst.comb, src.comb, -f);
  }

  std::vector<int> rows_with(int var, int except) {
    std::vector<int> out;
    for (int r : col_rows_[var]) {
      if (r != except && rows_[r].alive && find_term(rows_[r].terms, var)) out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    col_rows_[var] = out;
    return out;
  }

  bool eliminate() {
    bool changed = false;
    for (int s = 0; s < static_cast<int>(rows_.size()); ++s) {
      WorkRow& row = rows_[s];
      if (!row.alive || row.rel != Relation::kEq) continue;
      if (row.terms.size() == 1) {
        const LpTerm t = row.terms[0];
        double v = row.rhs / t.coef;
        if (v < -kZeroRhs) {
          prove_infeasible(row, t.coef > 0 ? -1.0 : 1.0);
          return true;
        }
        v = std::max(v, 0.0);
        for (int r : rows_with(t.var, s)) subtract(r, s, find_term(rows_[r].terms, t.var)->coef / t.coef);
        subs_.push_back({t.var, PresolveResult::Substitution::kFixed, v, -1});
        eliminated_[t.var] = 1;
        row.alive = false;
        changed = true;
      } else if (row.terms.size() == 2 && std::abs(row.rhs) <= kZeroRhs) {
        const LpTerm a = row.terms[0], c = row.terms[1];  // a.var < c.var
        if ((a.coef > 0.0) != (c.coef > 0.0)) {
          // a x_i + c x_j = 0  =>  x_j = (-a / c) x_i with a positive ratio.
          row.rhs = 0.0;
          for (int r : rows_with(c.var, s)) subtract(r, s, find_term(rows_[r].terms, c.var)->coef / c.coef);
          subs_.push_back({c.var, PresolveResult::Substitution::kScaled, -a.coef / c.coef, a.var});
          eliminated_[c.var] = 1;
        } else {
          zero_pairs_.push_back({Combination{row.comb}, a.var, c.var});
          for (int var : {a.var, c.var}) {
            for (int r : rows_with(var, s)) {
              std::erase_if(rows_[r].terms, [var](const LpTerm& t) { return t.var == var; });
            }
            subs_.push_back({var, PresolveResult::Substitution::kFixed, 0.0, -1});
            eliminated_[var] = 1;
          }
        }
        row.alive = false;
        changed = true;
      }
    }
    return changed;
  }

  bool dedupe() {
    std::vector<int> order;
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
      if (rows_[i].alive) order.push_back(i);
    }
    auto less = [&](int x, int y) {
      const WorkRow& a = rows_[x];
      const WorkRow& b = rows_[y];
      if (a.rel != b.rel) return a.rel < b.rel;
      if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size();
      for (std::size_t k = 0; k < a.terms.size(); ++k) {
        if (a.terms[k].var != b.terms[k].var) return a.terms[k].var < b.terms[k].var;
        if (a.terms[k].coef != b.terms[k].coef) return a.terms[k].coef < b.terms[k].coef;
      }
      if (a.rhs != b.rhs) return a.rhs < b.rhs;
      return x < y;
    };
    std::sort(order.begin(), order.end(), less);
    auto same = [&](const WorkRow& a, const WorkRow& b) {
      if (a.rel != b.rel || a.terms.size() != b.terms.size()) return false;
      if (std::abs(a.rhs - b.rhs) > kDupTol) return false;
      for (std::size_t k = 0; k < a.terms.size(); ++k) {
        if (a.terms[k].var != b.terms[k].var) return false;
        if (std::abs(a.terms[k].coef - b.terms[k].coef) > kDupTol) return false;
      }
      return true;
    };
    bool changed = false;
    std::size_t rep = 0;
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (same(rows_[order[rep]], rows_[order[k]])) {
        rows_[order[k]].alive = false;
        changed = true;
      } else {
        rep = k;
      }
    }
    return changed;
  }

  const LpProblem& lp_;
  std::vector<WorkRow> rows_;
  std::vector<std::vector<int>> col_rows_;
  std::vector<char> eliminated_;
  std::vector<PresolveResult::Substitution> subs_;
  std::vector<PresolveResult::ZeroPair> zero_pairs_;
  bool infeasible_ = false;
  std::vector<double> certificate_;
};

}  // namespace

PresolveResult presolve(const LpProblem& lp) { return Presolver(lp).run(); }

std::vector<double> PresolveResult::map_certificate(std::span<const double> reduced_y) const {
  if (static_cast<int>(reduced_y.size()) != reduced.num_rows()) {
    throw DimensionError("certificate size does not match the reduced problem");
  }
  std::vector<double> y(original.num_rows(), 0.0);
  for (int k = 0; k < reduced.num_rows(); ++k) {
    for (const auto& [i, w] : row_origin[k].terms) y[i] += reduced_y[k] * w;
  }
  return finish_certificate(original, zero_pairs, std::move(y));
}

std::vector<double> PresolveResult::map_primal(std::span<const double> reduced_x) const {
  if (reduced_x.size() != var_origin.size()) throw DimensionError("primal size does not match the reduced problem");
  std::vector<double> x(original.num_vars(), 0.0);
  for (std::size_t k = 0; k < var_origin.size(); ++k) x[var_origin[k]] = reduced_x[k];
  for (auto it = substitutions.rbegin(); it != substitutions.rend(); ++it) {
    x[it->var] = it->kind == Substitution::kFixed ? it->value : it->value * x[it->target];
  }
  return x;
}

}  // namespace losr
