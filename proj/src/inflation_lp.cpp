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
#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include "losr/inflation.hpp"

namespace losr {
namespace {

using Rows = std::vector<LpRow>;

// Runs item(i, out) for i in [0, n) and concatenates the outputs in index
// order, so serial and parallel runs give identical row lists.
template <class F>
Rows generate(int n, Execution exec, F item) {
  std::vector<Rows> slots(n);
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) item(i, slots[i]);
  } else {
    for (int i = 0; i < n; ++i) item(i, slots[i]);
  }
  Rows out;
  std::size_t total = 0;
  for (const Rows& s : slots) total += s.size();
  out.reserve(total);
  for (Rows& s : slots) std::move(s.begin(), s.end(), std::back_inserter(out));
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

class Assembler {
 public:
  Assembler(const InflationGraph& graph, const Behavior& target, const InputRestriction& restriction,
            const ConstraintSelection& selection, Execution exec)
      : g_(graph), target_(target), r_(restriction), sel_(selection), exec_(exec),
        m_(graph.num_parties()), patterns_(std::size_t{1} << m_), contexts_(restriction.num_contexts()) {}

  AssembledLp run() {
    check_inputs();
    AssembledLp out;
    out.restriction = r_;
    out.num_parties = m_;
    out.lp = LpProblem(static_cast<int>(contexts_ * patterns_));

    Rows norm = normalization();
    out.rows_normalization = static_cast<int>(norm.size());
    out.lp.add_rows(std::move(norm));
    if (sel_.nonsignalling) {
      Rows ns = nonsignalling();
      out.rows_nonsignalling = static_cast<int>(ns.size());
      out.lp.add_rows(std::move(ns));
    }
    if (sel_.symmetry) {
      Rows sym = symmetry();
      out.rows_symmetry = static_cast<int>(sym.size());
      out.lp.add_rows(std::move(sym));
    }
    if (sel_.injectable) {
      Rows inj = injectable();
      out.rows_injectable = static_cast<int>(inj.size());
      out.lp.add_rows(std::move(inj));
    }
    if (sel_.isomorphism) {
      Rows iso = isomorphism();
      out.rows_isomorphism = static_cast<int>(iso.size());
      out.lp.add_rows(std::move(iso));
    }
    return out;
  }

 private:
  void check_inputs() {
    if (target_.num_parties() != 3) throw InvalidArgument("target behavior must be tripartite (A, B, C)");
    if (static_cast<int>(r_.allowed.size()) != m_) throw InvalidArgument("restriction has the wrong number of parties");
    for (int i = 0; i < m_; ++i) {
      if (r_.allowed[i].empty()) throw InvalidArgument("restriction gives " + g_.party(i).label() + " no inputs");
      for (int x : r_.allowed[i]) {
        if (x < 0 || x >= target_.party(g_.party(i).type).n_inputs) {
          throw InvalidArgument("restriction input " + std::to_string(x) + " for " + g_.party(i).label() +
                                " is not an input of the target");
        }
      }
    }
    if (!r_.closed_under(g_)) throw InvalidArgument("input restriction is not closed under the automorphism group");
    const NonsignallingReport ns = is_nonsignalling(target_);
    if (!ns.is_nonsignalling) throw SignallingError("target behavior signals: " + ns.describe());
    if (contexts_ * patterns_ > std::size_t{1} << 30) throw InvalidArgument("inflated LP too large");
  }

  int bit(std::size_t pattern, int party) const { return static_cast<int>((pattern >> (m_ - 1 - party)) & 1); }
  int var(std::size_t ctx, std::size_t pattern) const { return static_cast<int>(ctx * patterns_ + pattern); }

  Rows normalization() {
    return generate(static_cast<int>(contexts_), exec_, [&](int c, Rows& out) {
      LpRow row{{}, Relation::kEq, 1.0, "norm:c" + std::to_string(c)};
      row.terms.reserve(patterns_);
      for (std::size_t p = 0; p < patterns_; ++p) row.terms.push_back({var(c, p), 1.0});
      out.push_back(std::move(row));
    });
  }

  // For each party with several inputs: switching its input leaves the joint
  // distribution of everybody else unchanged.
  Rows nonsignalling() {
    return generate(static_cast<int>(contexts_), exec_, [&](int c, Rows& out) {
      const std::vector<int> in = r_.context_inputs(c);
      for (int k = 0; k < m_; ++k) {
        if (r_.allowed[k].size() < 2 || in[k] != r_.allowed[k][0]) continue;
        for (std::size_t alt = 1; alt < r_.allowed[k].size(); ++alt) {
          std::vector<int> in2 = in;
          in2[k] = r_.allowed[k][alt];
          const std::size_t c2 = r_.context_index(in2);
          const int shift = m_ - 1 - k;
          for (std::size_t rest = 0; rest < patterns_ / 2; ++rest) {
            const std::size_t high = (rest >> shift) << (shift + 1);
            const std::size_t low = rest & ((std::size_t{1} << shift) - 1);
            LpRow row{{}, Relation::kEq, 0.0,
                      "ns:" + g_.party(k).label() + ":c" + std::to_string(c) + ">" + std::to_string(r_.allowed[k][alt]) +
                          ":r" + std::to_string(rest)};
            for (std::size_t o = 0; o < 2; ++o) {
              const std::size_t p = high | (o << shift) | low;
              row.terms.push_back({var(c, p), 1.0});
              row.terms.push_back({var(c2, p), -1.0});
            }
            out.push_back(std::move(row));
          }
        }
      }
    });
  }

  // Q(v) equals its average over the automorphism group, for every variable
  // of a nontrivial orbit except the orbit's smallest.
  Rows symmetry() {
    const auto& group = g_.automorphisms();
    if (group.size() <= 1) return {};
    const double w = 1.0 / static_cast<double>(group.size());
    return generate(static_cast<int>(contexts_), exec_, [&](int c, Rows& out) {
      const std::vector<int> in = r_.context_inputs(c);
      std::vector<std::size_t> image_ctx(group.size());
      for (std::size_t gi = 0; gi < group.size(); ++gi) {
        std::vector<int> moved(m_);
        for (int i = 0; i < m_; ++i) moved[group[gi][i]] = in[i];
        image_ctx[gi] = r_.context_index(moved);
      }
      for (std::size_t p = 0; p < patterns_; ++p) {
        const int self = var(c, p);
        std::vector<int> images(group.size());
        for (std::size_t gi = 0; gi < group.size(); ++gi) {
          std::size_t q = 0;
          for (int i = 0; i < m_; ++i) q |= static_cast<std::size_t>(bit(p, i)) << (m_ - 1 - group[gi][i]);
          images[gi] = var(image_ctx[gi], q);
        }
        const int smallest = *std::min_element(images.begin(), images.end());
        if (smallest == self) continue;  // also skips fixed points
        LpRow row{{{self, 1.0}}, Relation::kEq, 0.0, "sym:v" + std::to_string(self)};
        for (int v : images) row.terms.push_back({v, -w});
        out.push_back(std::move(row));
      }
    });
  }

  bool selected(const std::vector<int>& subset) const {
    if (!sel_.subsets) return true;
    std::vector<int> s = subset;
    std::sort(s.begin(), s.end());
    for (std::vector<int> t : *sel_.subsets) {
      std::sort(t.begin(), t.end());
      if (t == s) return true;
    }
    return false;
  }

  // Context with the subset's inputs set and everybody else on its first
  // allowed input.
  std::size_t canonical_context(const std::vector<int>& subset, const std::vector<int>& inputs) const {
    std::vector<int> in(m_);
    for (int i = 0; i < m_; ++i) in[i] = r_.allowed[i][0];
    for (std::size_t k = 0; k < subset.size(); ++k) in[subset[k]] = inputs[k];
    return r_.context_index(in);
  }

  // Sum of Q over patterns that agree with `bits` on the subset.
  void add_marginal(LpRow& row, const std::vector<int>& subset, std::size_t ctx, const std::vector<int>& bits,
                    double coef) const {
    for (std::size_t p = 0; p < patterns_; ++p) {
      bool match = true;
      for (std::size_t k = 0; k < subset.size() && match; ++k) match = bit(p, subset[k]) == bits[k];
      if (match) row.terms.push_back({var(ctx, p), coef});
    }
  }

  std::vector<std::vector<int>> input_choices(const std::vector<int>& subset) const {
    std::vector<std::vector<int>> out{{}};
    for (int i : subset) {
      std::vector<std::vector<int>> next;
      for (const auto& prefix : out) {
        for (int x : r_.allowed[i]) {
          auto v = prefix;
          v.push_back(x);
          next.push_back(std::move(v));
        }
      }
      out = std::move(next);
    }
    return out;
  }

  static std::vector<int> bits_of(std::size_t o, std::size_t n) {
    std::vector<int> b(n);
    for (std::size_t k = 0; k < n; ++k) b[k] = static_cast<int>((o >> (n - 1 - k)) & 1);
    return b;
  }

  std::string labels(const std::vector<int>& subset) const {
    std::string s;
    for (int i : subset) s += g_.party(i).label();
    return s;
  }

  Rows injectable() {
    struct Item {
      std::vector<int> subset;
      std::vector<int> inputs;
      const Behavior* marginal;
    };
    std::vector<Item> items;
    for (const InjectableSet& s : injectable_sets(g_, 3)) {
      if (!selected(s.parties)) continue;
      auto it = marginals_.find(s.image);
      if (it == marginals_.end()) it = marginals_.emplace(s.image, marginal(target_, s.image)).first;
      for (auto& in : input_choices(s.parties)) items.push_back({s.parties, std::move(in), &it->second});
    }
    return generate(static_cast<int>(items.size()), exec_, [&](int i, Rows& out) {
      const Item& item = items[i];
      const std::size_t ctx = canonical_context(item.subset, item.inputs);
      const std::size_t n = item.subset.size();
      for (std::size_t o = 0; o < (std::size_t{1} << n); ++o) {
        const std::vector<int> b = bits_of(o, n);
        std::vector<int> values(n);
        for (std::size_t k = 0; k < n; ++k) values[k] = output_value(b[k]);
        LpRow row{{}, Relation::kEq, item.marginal->prob(item.inputs, values),
                  "inj:" + labels(item.subset) + ":x" + join(item.inputs) + ":o" + std::to_string(o)};
        add_marginal(row, item.subset, ctx, b, 1.0);
        out.push_back(std::move(row));
      }
    });
  }

  Rows isomorphism() {
    struct Item {
      std::vector<int> first, other, inputs;
    };
    std::vector<Item> items;
    for (const auto& cls : environment_classes(g_, 3)) {
      std::vector<std::vector<int>> members;
      for (const auto& s : cls) {
        if (selected(s)) members.push_back(s);
      }
      for (std::size_t k = 1; k < members.size(); ++k) {
        for (auto& in : input_choices(members[0])) {
          bool ok = true;
          for (std::size_t j = 0; j < in.size(); ++j) ok = ok && r_.allows(members[k][j], in[j]);
          if (ok) items.push_back({members[0], members[k], std::move(in)});
        }
      }
    }
    return generate(static_cast<int>(items.size()), exec_, [&](int i, Rows& out) {
      const Item& item = items[i];
      const std::size_t c1 = canonical_context(item.first, item.inputs);
      const std::size_t c2 = canonical_context(item.other, item.inputs);
      const std::size_t n = item.first.size();
      for (std::size_t o = 0; o < (std::size_t{1} << n); ++o) {
        const std::vector<int> b = bits_of(o, n);
        LpRow row{{}, Relation::kEq, 0.0,
                  "iso:" + labels(item.first) + "~" + labels(item.other) + ":x" + join(item.inputs) + ":o" +
                      std::to_string(o)};
        add_marginal(row, item.first, c1, b, 1.0);
        add_marginal(row, item.other, c2, b, -1.0);
        out.push_back(std::move(row));
      }
    });
  }

  const InflationGraph& g_;
  const Behavior& target_;
  const InputRestriction& r_;
  const ConstraintSelection& sel_;
  Execution exec_;
  int m_;
  std::size_t patterns_;
  std::size_t contexts_;
  std::map<std::vector<int>, Behavior> marginals_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

AssembledLp assemble_lp(const InflationGraph& graph, const Behavior& target, const InputRestriction& restriction,
                        const ConstraintSelection& selection, Execution exec) {
  return Assembler(graph, target, restriction, selection, exec).run();
}

InflationGraph build_graph(const CertifyConfig& config) {
  if (config.wiring == Wiring::kRing3Cut) {
    if (config.order != 3) throw InvalidArgument("the cut wiring is a cut of the order-3 ring");
    return InflationGraph::ring3_cut();
  }
  return InflationGraph::ring(config.order);
}

FeasibilityOutcome certify_on(const InflationGraph& graph, const Behavior& target,
                              const InputRestriction& restriction, const CertifyConfig& config) {
  FeasibilityOutcome out;
  out.graph_name = graph.name();
  auto t0 = std::chrono::steady_clock::now();
  AssembledLp a = assemble_lp(graph, target, restriction, config.selection, config.assembly);
  out.assemble_seconds = seconds_since(t0);
  out.rows = a.lp.num_rows();
  out.vars = a.lp.num_vars();

  t0 = std::chrono::steady_clock::now();
  SolverResult res = solve_feasibility(a.lp, config.solver);
  out.solve_seconds = seconds_since(t0);
  out.verdict = res.status;
  out.iterations = res.iterations;
  out.presolved_rows = res.presolved_rows;
  out.presolved_vars = res.presolved_vars;
  out.message = res.message;
  if (res.status == SolveStatus::kFeasible) out.witness = std::move(res.primal);
  if (res.status == SolveStatus::kInfeasible) {
    out.certificate = std::move(res.dual);
    out.certificate_gap = res.gap;
  }
  out.lp = std::move(a.lp);
  return out;
}

FeasibilityOutcome certify(const Behavior& target, const CertifyConfig& config) {
  const InflationGraph graph = build_graph(config);
  const InputRestriction restriction = config.restriction == RestrictionMode::kFull
                                           ? InputRestriction::full(graph, target.parties())
                                           : InputRestriction::games(graph);
  return certify_on(graph, target, restriction, config);
}

bool verdicts_monotone(std::vector<std::pair<double, SolveStatus>> evaluations) {
  std::sort(evaluations.begin(), evaluations.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  bool seen_infeasible = false;
  for (const auto& [f, st] : evaluations) {
    if (st == SolveStatus::kInfeasible) seen_infeasible = true;
    if (st == SolveStatus::kFeasible && seen_infeasible) return false;
  }
  return true;
}

BisectionResult threshold_bisect(const std::function<Behavior(double)>& family, const CertifyConfig& config,
                                 double precision, const std::vector<std::pair<double, SolveStatus>>& extra) {
  if (!(precision > 0.0)) throw InvalidArgument("precision must be positive");
  BisectionResult res;
  auto verdict = [&](double f) {
    const SolveStatus st = certify(family(f), config).verdict;
    res.evaluations.push_back({f, st});
    return st;
  };
  if (verdict(0.0) != SolveStatus::kFeasible) throw InvalidArgument("precondition: family(0) is not feasible");
  if (verdict(1.0) != SolveStatus::kInfeasible) throw InvalidArgument("precondition: family(1) is not infeasible");
  double lo = 0.0, hi = 1.0;
  while (hi - lo > precision) {
    const double mid = 0.5 * (lo + hi);
    const SolveStatus st = verdict(mid);
    if (st == SolveStatus::kNumericalFailure) {
      res.note = "numerical failure at f = " + std::to_string(mid) + "; search stopped";
      break;
    }
    (st == SolveStatus::kFeasible ? lo : hi) = mid;
  }
  res.lo = lo;
  res.hi = hi;
  res.threshold = 0.5 * (lo + hi);
  res.evaluations.insert(res.evaluations.end(), extra.begin(), extra.end());
  std::sort(res.evaluations.begin(), res.evaluations.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  res.monotone = verdicts_monotone(res.evaluations);
  if (!res.monotone) {
    res.note += std::string(res.note.empty() ? "" : "; ") + "verdicts are not monotone in f";
  }
  return res;
}

double bisect_predicate(const std::function<bool(double)>& holds, double lo, double hi, double precision) {
  if (!(precision > 0.0) || !(lo < hi)) throw InvalidArgument("bisection needs lo < hi and positive precision");
  if (holds(lo) || !holds(hi)) throw InvalidArgument("precondition: predicate must be false at lo and true at hi");
  while (hi - lo > precision) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace losr
