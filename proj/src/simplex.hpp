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

// Dense two-phase tableau simplex, templated on the scalar so the same code
// runs in double precision and in exact rationals. Internal to the library.

#ifndef LOSR_SRC_SIMPLEX_HPP_
#define LOSR_SRC_SIMPLEX_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "losr/lpsolve.hpp"

namespace losr::detail {

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static constexpr bool kExact = false;
  static double from(double v) { return v; }
  static double to_double(double v) { return v; }
  static bool pivot_ok(double v) { return v > 1e-9; }
  static bool improving(double d) { return d < -1e-9; }
  static void snap(double& v) {
    if (std::abs(v) < 1e-13) v = 0.0;
  }
};

template <>
struct ScalarOps<mpq_class> {
  static constexpr bool kExact = true;
  static mpq_class from(double v) { return mpq_class(v); }  // exact
  static double to_double(const mpq_class& v) { return v.get_d(); }
  static bool pivot_ok(const mpq_class& v) { return sgn(v) > 0; }
  static bool improving(const mpq_class& d) { return sgn(d) < 0; }
  static void snap(mpq_class&) {}
};

enum class PhaseStatus { kOptimal, kUnbounded, kIterationLimit };

template <class S>
class Tableau {
  using Ops = ScalarOps<S>;

 public:
  // Rows are scaled to unit max-norm (floating point only), flipped so that
  // b >= 0, given a slack column when they are inequalities and an artificial
  // column each. The phase-one objective (sum of artificials) is installed.
  Tableau(const LpProblem& lp, PivotRule rule, Execution exec)
      : m_(lp.num_rows()), n_(lp.num_vars()), rule_(rule), exec_(exec) {
    n_slack_ = 0;
    for (const LpRow& row : lp.rows()) {
      if (row.rel != Relation::kEq) ++n_slack_;
    }
    art0_ = n_ + n_slack_;
    rhs_ = art0_ + m_;
    width_ = rhs_ + 1;
    t_.assign(static_cast<std::size_t>(m_ + 1) * width_, S(0));
    basis_.resize(m_);
    row_sign_.resize(m_);
    row_scale_.resize(m_, 1.0);
    live_.assign(m_, 1);

    int slack = n_;
    for (int i = 0; i < m_; ++i) {
      const LpRow& row = lp.rows()[i];
      double scale = 1.0;
      if (!Ops::kExact) {
        double big = 0.0;
        for (const LpTerm& t : row.terms) big = std::max(big, std::abs(t.coef));
        if (big > 0.0) scale = 1.0 / big;
      }
      const double sign = (row.rhs * scale < 0.0) ? -1.0 : 1.0;
      row_scale_[i] = scale;
      row_sign_[i] = sign;
      S* r = row_ptr(i);
      for (const LpTerm& t : row.terms) r[t.var] = Ops::from(t.coef) * Ops::from(scale * sign);
      if (row.rel != Relation::kEq) {
        const double s = row.rel == Relation::kLe ? 1.0 : -1.0;
        r[slack++] = Ops::from(s * sign);
      }
      r[art0_ + i] = S(1);
      r[rhs_] = Ops::from(row.rhs) * Ops::from(scale * sign);
      basis_[i] = art0_ + i;
    }
    // Phase-one reduced costs: d_j = -sum_i T_ij for every non-artificial
    // column, 0 for artificials, and -w in the rhs slot.
    S* obj = row_ptr(m_);
    for (int i = 0; i < m_; ++i) {
      const S* r = row_ptr(i);
      for (int j = 0; j < art0_; ++j) {
        if (r[j] != 0) obj[j] -= r[j];
      }
      obj[rhs_] -= r[rhs_];
    }
  }

  int rows() const { return m_; }
  int structural() const { return n_; }
  long iterations() const { return iterations_; }

  S objective_value() const { return -row_ptr(m_)[rhs_]; }

  PhaseStatus run(long max_iterations) {
    int degenerate_streak = 0;
    while (true) {
      if (iterations_ >= max_iterations) return PhaseStatus::kIterationLimit;
      const bool bland = rule_ == PivotRule::kBland || degenerate_streak > 50;
      const int c = entering(bland);
      if (c < 0) return PhaseStatus::kOptimal;
      const int r = leaving(c);
      if (r < 0) return PhaseStatus::kUnbounded;
      if (row_ptr(r)[rhs_] == 0) {
        ++degenerate_streak;
      } else {
        degenerate_streak = 0;
      }
      pivot(r, c);
      ++iterations_;
    }
  }

  // Phase-one dual: u_i = 1 - d(art_i), mapped back through the row flip and
  // scaling so it multiplies the caller's rows.
  std::vector<double> farkas() const {
    std::vector<double> y(m_);
    const S* obj = row_ptr(m_);
    for (int i = 0; i < m_; ++i) {
      const S u = S(1) - obj[art0_ + i];
      y[i] = Ops::to_double(u) * row_sign_[i] * row_scale_[i];
    }
    return y;
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (live_[i] && basis_[i] < n_) x[basis_[i]] = Ops::to_double(row_ptr(i)[rhs_]);
    }
    return x;
  }

  // After a successful phase one: pivots artificials out of the basis where
  // possible and retires rows that turn out to be redundant.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (!live_[i] || basis_[i] < art0_) continue;
      const S* r = row_ptr(i);
      int best = -1;
      for (int j = 0; j < art0_; ++j) {
        if (Ops::kExact ? r[j] != 0 : std::abs(Ops::to_double(r[j])) > 1e-9) {
          best = j;
          break;
        }
      }
      if (best < 0) {
        live_[i] = 0;
      } else {
        pivot(i, best);
      }
    }
  }

  // Installs min -c.x as the objective row for phase two.
  void set_maximize(std::span<const double> objective) {
    S* obj = row_ptr(m_);
    std::fill(obj, obj + width_, S(0));
    for (int j = 0; j < n_; ++j) obj[j] = -Ops::from(objective[j]);
    for (int i = 0; i < m_; ++i) {
      if (!live_[i]) continue;
      const int b = basis_[i];
      const S f = obj[b];
      if (f == 0) continue;
      const S* r = row_ptr(i);
      for (int j = 0; j < width_; ++j) {
        if (r[j] != 0) obj[j] -= f * r[j];
      }
    }
    // Artificials are never allowed back in.
    for (int j = art0_; j < rhs_; ++j) obj[j] = S(0);
  }

 private:
  S* row_ptr(int i) { return t_.data() + static_cast<std::size_t>(i) * width_; }
  const S* row_ptr(int i) const { return t_.data() + static_cast<std::size_t>(i) * width_; }

  int entering(bool bland) const {
    const S* obj = row_ptr(m_);
    if (bland) {
      for (int j = 0; j < art0_; ++j) {
        if (Ops::improving(obj[j])) return j;
      }
      return -1;
    }
    int best = -1;
    for (int j = 0; j < art0_; ++j) {
      if (Ops::improving(obj[j]) && (best < 0 || obj[j] < obj[best])) best = j;
    }
    return best;
  }

  // Minimum ratio; ties broken by the smallest basic variable index (Bland).
  int leaving(int c) const {
    int best = -1;
    S best_ratio(0);
    for (int i = 0; i < m_; ++i) {
      if (!live_[i]) continue;
      const S* r = row_ptr(i);
      if (!Ops::pivot_ok(r[c])) continue;
      const S ratio = r[rhs_] / r[c];
      if (best < 0) {
        best = i;
        best_ratio = ratio;
        continue;
      }
      bool take;
      if constexpr (Ops::kExact) {
        take = ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[best]);
      } else {
        const double tie = 1e-12 * (1.0 + std::abs(best_ratio));
        take = ratio < best_ratio - tie ||
               (ratio <= best_ratio + tie && basis_[i] < basis_[best]);
      }
      if (take) {
        best = i;
        best_ratio = ratio;
      }
    }
    return best;
  }

  void pivot(int r, int c) {
    S* pr = row_ptr(r);
    const S inv = S(1) / pr[c];
    nz_.clear();
    for (int j = 0; j < width_; ++j) {
      if (pr[j] != 0) {
        pr[j] *= inv;
        Ops::snap(pr[j]);
        if (pr[j] != 0) nz_.push_back(j);
      }
    }
    pr[c] = S(1);
    const int total = m_ + 1;
    if (exec_ == Execution::kParallel && !Ops::kExact) {
#pragma omp parallel for schedule(static)
      for (int i = 0; i < total; ++i) {
        if (i != r) eliminate(i, r, c);
      }
    } else {
      for (int i = 0; i < total; ++i) {
        if (i != r) eliminate(i, r, c);
      }
    }
    basis_[r] = c;
  }

  void eliminate(int i, int r, int c) {
    S* row = row_ptr(i);
    if (row[c] == 0) return;
    const S f = row[c];
    const S* pr = row_ptr(r);
    for (int j : nz_) {
      row[j] -= f * pr[j];
      Ops::snap(row[j]);
    }
    row[c] = S(0);
  }

  int m_, n_;
  int n_slack_ = 0, art0_ = 0, rhs_ = 0, width_ = 0;
  PivotRule rule_;
  Execution exec_;
  std::vector<S> t_;
  std::vector<int> basis_;
  std::vector<double> row_sign_, row_scale_;
  std::vector<char> live_;
  std::vector<int> nz_;
  long iterations_ = 0;
};

}  // namespace losr::detail

#endif  // LOSR_SRC_SIMPLEX_HPP_
