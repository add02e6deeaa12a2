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

#include "losr/behavior.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace losr {
namespace {

constexpr double kNegativeClamp = 1e-12;

int pattern_bit(std::size_t pattern, int party, int num_parties) {
  return static_cast<int>((pattern >> (num_parties - 1 - party)) & 1U);
}

// Splits a behavior's contexts and patterns into a retained group of parties
// and a discarded group, so marginals can be accumulated in one pass.
struct PartySplit {
  std::vector<int> keep;
  std::vector<int> drop;
  std::vector<std::size_t> keep_radix;  // input cardinalities of keep
  std::vector<std::size_t> drop_radix;
  std::size_t keep_contexts = 1;
  std::size_t drop_contexts = 1;

  PartySplit(const Behavior& b, std::vector<int> kept) : keep(std::move(kept)) {
    std::vector<bool> in_keep(b.num_parties(), false);
    for (int k : keep) in_keep[k] = true;
    for (int k = 0; k < b.num_parties(); ++k) {
      if (!in_keep[k]) drop.push_back(k);
    }
    for (int k : keep) {
      keep_radix.push_back(b.party(k).n_inputs);
      keep_contexts *= b.party(k).n_inputs;
    }
    for (int k : drop) {
      drop_radix.push_back(b.party(k).n_inputs);
      drop_contexts *= b.party(k).n_inputs;
    }
  }

  static std::size_t flatten(std::span<const int> inputs,
                             const std::vector<int>& parties,
                             const std::vector<std::size_t>& radix) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < parties.size(); ++i) {
      idx = idx * radix[i] + static_cast<std::size_t>(inputs[parties[i]]);
    }
    return idx;
  }

  std::size_t keep_pattern(std::size_t pattern, int num_parties) const {
    std::size_t out = 0;
    for (int k : keep) out = (out << 1) | pattern_bit(pattern, k, num_parties);
    return out;
  }
};

void validate_subset(const Behavior& b, const std::vector<int>& parties) {
  if (parties.empty()) throw InvalidArgument("party subset must be nonempty");
  std::vector<bool> seen(b.num_parties(), false);
  for (int k : parties) {
    if (k < 0 || k >= b.num_parties()) {
      throw InvalidArgument("party index out of range: " + std::to_string(k));
    }
    if (seen[k]) throw InvalidArgument("party listed twice: " + std::to_string(k));
    seen[k] = true;
  }
}

}  // namespace

Behavior::Behavior(std::vector<PartySpec> parties, std::vector<double> table)
    : parties_(std::move(parties)), table_(std::move(table)) {
  if (parties_.empty()) throw InvalidArgument("behavior needs at least one party");
  if (parties_.size() > 24) throw InvalidArgument("too many parties");
  num_contexts_ = 1;
  for (const auto& p : parties_) {
    if (p.n_inputs < 1) {
      throw InvalidArgument("party " + p.name + " must have at least one input");
    }
    num_contexts_ *= static_cast<std::size_t>(p.n_inputs);
  }
  const std::size_t patterns = num_patterns();
  if (table_.size() != num_contexts_ * patterns) {
    throw DimensionError("behavior table has " + std::to_string(table_.size()) +
                         " entries, expected " +
                         std::to_string(num_contexts_ * patterns));
  }
  for (std::size_t c = 0; c < num_contexts_; ++c) {
    double sum = 0.0;
    for (std::size_t o = 0; o < patterns; ++o) {
      double& p = table_[c * patterns + o];
      if (!std::isfinite(p)) throw InvalidArgument("behavior entry is not finite");
      if (p < 0.0) {
        if (p < -kNegativeClamp) {
          throw InvalidArgument("negative probability in context " +
                                std::to_string(c));
        }
        p = 0.0;
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kDistributionTol) {
      std::ostringstream msg;
      msg << "context " << c << " sums to " << sum;
      throw InvalidArgument(msg.str());
    }
  }
}

Behavior Behavior::tabulate(
    std::vector<PartySpec> parties,
    const std::function<double(std::span<const int>, std::span<const int>)>& prob) {
  std::size_t contexts = 1;
  for (const auto& p : parties) contexts *= static_cast<std::size_t>(p.n_inputs);
  const int n = static_cast<int>(parties.size());
  const std::size_t patterns = std::size_t{1} << n;
  std::vector<double> table(contexts * patterns);
  std::vector<int> inputs(n);
  std::vector<int> bits(n);
  for (std::size_t c = 0; c < contexts; ++c) {
    std::size_t rest = c;
    for (int k = n - 1; k >= 0; --k) {
      inputs[k] = static_cast<int>(rest % parties[k].n_inputs);
      rest /= parties[k].n_inputs;
    }
    for (std::size_t o = 0; o < patterns; ++o) {
      for (int k = 0; k < n; ++k) bits[k] = pattern_bit(o, k, n);
      table[c * patterns + o] = prob(inputs, bits);
    }
  }
  return Behavior(std::move(parties), std::move(table));
}

std::size_t Behavior::context_index(std::span<const int> inputs) const {
  if (inputs.size() != parties_.size()) {
    throw DimensionError("context needs one input per party");
  }
  std::size_t idx = 0;
  for (std::size_t k = 0; k < parties_.size(); ++k) {
    if (inputs[k] < 0 || inputs[k] >= parties_[k].n_inputs) {
      throw InvalidArgument("input " + std::to_string(inputs[k]) +
                            " out of range for party " + parties_[k].name);
    }
    idx = idx * parties_[k].n_inputs + static_cast<std::size_t>(inputs[k]);
  }
  return idx;
}

std::vector<int> Behavior::context_inputs(std::size_t context) const {
  std::vector<int> inputs(parties_.size());
  for (int k = num_parties() - 1; k >= 0; --k) {
    inputs[k] = static_cast<int>(context % parties_[k].n_inputs);
    context /= parties_[k].n_inputs;
  }
  return inputs;
}

double Behavior::prob(std::span<const int> inputs,
                      std::span<const int> outputs) const {
  if (outputs.size() != parties_.size()) {
    throw DimensionError("pattern needs one output per party");
  }
  std::size_t pattern = 0;
  for (int v : outputs) {
    if (v != 1 && v != -1) throw InvalidArgument("outputs must be +1 or -1");
    pattern = (pattern << 1) | static_cast<std::size_t>(output_bit(v));
  }
  return prob(context_index(inputs), pattern);
}

Behavior mix(const Behavior& p, const Behavior& q, double lambda) {
  if (p.parties() != q.parties()) throw DimensionError("mixing behaviors of different scenarios");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("mixing weight outside [0,1]");
  std::vector<double> table(p.table().size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    table[i] = lambda * p.table()[i] + (1.0 - lambda) * q.table()[i];
  }
  return Behavior(p.parties(), std::move(table));
}

std::string NonsignallingReport::describe() const {
  std::ostringstream out;
  if (worst_party < 0) {
    out << "nonsignalling (no input choices to compare)";
    return out.str();
  }
  out << (is_nonsignalling ? "nonsignalling" : "SIGNALLING")
      << ", max violation " << max_violation << " when party " << worst_party
      << " switches input " << worst_inputs.first << " -> " << worst_inputs.second
      << " (others' inputs:";
  for (std::size_t k = 0; k < worst_context.size(); ++k) {
    if (static_cast<int>(k) != worst_party) out << ' ' << worst_context[k];
  }
  out << ')';
  return out.str();
}

NonsignallingReport is_nonsignalling(const Behavior& b, double tol) {
  NonsignallingReport report;
  const int n = b.num_parties();
  const std::size_t patterns = b.num_patterns();
  for (int k = 0; k < n; ++k) {
    const int nk = b.party(k).n_inputs;
    if (nk < 2) continue;
    std::vector<int> others;
    for (int j = 0; j < n; ++j) {
      if (j != k) others.push_back(j);
    }
    PartySplit split(b, others);
    // marg[input_k][others_context][others_pattern]
    const std::size_t other_patterns = std::size_t{1} << others.size();
    std::vector<double> marg(static_cast<std::size_t>(nk) * split.keep_contexts *
                                 other_patterns,
                             0.0);
    for (std::size_t c = 0; c < b.num_contexts(); ++c) {
      const auto inputs = b.context_inputs(c);
      const std::size_t oc = PartySplit::flatten(inputs, others, split.keep_radix);
      const std::size_t base =
          (static_cast<std::size_t>(inputs[k]) * split.keep_contexts + oc) * other_patterns;
      for (std::size_t o = 0; o < patterns; ++o) {
        marg[base + split.keep_pattern(o, n)] += b.prob(c, o);
      }
    }
    for (std::size_t oc = 0; oc < split.keep_contexts; ++oc) {
      for (int i = 0; i < nk; ++i) {
        for (int j = i + 1; j < nk; ++j) {
          for (std::size_t op = 0; op < other_patterns; ++op) {
            const double pi = marg[(i * split.keep_contexts + oc) * other_patterns + op];
            const double pj = marg[(j * split.keep_contexts + oc) * other_patterns + op];
            const double diff = std::abs(pi - pj);
            if (diff > report.max_violation || report.worst_party < 0) {
              report.max_violation = std::max(report.max_violation, diff);
              report.worst_party = k;
              report.worst_inputs = {i, j};
              std::vector<int> ctx(n, -1);
              std::size_t rest = oc;
              for (int t = static_cast<int>(others.size()) - 1; t >= 0; --t) {
                ctx[others[t]] = static_cast<int>(rest % split.keep_radix[t]);
                rest /= split.keep_radix[t];
              }
              report.worst_context = std::move(ctx);
            }
          }
        }
      }
    }
  }
  report.is_nonsignalling = report.max_violation <= tol;
  return report;
}

Behavior marginal(const Behavior& b, std::vector<int> keep, double tol) {
  validate_subset(b, keep);
  std::sort(keep.begin(), keep.end());
  const int n = b.num_parties();
  PartySplit split(b, keep);
  const std::size_t kept_patterns = std::size_t{1} << keep.size();
  const std::size_t block = split.keep_contexts * kept_patterns;
  std::vector<double> acc(split.drop_contexts * block, 0.0);
  for (std::size_t c = 0; c < b.num_contexts(); ++c) {
    const auto inputs = b.context_inputs(c);
    const std::size_t kc = PartySplit::flatten(inputs, split.keep, split.keep_radix);
    const std::size_t dc = PartySplit::flatten(inputs, split.drop, split.drop_radix);
    double* dst = acc.data() + dc * block + kc * kept_patterns;
    for (std::size_t o = 0; o < b.num_patterns(); ++o) {
      dst[split.keep_pattern(o, n)] += b.prob(c, o);
    }
  }
  double worst = 0.0;
  for (std::size_t dc = 1; dc < split.drop_contexts; ++dc) {
    for (std::size_t i = 0; i < block; ++i) {
      worst = std::max(worst, std::abs(acc[dc * block + i] - acc[i]));
    }
  }
  if (worst > tol) {
    std::ostringstream msg;
    msg << "marginal depends on discarded parties' inputs (deviation " << worst
        << " > " << tol << ")";
    throw SignallingError(msg.str());
  }
  std::vector<PartySpec> parties;
  for (int k : keep) parties.push_back(b.party(k));
  acc.resize(block);
  // Renormalize away accumulated rounding; sums were already within tolerance.
  for (std::size_t kc = 0; kc < split.keep_contexts; ++kc) {
    double* row = acc.data() + kc * kept_patterns;
    const double s = std::accumulate(row, row + kept_patterns, 0.0);
    for (std::size_t o = 0; o < kept_patterns; ++o) row[o] /= s;
  }
  return Behavior(std::move(parties), std::move(acc));
}

Behavior condition(const Behavior& b, int party, int input, int output) {
  const int n = b.num_parties();
  if (n < 2) throw InvalidArgument("conditioning needs at least two parties");
  if (party < 0 || party >= n) throw InvalidArgument("party index out of range");
  if (input < 0 || input >= b.party(party).n_inputs) {
    throw InvalidArgument("conditioning input out of range");
  }
  if (output != 1 && output != -1) throw InvalidArgument("output must be +1 or -1");
  const int target_bit = output_bit(output);
  std::vector<int> rest;
  std::vector<PartySpec> parties;
  for (int k = 0; k < n; ++k) {
    if (k != party) {
      rest.push_back(k);
      parties.push_back(b.party(k));
    }
  }
  PartySplit split(b, rest);
  const std::size_t rest_patterns = std::size_t{1} << rest.size();
  std::vector<double> table(split.keep_contexts * rest_patterns, 0.0);
  std::vector<int> full(n);
  for (std::size_t rc = 0; rc < split.keep_contexts; ++rc) {
    std::size_t r = rc;
    for (int t = static_cast<int>(rest.size()) - 1; t >= 0; --t) {
      full[rest[t]] = static_cast<int>(r % split.keep_radix[t]);
      r /= split.keep_radix[t];
    }
    full[party] = input;
    const std::size_t c = b.context_index(full);
    double event = 0.0;
    double* dst = table.data() + rc * rest_patterns;
    for (std::size_t o = 0; o < b.num_patterns(); ++o) {
      if (pattern_bit(o, party, n) != target_bit) continue;
      event += b.prob(c, o);
      dst[split.keep_pattern(o, n)] += b.prob(c, o);
    }
    if (event <= kDistributionTol) {
      std::ostringstream msg;
      msg << "conditioning event (party " << party << ", input " << input
          << ", output " << output << ") has probability " << event;
      throw DegenerateConditioningError(msg.str());
    }
    for (std::size_t o = 0; o < rest_patterns; ++o) dst[o] /= event;
  }
  return Behavior(std::move(parties), std::move(table));
}

double correlator(const Behavior& b, std::span<const PartyInput> terms, double tol) {
  std::vector<int> listed;
  for (const auto& t : terms) listed.push_back(t.party);
  validate_subset(b, listed);
  std::vector<int> order(terms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return terms[i].party < terms[j].party; });
  std::vector<int> sorted_parties;
  std::vector<int> inputs;
  for (int i : order) {
    sorted_parties.push_back(terms[i].party);
    inputs.push_back(terms[i].input);
  }
  const Behavior m = marginal(b, sorted_parties, tol);
  const std::size_t c = m.context_index(inputs);
  double value = 0.0;
  for (std::size_t o = 0; o < m.num_patterns(); ++o) {
    const int parity = std::popcount(o) & 1;
    value += (parity ? -1.0 : 1.0) * m.prob(c, o);
  }
  return value;
}

double correlator(const Behavior& b, std::initializer_list<PartyInput> terms,
                  double tol) {
  return correlator(b, std::span<const PartyInput>(terms.begin(), terms.size()), tol);
}

Behavior permute_parties(const Behavior& b, std::span<const int> order) {
  const int n = b.num_parties();
  if (static_cast<int>(order.size()) != n) throw DimensionError("permutation size mismatch");
  std::vector<int> check(order.begin(), order.end());
  std::sort(check.begin(), check.end());
  for (int k = 0; k < n; ++k) {
    if (check[k] != k) throw InvalidArgument("not a permutation of the parties");
  }
  std::vector<PartySpec> parties;
  for (int k : order) parties.push_back(b.party(k));
  std::vector<int> src_inputs(n);
  std::vector<int> src_bits(n);
  return Behavior::tabulate(
      std::move(parties), [&](std::span<const int> inputs, std::span<const int> bits) {
        for (int k = 0; k < n; ++k) {
          src_inputs[order[k]] = inputs[k];
          src_bits[order[k]] = bits[k];
        }
        std::size_t pattern = 0;
        for (int bit : src_bits) pattern = (pattern << 1) | static_cast<std::size_t>(bit);
        return b.prob(b.context_index(src_inputs), pattern);
      });
}

}  // namespace losr
