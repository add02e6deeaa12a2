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
#include <map>
#include <numeric>
#include <set>

#include "losr/inflation.hpp"

namespace losr {
namespace {

constexpr char kTypeNames[] = {'A', 'B', 'C'};

// Builds a party from 1-based copy numbers of its two incident sources, in
// the order AB, BC, CA restricted to the incident ones.
InflatedParty make_party(int type, int copy, int first, int second) {
  InflatedParty p;
  p.type = type;
  p.copy = copy;
  switch (type) {
    case kPartyA: p.source = {first - 1, -1, second - 1}; break;   // AB, CA
    case kPartyB: p.source = {first - 1, second - 1, -1}; break;   // AB, BC
    default: p.source = {-1, first - 1, second - 1}; break;        // BC, CA
  }
  return p;
}

std::vector<int> sorted_by_type(const InflationGraph& g, std::vector<int> subset) {
  std::sort(subset.begin(), subset.end(), [&](int a, int b) {
    return g.party(a).type != g.party(b).type ? g.party(a).type < g.party(b).type : a < b;
  });
  return subset;
}

bool distinct_types(const InflationGraph& g, const std::vector<int>& subset) {
  unsigned seen = 0;
  for (int i : subset) {
    const unsigned bit = 1u << g.party(i).type;
    if (seen & bit) return false;
    seen |= bit;
  }
  return true;
}

// Calls f on every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(int n, int k, F f) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

bool party_uses_source(int type, int source) {
  switch (type) {
    case kPartyA: return source == kSourceAB || source == kSourceCA;
    case kPartyB: return source == kSourceAB || source == kSourceBC;
    case kPartyC: return source == kSourceBC || source == kSourceCA;
  }
  return false;
}

std::string InflatedParty::label() const {
  return std::string(1, kTypeNames[type]) + std::to_string(copy);
}

InflationGraph::InflationGraph(std::string name, std::vector<InflatedParty> parties)
    : name_(std::move(name)), parties_(std::move(parties)) {
  if (parties_.empty()) throw InvalidArgument("inflation needs at least one party");
  if (parties_.size() > 16) throw InvalidArgument("inflations are limited to 16 parties");
  std::set<std::pair<int, int>> labels;
  std::set<std::array<int, 3>> halves;  // (source, copy, holder type)
  for (const InflatedParty& p : parties_) {
    if (p.type < 0 || p.type > 2) throw InvalidArgument("party type out of range");
    if (!labels.insert({p.type, p.copy}).second) throw InvalidArgument("duplicate party " + p.label());
    for (int s = 0; s < 3; ++s) {
      const bool uses = party_uses_source(p.type, s);
      if (uses && p.source[s] < 0) throw InvalidArgument(p.label() + " misses an incident source");
      if (!uses && p.source[s] >= 0) throw InvalidArgument(p.label() + " holds a non-incident source");
      if (uses && !halves.insert({s, p.source[s], p.type}).second) {
        throw InvalidArgument(p.label() + " receives a source half already held by another party");
      }
    }
  }
  automorphisms_ = compute_automorphisms(parties_);
  for (const auto& g : automorphisms_) {
    if (!is_automorphism(g)) throw Error("internal: automorphism failed verification");
  }
}

InflationGraph InflationGraph::ring(int order) {
  if (order == 2) {
    return InflationGraph("ring2", {make_party(kPartyA, 1, 1, 2), make_party(kPartyB, 1, 1, 1),
                                    make_party(kPartyC, 1, 1, 1), make_party(kPartyA, 2, 2, 1),
                                    make_party(kPartyB, 2, 2, 2), make_party(kPartyC, 2, 2, 2)});
  }
  if (order == 3) {
    return InflationGraph("ring3", {make_party(kPartyA, 1, 1, 1), make_party(kPartyB, 1, 1, 1),
                                    make_party(kPartyC, 1, 1, 1), make_party(kPartyA, 2, 2, 3),
                                    make_party(kPartyB, 2, 2, 2), make_party(kPartyC, 2, 2, 2),
                                    make_party(kPartyA, 3, 3, 2), make_party(kPartyB, 3, 3, 3),
                                    make_party(kPartyC, 3, 3, 3)});
  }
  throw InvalidArgument("ring inflation supports orders 2 and 3, got " + std::to_string(order));
}

InflationGraph InflationGraph::ring3_cut() {
  return InflationGraph("cut", {make_party(kPartyA, 1, 1, 1), make_party(kPartyB, 1, 1, 1),
                                make_party(kPartyC, 1, 1, 1), make_party(kPartyA, 2, 2, 3),
                                make_party(kPartyB, 2, 2, 2), make_party(kPartyC, 2, 2, 2)});
}

std::array<int, 3> InflationGraph::source_copies() const {
  std::array<int, 3> n{0, 0, 0};
  for (const InflatedParty& p : parties_) {
    for (int s = 0; s < 3; ++s) n[s] = std::max(n[s], p.source[s] + 1);
  }
  return n;
}

bool InflationGraph::shares_source(int i, int j) const {
  const InflatedParty& a = parties_.at(i);
  const InflatedParty& b = parties_.at(j);
  for (int s = 0; s < 3; ++s) {
    if (a.source[s] >= 0 && a.source[s] == b.source[s]) return true;
  }
  return false;
}

int InflationGraph::find(const std::string& label) const {
  for (int i = 0; i < num_parties(); ++i) {
    if (parties_[i].label() == label) return i;
  }
  return -1;
}

bool InflationGraph::is_automorphism(const std::vector<int>& perm) const {
  const int n = num_parties();
  if (static_cast<int>(perm.size()) != n) return false;
  std::vector<char> hit(n, 0);
  for (int i = 0; i < n; ++i) {
    if (perm[i] < 0 || perm[i] >= n || hit[perm[i]]) return false;
    hit[perm[i]] = 1;
    if (parties_[perm[i]].type != parties_[i].type) return false;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int s = 0; s < 3; ++s) {
        const bool before = parties_[i].source[s] >= 0 && parties_[i].source[s] == parties_[j].source[s];
        const bool after = parties_[perm[i]].source[s] >= 0 &&
                           parties_[perm[i]].source[s] == parties_[perm[j]].source[s];
        if (before != after) return false;
      }
    }
  }
  return true;
}

InflationGraph InflationGraph::relabeled(const std::array<std::vector<int>, 3>& source_perm,
                                         const std::vector<int>& order) const {
  const std::array<int, 3> copies = source_copies();
  for (int s = 0; s < 3; ++s) {
    std::vector<int> sorted = source_perm[s];
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(copies[s]);
    std::iota(expect.begin(), expect.end(), 0);
    if (sorted != expect) throw InvalidArgument("source relabeling is not a permutation");
  }
  std::vector<int> check = order;
  std::sort(check.begin(), check.end());
  std::vector<int> expect(num_parties());
  std::iota(expect.begin(), expect.end(), 0);
  if (check != expect) throw InvalidArgument("party order is not a permutation");
  std::vector<InflatedParty> out;
  for (int k : order) {
    InflatedParty p = parties_[k];
    for (int s = 0; s < 3; ++s) {
      if (p.source[s] >= 0) p.source[s] = source_perm[s][p.source[s]];
    }
    out.push_back(p);
  }
  return InflationGraph(name_ + "-relabeled", std::move(out));
}

std::vector<std::vector<int>> compute_automorphisms(const std::vector<InflatedParty>& parties) {
  std::array<int, 3> copies{0, 0, 0};
  for (const InflatedParty& p : parties) {
    for (int s = 0; s < 3; ++s) copies[s] = std::max(copies[s], p.source[s] + 1);
  }
  std::map<std::array<int, 4>, int> where;  // (type, AB, BC, CA) -> index
  for (int i = 0; i < static_cast<int>(parties.size()); ++i) {
    const InflatedParty& p = parties[i];
    where[{p.type, p.source[0], p.source[1], p.source[2]}] = i;
  }
  std::set<std::vector<int>> found;
  std::array<std::vector<int>, 3> perm;
  for (int s = 0; s < 3; ++s) {
    perm[s].resize(copies[s]);
    std::iota(perm[s].begin(), perm[s].end(), 0);
  }
  auto try_current = [&] {
    std::vector<int> image(parties.size());
    for (std::size_t i = 0; i < parties.size(); ++i) {
      std::array<int, 4> key{parties[i].type, -1, -1, -1};
      for (int s = 0; s < 3; ++s) {
        if (parties[i].source[s] >= 0) key[1 + s] = perm[s][parties[i].source[s]];
      }
      auto it = where.find(key);
      if (it == where.end()) return;
      image[i] = it->second;
    }
    found.insert(image);
  };
  // Odometer over the three permutation sequences.
  std::array<std::vector<int>, 3> start = perm;
  while (true) {
    try_current();
    int s = 0;
    for (; s < 3; ++s) {
      if (std::next_permutation(perm[s].begin(), perm[s].end())) break;
      perm[s] = start[s];
    }
    if (s == 3) break;
  }
  return {found.begin(), found.end()};
}

std::string environment_signature(const InflationGraph& graph, const std::vector<int>& subset) {
  const std::vector<int> s = sorted_by_type(graph, subset);
  std::string sig;
  for (int i : s) sig += kTypeNames[graph.party(i).type];
  sig += ':';
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) sig += graph.shares_source(s[a], s[b]) ? '1' : '0';
  }
  return sig;
}

std::vector<InjectableSet> injectable_sets(const InflationGraph& graph, int max_size) {
  if (max_size < 1) throw InvalidArgument("max_size must be at least 1");
  std::vector<InjectableSet> out;
  const int n = graph.num_parties();
  for (int k = 1; k <= std::min(max_size, 3); ++k) {
    for_each_subset(n, k, [&](const std::vector<int>& idx) {
      if (!distinct_types(graph, idx)) return;
      for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
          if (!graph.shares_source(idx[a], idx[b])) return;
        }
      }
      InjectableSet s;
      s.parties = sorted_by_type(graph, idx);
      for (int i : s.parties) s.image.push_back(graph.party(i).type);
      s.signature = environment_signature(graph, s.parties);
      out.push_back(std::move(s));
    });
  }
  return out;
}

std::vector<std::vector<std::vector<int>>> environment_classes(const InflationGraph& graph, int max_size) {
  std::vector<std::string> keys;
  std::map<std::string, std::vector<std::vector<int>>> classes;
  const int n = graph.num_parties();
  for (int k = 2; k <= std::min(max_size, 3); ++k) {
    for_each_subset(n, k, [&](const std::vector<int>& idx) {
      if (!distinct_types(graph, idx)) return;
      bool all_share = true;
      for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) all_share = all_share && graph.shares_source(idx[a], idx[b]);
      }
      if (all_share) return;
      const std::string sig = environment_signature(graph, idx);
      if (!classes.count(sig)) keys.push_back(sig);
      classes[sig].push_back(sorted_by_type(graph, idx));
    });
  }
  std::vector<std::vector<std::vector<int>>> out;
  for (const std::string& k : keys) {
    if (classes[k].size() >= 2) out.push_back(std::move(classes[k]));
  }
  return out;
}

InputRestriction InputRestriction::games(const InflationGraph& graph) {
  std::vector<char> in_triangle(graph.num_parties(), 0);
  for (const InjectableSet& s : injectable_sets(graph, 3)) {
    if (s.parties.size() == 3) {
      for (int i : s.parties) in_triangle[i] = 1;
    }
  }
  static const std::vector<int> kBell[3] = {{0, 1}, {0, 1}, {1}};
  static const std::vector<int> kSame[3] = {{0}, {2}, {0}};
  InputRestriction r;
  for (int i = 0; i < graph.num_parties(); ++i) {
    const int t = graph.party(i).type;
    r.allowed.push_back(in_triangle[i] ? kBell[t] : kSame[t]);
  }
  return r;
}

InputRestriction InputRestriction::full(const InflationGraph& graph, const std::vector<PartySpec>& target) {
  if (target.size() != 3) throw InvalidArgument("target must be tripartite");
  InputRestriction r;
  for (int i = 0; i < graph.num_parties(); ++i) {
    std::vector<int> all(target[graph.party(i).type].n_inputs);
    std::iota(all.begin(), all.end(), 0);
    r.allowed.push_back(std::move(all));
  }
  return r;
}

std::size_t InputRestriction::num_contexts() const {
  std::size_t n = 1;
  for (const auto& a : allowed) n *= a.size();
  return n;
}

std::vector<int> InputRestriction::context_inputs(std::size_t ctx) const {
  std::vector<int> in(allowed.size());
  for (int k = static_cast<int>(allowed.size()) - 1; k >= 0; --k) {
    in[k] = allowed[k][ctx % allowed[k].size()];
    ctx /= allowed[k].size();
  }
  return in;
}

std::size_t InputRestriction::context_index(const std::vector<int>& inputs) const {
  std::size_t ctx = 0;
  for (std::size_t k = 0; k < allowed.size(); ++k) {
    auto it = std::find(allowed[k].begin(), allowed[k].end(), inputs[k]);
    if (it == allowed[k].end()) throw InvalidArgument("input not in restriction");
    ctx = ctx * allowed[k].size() + static_cast<std::size_t>(it - allowed[k].begin());
  }
  return ctx;
}

bool InputRestriction::allows(int party, int input) const {
  const auto& a = allowed.at(party);
  return std::find(a.begin(), a.end(), input) != a.end();
}

bool InputRestriction::closed_under(const InflationGraph& graph) const {
  if (static_cast<int>(allowed.size()) != graph.num_parties()) return false;
  for (const auto& g : graph.automorphisms()) {
    for (int i = 0; i < graph.num_parties(); ++i) {
      std::vector<int> a = allowed[i], b = allowed[g[i]];
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) return false;
    }
  }
  return true;
}

}  // namespace losr
