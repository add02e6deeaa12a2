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
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "losr/behavior.hpp"

namespace losr {
namespace {

std::string format_probability(double p) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", p);
  return buf;
}

double parse_probability(const nlohmann::json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(s, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("malformed probability: " + s);
    }
    if (used != s.size()) throw InvalidArgument("malformed probability: " + s);
    return p;
  }
  if (v.is_number()) return v.get<double>();
  throw InvalidArgument("probability must be a decimal string or number");
}

std::string context_key(std::span<const int> inputs) {
  std::string key;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (k) key += ',';
    key += std::to_string(inputs[k]);
  }
  return key;
}

}  // namespace

std::string to_json(const Behavior& behavior) {
  std::vector<int> order(behavior.num_parties());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return behavior.party(i).name < behavior.party(j).name;
  });
  const Behavior sorted = permute_parties(behavior, order);

  nlohmann::ordered_json doc;
  doc["parties"] = nlohmann::ordered_json::array();
  for (const auto& p : sorted.parties()) {
    doc["parties"].push_back({{"name", p.name}, {"n_inputs", p.n_inputs}});
  }
  doc["outputs"] = {-1, 1};
  nlohmann::ordered_json table = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < sorted.num_contexts(); ++c) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (double p : sorted.context(c)) row.push_back(format_probability(p));
    table[context_key(sorted.context_inputs(c))] = std::move(row);
  }
  doc["table"] = std::move(table);
  return doc.dump(2);
}

Behavior behavior_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("behavior JSON does not parse: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("parties") || !doc.contains("table")) {
    throw InvalidArgument("behavior JSON needs \"parties\" and \"table\"");
  }
  if (doc.contains("outputs")) {
    auto outs = doc["outputs"];
    if (!outs.is_array() || outs.size() != 2) {
      throw InvalidArgument("only binary +-1 outputs are supported");
    }
  }
  std::vector<PartySpec> parties;
  for (const auto& p : doc["parties"]) {
    if (!p.contains("name") || !p.contains("n_inputs")) {
      throw InvalidArgument("party entries need \"name\" and \"n_inputs\"");
    }
    parties.push_back({p["name"].get<std::string>(), p["n_inputs"].get<int>()});
  }
  if (parties.empty()) throw InvalidArgument("behavior JSON lists no parties");
  std::size_t contexts = 1;
  for (const auto& p : parties) {
    if (p.n_inputs < 1) throw InvalidArgument("n_inputs must be positive");
    contexts *= static_cast<std::size_t>(p.n_inputs);
  }
  const std::size_t patterns = std::size_t{1} << parties.size();
  const auto& table = doc["table"];
  if (!table.is_object() || table.size() != contexts) {
    throw InvalidArgument("table must have one entry per input context (" +
                          std::to_string(contexts) + ")");
  }
  std::vector<double> values(contexts * patterns);
  std::vector<int> inputs(parties.size());
  for (std::size_t c = 0; c < contexts; ++c) {
    std::size_t rest = c;
    for (int k = static_cast<int>(parties.size()) - 1; k >= 0; --k) {
      inputs[k] = static_cast<int>(rest % parties[k].n_inputs);
      rest /= parties[k].n_inputs;
    }
    const std::string key = context_key(inputs);
    if (!table.contains(key)) throw InvalidArgument("table misses context " + key);
    const auto& row = table[key];
    if (!row.is_array() || row.size() != patterns) {
      throw InvalidArgument("context " + key + " needs " + std::to_string(patterns) +
                            " probabilities");
    }
    for (std::size_t o = 0; o < patterns; ++o) {
      values[c * patterns + o] = parse_probability(row[o]);
    }
  }
  return Behavior(std::move(parties), std::move(values));
}

}  // namespace losr
