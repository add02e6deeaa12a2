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

#include <json.hpp>

#include "losr/strategies.hpp"

namespace losr {

using nlohmann::json;

namespace {

json complex_pair(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex read_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidArgument("complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string to_json(const QuantumStrategy& s) {
  s.validate();
  json j;
  if (s.state.is_pure()) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < s.state.amplitudes().size(); ++i) {
      amps.push_back(complex_pair(s.state.amplitudes()(i)));
    }
    j["state"] = {{"amplitudes", amps}};
  } else {
    const CMatrix rho = s.state.density();
    json rows = json::array();
    for (Eigen::Index r = 0; r < rho.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < rho.cols(); ++c) row.push_back(complex_pair(rho(r, c)));
      rows.push_back(row);
    }
    j["state"] = {{"density", rows}};
  }
  json parties = json::array();
  for (std::size_t k = 0; k < s.measurements.size(); ++k) {
    json p;
    p["name"] = s.names.empty() ? std::string(1, static_cast<char>('A' + k)) : s.names[k];
    json obs = json::array();
    for (const BinaryObservable& o : s.measurements[k]) {
      const auto v = o.bloch_vector();
      obs.push_back(json::array({v[0], v[1], v[2]}));
    }
    p["bloch"] = obs;
    parties.push_back(p);
  }
  j["parties"] = parties;
  return j.dump(1);
}

namespace {

QuantumStrategy parse_strategy(const json& j) {
  const json& st = j.at("state");
  std::optional<QuantumState> state;
  if (st.contains("amplitudes")) {
    const json& a = st.at("amplitudes");
    CVector v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = read_complex(a[i]);
    state = QuantumState::pure(v);
  } else {
    const json& rows = st.at("density");
    const auto d = static_cast<Eigen::Index>(rows.size());
    CMatrix rho(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      if (static_cast<Eigen::Index>(rows[r].size()) != d) throw DimensionError("density must be square");
      for (Eigen::Index c = 0; c < d; ++c) rho(r, c) = read_complex(rows[r][c]);
    }
    state = QuantumState::mixed(rho);
  }
  QuantumStrategy s{*state, {}, {}};
  for (const json& p : j.at("parties")) {
    s.names.push_back(p.at("name").get<std::string>());
    PartyMeasurements m;
    for (const json& v : p.at("bloch")) {
      if (!v.is_array() || v.size() != 3) throw InvalidArgument("Bloch vectors have three components");
      m.push_back(BinaryObservable::from_bloch(v[0].get<double>(), v[1].get<double>(), v[2].get<double>()));
    }
    s.measurements.push_back(std::move(m));
  }
  s.validate();
  return s;
}

}  // namespace

QuantumStrategy strategy_from_json(const std::string& text) {
  try {
    return parse_strategy(json::parse(text));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("strategy JSON: ") + e.what());
  }
}

}  // namespace losr
