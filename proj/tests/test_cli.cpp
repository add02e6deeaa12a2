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
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "losr/strategies.hpp"

namespace losr::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Invocation {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Invocation invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("losr-cli-" + std::to_string(rd()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, EvaluateGhz) {
  const Invocation r = invoke({"evaluate", "ghz"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = r.report();
  EXPECT_NEAR(j["scores"]["combined"].get<double>(), 2 * std::sqrt(2.0) + 8, 1e-9);
  EXPECT_NEAR(j["scores"]["c1"].get<double>(), 0.0, 1e-12);
  EXPECT_TRUE(j["nonsignalling"]["is_nonsignalling"].get<bool>());
  EXPECT_EQ(j["bounds"]["bipartite_cause"], 10);
  EXPECT_EQ(j["exit_code"], 0);
}

TEST_F(CliTest, EvaluateNsBoxExact) {
  const Invocation r = invoke({"evaluate", "ns-box", "--exact"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = r.report();
  EXPECT_EQ(j["scores"]["combined_exact"], "12");
  EXPECT_TRUE(j["nonsignalling"]["is_nonsignalling"].get<bool>());
}

TEST_F(CliTest, EvaluateNoViolation) {
  const json j = invoke({"evaluate", "noisy-ghz:0.5"}).report();
  EXPECT_NEAR(j["scores"]["combined"].get<double>(), 0.5 * (2 * std::sqrt(2.0) + 8), 1e-9);
  EXPECT_EQ(j["verdict"], "no violation");
}

TEST_F(CliTest, CertifyGhzWritesValidCertificate) {
  const std::string cert = path("cert.json"), lp = path("cert.lp");
  const Invocation r = invoke({"certify", "ghz", "--order", "3", "--cert-out", cert, "--lp-out", lp});
  ASSERT_EQ(r.code, kExitInfeasible) << r.err;
  const json c = r.report()["certification"][0];
  EXPECT_EQ(c["verdict"], "infeasible");
  EXPECT_TRUE(c["certificate_valid"].get<bool>());
  EXPECT_GE(c["certificate_gap"].get<double>(), 1e-9);
  ASSERT_TRUE(fs::exists(cert));
  ASSERT_TRUE(fs::exists(lp));
  const Invocation check = invoke({"check-cert", "--lp", lp, "--cert", cert});
  EXPECT_EQ(check.code, 0) << check.err;
  EXPECT_TRUE(check.report()["valid"].get<bool>());
}

TEST_F(CliTest, CheckCertRejectsTamperedCertificate) {
  const std::string cert = path("cert.json"), lp = path("cert.lp");
  ASSERT_EQ(invoke({"certify", "ns-box", "--wiring", "cut", "--cert-out", cert, "--lp-out", lp}).code,
            kExitInfeasible);
  json j = json::parse(slurp(cert));
  json& y = j.is_array() ? j : j["y"];
  for (auto& v : y) v = 0.0;
  std::ofstream(cert) << j.dump();
  EXPECT_EQ(invoke({"check-cert", "--lp", lp, "--cert", cert}).code, 1);
}

TEST_F(CliTest, CertifyClassicalPointFeasible) {
  const std::string cert = path("never.json");
  const Invocation r = invoke({"certify", "noisy-ghz:0", "--order", "2", "--cert-out", cert});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.report()["certification"][0]["verdict"], "feasible");
  EXPECT_FALSE(fs::exists(cert));
}

TEST_F(CliTest, CertifyWitnessFile) {
  const std::string w = path("witness.json");
  ASSERT_EQ(invoke({"certify", "classical-opt", "--wiring", "cut", "--witness-out", w}).code, kExitOk);
  EXPECT_NO_THROW(json::parse(slurp(w)));
}

TEST_F(CliTest, SweepInequalityThreshold) {
  const std::string csv = path("sweep.csv");
  const Invocation r = invoke({"sweep", "--family", "noisy-ghz", "--from", "0.8", "--to", "1.0", "--step", "0.005",
                        "--mode", "inequality", "--csv", csv});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = r.report();
  const double f = j["thresholds"]["inequality"]["f_star"].get<double>();
  EXPECT_NEAR(f, 10.0 / (8 + 2 * std::sqrt(2.0)), 1e-3);
  EXPECT_EQ(j["rows"].size(), 41u);
  std::istringstream lines(slurp(csv));
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "f,combined,bell,same,c1,ineq_violated,lp_verdict");
  int n = 0;
  for (std::string line; std::getline(lines, line);) n += !line.empty();
  EXPECT_EQ(n, 41);
}

TEST_F(CliTest, SweepLpOnCut) {
  const Invocation r = invoke({"sweep", "--from", "0.8", "--to", "1.0", "--step", "0.02", "--mode", "lp", "--wiring",
                        "cut", "--precision", "1e-3", "--csv", path("lp.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json th = r.report()["thresholds"];
  ASSERT_FALSE(th["lp"]["f_star"].is_null()) << th.dump();
  EXPECT_LE(th["lp"]["f_star"].get<double>(), th["inequality"]["f_star"].get<double>());
  EXPECT_TRUE(th["lp"]["monotone"].get<bool>());
  EXPECT_TRUE(th["lp"]["lp_at_most_inequality"].get<bool>());
}

TEST_F(CliTest, SweepRangeErrors) {
  EXPECT_EQ(invoke({"sweep", "--from", "0.9", "--to", "0.8"}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--step", "0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--from", "-0.1"}).code, kExitUsage);
}

TEST_F(CliTest, ReplayReproducesReport) {
  const std::string csv = path("a.csv");
  const json first = invoke({"evaluate", "noisy-ghz:0.95", "--exact"}).report();
  std::vector<std::string> args = first["command"].get<std::vector<std::string>>();
  const json second = invoke(args).report();
  EXPECT_EQ(first["scores"], second["scores"]);
  EXPECT_EQ(first["verdict"], second["verdict"]);
  EXPECT_EQ(first["inputs"], second["inputs"]);

  const json c1 = invoke({"certify", "ns-box", "--wiring", "cut", "--cert-out", path("c.json"), "--lp-out", ""})
                      .report();
  const json c2 = invoke(c1["command"].get<std::vector<std::string>>()).report();
  EXPECT_EQ(c1["certification"][0]["verdict"], c2["certification"][0]["verdict"]);
  EXPECT_NEAR(c1["certification"][0]["certificate_gap"].get<double>(),
              c2["certification"][0]["certificate_gap"].get<double>(), 1e-9);
}

TEST_F(CliTest, VersionedAliasMatches) {
  EXPECT_EQ(behavior_hash(resolve_behavior("ghz@1").behavior), behavior_hash(resolve_behavior("ghz").behavior));
  EXPECT_EQ(resolve_behavior("ghz").name, "ghz@1");
  EXPECT_EQ(behavior_hash(resolve_behavior("noisy-ghz@1:0.9").behavior),
            behavior_hash(noisy_ghz_behavior(0.9)));
}

TEST_F(CliTest, BadInputs) {
  EXPECT_EQ(invoke({"evaluate", path("missing.json")}).code, kExitUsage);
  EXPECT_EQ(invoke({"evaluate", "noisy-ghz:2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"certify", "ghz", "--order", "5"}).code, kExitUsage);
  std::ofstream(path("junk.json")) << "{not json";
  EXPECT_EQ(invoke({"evaluate", path("junk.json")}).code, kExitUsage);
}

TEST_F(CliTest, SignallingFileIsFlagged) {
  const Behavior sig = Behavior::tabulate(ghz3_parties(), [](std::span<const int> in, std::span<const int> bits) {
    const double pb = in[0] == 0 ? 0.9 : 0.1;
    return (bits[1] == 0 ? pb : 1 - pb) * 0.25;
  });
  std::ofstream(path("sig.json")) << to_json(sig);
  const Invocation r = invoke({"evaluate", path("sig.json")});
  EXPECT_EQ(r.code, kExitUsage);
  const json j = r.report();
  EXPECT_FALSE(j["nonsignalling"]["is_nonsignalling"].get<bool>());
  EXPECT_TRUE(j["scores"].is_null());
  EXPECT_EQ(invoke({"certify", path("sig.json"), "--cert-out", ""}).code, kExitUsage);
}

TEST_F(CliTest, GenerateThenEvaluate) {
  const std::string file = path("ghz.json");
  ASSERT_EQ(invoke({"generate", "ghz", "--out", file}).code, kExitOk);
  const json a = invoke({"evaluate", "ghz"}).report();
  const json b = invoke({"evaluate", file}).report();
  EXPECT_EQ(a["inputs"][0]["sha256"], b["inputs"][0]["sha256"]);
  EXPECT_EQ(a["scores"], b["scores"]);
}

TEST_F(CliTest, StrategyDump) {
  const Invocation r = invoke({"strategy", "ghz"});
  ASSERT_EQ(r.code, kExitOk);
  const std::vector<double> a = strategy_from_json(r.out).behavior().table();
  const std::vector<double> b = ghz_quantum_strategy().behavior().table();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
}

TEST_F(CliTest, ReportFileMatchesStdout) {
  const Invocation r = invoke({"evaluate", "ghz", "--report", path("r.json")});
  EXPECT_EQ(json::parse(slurp(path("r.json"))), r.report());
}

TEST_F(CliTest, HelpAndVersion) {
  EXPECT_EQ(invoke({"--help"}).code, 0);
  const Invocation v = invoke({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(kVersion), std::string::npos);
}

}  // namespace
}  // namespace losr::cli
