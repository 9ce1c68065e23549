// Copyright 2026 The Fullgen SMT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "smt/feasibility.h"
#include "smt/structure_json.h"
#include "smtctl.h"

namespace smt::cli {
namespace {

using ::testing::HasSubstr;
using Json = nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("smtctl_test_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    std::string path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }
  // Writes the output of `gen` to a file.
  std::string Gen(const std::string& name, std::vector<std::string> args) {
    args.insert(args.begin(), "gen");
    Result r = Cli(args);
    EXPECT_EQ(r.code, kOk) << r.err;
    return Write(name, r.out);
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, GenCounts) {
  EXPECT_EQ(Cli({"gen", "threshold", "4", "1"}).json()["pairs"].size(), 4u);
  EXPECT_EQ(Cli({"gen", "dl", "4", "2", "1"}).json()["pairs"].size(), 24u);
  std::string sets = Write("sets.json", "[[1,2,3],[1,2,4],[1,5]]");
  Json g = Cli({"gen", "general", "5", sets}).json();
  ASSERT_EQ(g["pairs"].size(), 3u);
  EXPECT_EQ(g["pairs"][2]["disrupt"], g["pairs"][2]["listen"]);
  EXPECT_EQ(g["pairs"][2]["disrupt"], Json::parse("[1,5]"));
}

TEST_F(CliTest, GenRejectsBadParameters) {
  EXPECT_EQ(Cli({"gen", "threshold", "17", "1"}).code, kBadInput);
  EXPECT_EQ(Cli({"gen", "threshold", "4"}).code, kBadInput);
  EXPECT_EQ(Cli({"gen", "dl", "4", "x", "1"}).code, kBadInput);
  EXPECT_EQ(Cli({"gen", "cube", "4"}).code, kBadInput);
  EXPECT_EQ(Cli({"gen", "general", "3", Write("s.json", "[[1,9]]")}).code,
            kBadInput);
}

TEST_F(CliTest, GenModeAndRoundTrip) {
  Result r = Cli({"gen", "threshold", "3", "1", "--mode", "oblivious"});
  ASSERT_EQ(r.code, kOk);
  auto a = ParseStructureJson(r.out);
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(a->mode(), ObliviousnessMode::kOblivious);
}

TEST_F(CliTest, CheckExampleSetsAndThreshold) {
  std::string sets = Write("sets.json", "[[1,2,3],[1,2,4],[1,5]]");
  std::string general = Gen("g.json", {"general", "5", sets});
  Result r = Cli({"check", general, "oneway"});
  EXPECT_EQ(r.code, kInfeasible);
  EXPECT_EQ(r.json()["feasible"], false);
  std::string t72 = Gen("t72.json", {"threshold", "7", "2"});
  EXPECT_EQ(Cli({"check", t72, "oneway"}).code, kOk);
}

TEST_F(CliTest, CheckMatchesLibrary) {
  for (int n = 3; n <= 5; ++n) {
    for (int d = 0; d <= 2; ++d) {
      for (int l = 0; l <= 2; ++l) {
        std::string f = Gen("dl.json", {"dl", std::to_string(n),
                                        std::to_string(d), std::to_string(l)});
        auto a = *DlStructure(n, d, l);
        for (Setting s : {Setting::kOneWay, Setting::kTwoWay,
                          Setting::kTwoRoundNonCompletelyOblivious}) {
          Result r = Cli({"check", f, std::string(SettingName(s))});
          EXPECT_EQ(r.out, ReportToJson(CheckFeasibility(a, s)).dump(2) + "\n");
          EXPECT_EQ(r.code, CheckFeasibility(a, s).feasible ? kOk
                                                           : kInfeasible);
        }
      }
    }
  }
}

TEST_F(CliTest, MalformedInput) {
  std::string bad = Write("bad.json", "{\"wires\": 3,");
  Result r = Cli({"check", bad, "oneway"});
  EXPECT_EQ(r.code, kBadInput);
  EXPECT_THAT(r.err, HasSubstr("line"));
  EXPECT_EQ(Cli({"check", (dir_ / "missing.json").string(), "oneway"}).code,
            kBadInput);
  std::string t = Gen("t.json", {"threshold", "4", "1"});
  EXPECT_EQ(Cli({"check", t, "sideways"}).code, kBadInput);
  EXPECT_EQ(Cli({"frobnicate"}).code, kBadInput);
  EXPECT_EQ(Cli({}).code, kBadInput);
}

TEST_F(CliTest, SimulateDecodesAndIsDeterministic) {
  std::string t = Gen("t.json", {"threshold", "4", "1"});
  for (std::string setting : {"oneway", "twoway"}) {
    std::vector<std::string> args = {"simulate", t,         setting,
                                     "-m",       "12345",   "-s",
                                     "9",        "--pair",  "2",
                                     "--behavior", "noise"};
    Result a = Cli(args);
    ASSERT_EQ(a.code, kOk) << a.err;
    Json j = a.json();
    EXPECT_EQ(j["decoded"], 12345);
    EXPECT_EQ(j["rounds"], setting == "oneway" ? 1 : 2);
    EXPECT_EQ(Cli(args).out, a.out);
    args[6] = "10";
    EXPECT_NE(Cli(args).out, a.out);
  }
}

TEST_F(CliTest, SimulatePassiveDeliversWhatWasSent) {
  std::string t = Gen("t.json", {"threshold", "4", "1"});
  Json j = Cli({"simulate", t, "twoway", "-m", "5", "--pair", "1"}).json();
  for (const Json& tx : j["transcript"]["transmissions"]) {
    EXPECT_EQ(tx["sent"], tx["delivered"]);
  }
  EXPECT_FALSE(j["transcript"]["view"].empty());
}

TEST_F(CliTest, SimulateRefusals) {
  std::string t = Gen("t.json", {"threshold", "3", "1"});
  EXPECT_EQ(Cli({"simulate", t, "oneway"}).code, kInfeasible);
  std::string ok = Gen("ok.json", {"threshold", "4", "1"});
  EXPECT_EQ(Cli({"simulate", ok, "oneway", "--pair", "9"}).code, kBadInput);
  EXPECT_EQ(Cli({"simulate", ok, "oneway", "--pair", "1", "--behavior",
                 "shout"})
                .code,
            kBadInput);
  EXPECT_EQ(Cli({"simulate", ok, "twoway", "-p", "3"}).code, kBadInput);
}

TEST_F(CliTest, VerifyExitCodes) {
  std::string t = Gen("t.json", {"threshold", "4", "1"});
  EXPECT_EQ(Cli({"verify", t, "oneway", "--mode", "reliability"}).code, kOk);
  Result fault = Cli(
      {"verify", t, "oneway", "--mode", "reliability", "--inject-fault"});
  EXPECT_EQ(fault.code, kVerificationFailed);
  EXPECT_EQ(fault.json()["ok"], false);
  Result big = Cli({"verify", t, "oneway", "--mode", "privacy", "-p",
                    "2147483647"});
  EXPECT_EQ(big.code, kBudgetRefused);
  EXPECT_EQ(big.json()["refused"], true);
  EXPECT_EQ(Cli({"verify", t, "oneway", "--mode", "both"}).code, kBadInput);
}

TEST_F(CliTest, VerifyPrivacyOnThreePairs) {
  std::string s = Write("s.json",
                        R"({"wires": 4, "pairs": [
                          {"disrupt": [1], "listen": [1]},
                          {"disrupt": [2], "listen": [2]},
                          {"disrupt": [3], "listen": [3]}]})");
  Result r = Cli({"verify", s, "oneway", "--mode", "privacy"});
  EXPECT_EQ(r.code, kOk) << r.out;
  Result two = Cli({"verify", s, "twoway", "--mode", "privacy"});
  EXPECT_EQ(two.code, kOk) << two.err;
}

TEST_F(CliTest, AttackThresholdThreeOne) {
  std::string t = Gen("t.json", {"threshold", "3", "1"});
  Result r = Cli({"attack", t, "oneway", "--m1", "1", "--m2", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  Json j = r.json();
  EXPECT_EQ(j["verified"], true);
  EXPECT_EQ(j["receiver_inputs_identical"], true);
  EXPECT_THAT(j["messages"].get<std::vector<int>>(),
              ::testing::UnorderedElementsAre(1, 3));
  EXPECT_EQ(j["executions"].size(), 2u);
  EXPECT_EQ(Cli({"attack", t, "oneway", "--m1", "1", "--m2", "3"}).out, r.out);
}

TEST_F(CliTest, AttackRefusals) {
  std::string t = Gen("t.json", {"threshold", "3", "1"});
  EXPECT_EQ(Cli({"attack", t, "oneway", "--m1", "2", "--m2", "2"}).code,
            kBadInput);
  EXPECT_EQ(Cli({"attack", t, "oneway", "--m1", "1", "--m2", "6"}).code,
            kBadInput);
  std::string ok = Gen("ok.json", {"threshold", "4", "1"});
  EXPECT_EQ(Cli({"attack", ok, "oneway"}).code, kInfeasible);
}

TEST_F(CliTest, AttackSearchExhaustion) {
  std::string t = Write("t.json", R"({"wires": 3, "mode": "oblivious",
                                     "pairs": [{"disrupt": [1],
                                                "listen": [2, 3]}]})");
  Result r = Cli({"attack", t, "tworound_nco", "--node-budget", "1"});
  EXPECT_EQ(r.code, kSearchExhausted) << r.out;
}

TEST_F(CliTest, AttackRemapsCutDownStructures) {
  std::string dl = Gen("dl.json", {"dl", "4", "2", "2"});
  Result r = Cli({"attack", dl, "twoway", "--m1", "0", "--m2", "1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  Json j = r.json();
  for (const Json& p : j["pairs"]) {
    EXPECT_GE(p.get<int>(), 1);
    EXPECT_LE(p.get<int>(), 36);
  }
  EXPECT_EQ(j["pairs"], j["cover"]["pairs"]);
}

TEST_F(CliTest, Help) {
  Result r = Cli({"--help"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_THAT(r.out, HasSubstr("attack"));
}

}  // namespace
}  // namespace smt::cli
