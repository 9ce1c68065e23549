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

#include "smt/feasibility.h"

#include <random>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace smt {
namespace {

using ::smt::testing::S;
using ::smt::testing::W;

// Oracle: fold every union of the named sets over all index choices.
bool AnyCover3(const AdversaryStructure& a, bool dd_l) {
  const auto& p = a.pairs();
  for (const auto& x : p) {
    for (const auto& y : p) {
      for (const auto& z : p) {
        std::vector<WireSet> sets = {x.disrupt, y.disrupt,
                                     dd_l ? z.listen : y.listen};
        if (Covers(sets, a.n())) return true;
      }
    }
  }
  return false;
}

bool AnyCover2(const AdversaryStructure& a) {
  for (const auto& x : a.pairs()) {
    for (const auto& y : a.pairs()) {
      std::vector<WireSet> dd = {x.disrupt, y.disrupt};
      std::vector<WireSet> dl = {x.disrupt, y.listen};
      if (Covers(dd, a.n()) || Covers(dl, a.n())) return true;
    }
  }
  return false;
}

AdversaryStructure RandomStructure(std::mt19937& rng) {
  int n = 1 + rng() % 6;
  int count = rng() % 5;
  std::vector<AdversaryPair> pairs;
  for (int i = 0; i < count; ++i) {
    pairs.push_back({WireSet(n, rng() & ((1u << n) - 1)),
                     WireSet(n, rng() & ((1u << n) - 1))});
  }
  return *AdversaryStructure::Create(n, pairs);
}

TEST(FeasibilityTest, PredicatesMatchUnionOracle) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 3000; ++trial) {
    auto a = RandomStructure(rng);
    EXPECT_EQ(FeasibleOneWay(a).feasible, !AnyCover3(a, true));
    EXPECT_EQ(FeasibleTwoWay(a).feasible, !AnyCover2(a));
    EXPECT_EQ(FeasibleTwoRoundNonCompletelyOblivious(a).feasible,
              !AnyCover3(a, false));
  }
}

TEST(FeasibilityTest, WitnessesAreGenuineCovers) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    auto a = RandomStructure(rng);
    for (Setting s : {Setting::kOneWay, Setting::kTwoWay,
                      Setting::kTwoRoundNonCompletelyOblivious}) {
      FeasibilityReport r = CheckFeasibility(a, s);
      ASSERT_EQ(r.feasible, !r.witness.has_value());
      if (r.witness) {
        EXPECT_TRUE(Covers(r.witness->sets, a.n()));
        EXPECT_TRUE(WitnessCovers(a, *r.witness));
      }
    }
  }
}

TEST(FeasibilityTest, ExampleGeneralStructureIsOneWayInfeasible) {
  std::vector<WireSet> sets = {W(5, {1, 2, 3}), W(5, {1, 2, 4}), W(5, {1, 5})};
  auto a = *GeneralStructure(5, sets);
  FeasibilityReport r = FeasibleOneWay(a);
  EXPECT_FALSE(r.feasible);
  // {1,2,3} u {1,2,4} u {1,5}: the first witness in scan order.
  EXPECT_EQ(r.witness->clause, "D_i+D_j+L_k");
  EXPECT_EQ(r.witness->pairs, (std::vector<size_t>{0, 1, 2}));
  // Two sets never cover, so the two-way protocol applies.
  EXPECT_TRUE(FeasibleTwoWay(a).feasible);
}

TEST(FeasibilityTest, EmptyStructureIsFeasible) {
  auto a = S(3, {});
  EXPECT_TRUE(FeasibleOneWay(a).feasible);
  EXPECT_TRUE(FeasibleTwoWay(a).feasible);
}

TEST(FeasibilityTest, ThresholdAgreesWithClosedForm) {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      auto a = *ThresholdStructure(n, k);
      EXPECT_EQ(FeasibleOneWay(a).feasible,
                FeasibleClassic(ClassicCondition::kThresholdOneWay, n, k));
      EXPECT_EQ(FeasibleTwoWay(a).feasible,
                FeasibleClassic(ClassicCondition::kThresholdTwoWay, n, k));
    }
  }
  EXPECT_TRUE(FeasibleOneWay(*ThresholdStructure(7, 2)).feasible);
}

TEST(FeasibilityTest, DlAgreesWithClosedForm) {
  for (int n = 1; n <= 5; ++n) {
    for (int d = 0; d <= n; ++d) {
      for (int l = 0; l <= n; ++l) {
        auto a = *DlStructure(n, d, l);
        EXPECT_EQ(FeasibleOneWay(a).feasible,
                  FeasibleClassic(ClassicCondition::kDlOneWay, n, d, l))
            << n << d << l;
        EXPECT_EQ(FeasibleTwoWay(a).feasible,
                  FeasibleClassic(ClassicCondition::kDlTwoWay, n, d, l))
            << n << d << l;
      }
    }
  }
}

TEST(FeasibilityTest, StrengthenedStructureDecidesTwoRoundCase) {
  // No D_i u D_j u L_j cover for A exactly when the strengthened
  // structure has no D_i u L'_j cover and no D_i u D_j cover.
  std::mt19937 rng(8);
  for (int trial = 0; trial < 2000; ++trial) {
    auto a = RandomStructure(rng);
    EXPECT_EQ(FeasibleTwoRoundNonCompletelyOblivious(a).feasible,
              FeasibleTwoWay(Strengthen(a)).feasible);
  }
}

TEST(FeasibilityTest, SettingNamesRoundTrip) {
  for (Setting s : {Setting::kOneWay, Setting::kTwoWay,
                    Setting::kTwoRoundNonCompletelyOblivious}) {
    EXPECT_EQ(*ParseSetting(SettingName(s)), s);
  }
  EXPECT_FALSE(ParseSetting("threeway").ok());
}

TEST(FeasibilityTest, ReportJsonIsOneBased) {
  auto a = *ThresholdStructure(2, 1);
  auto j = ReportToJson(FeasibleTwoWay(a));
  EXPECT_EQ(j.dump(),
            R"({"setting":"twoway","feasible":false,"witness":{"clause":)"
            R"("D_i+D_j","pairs":[1,2],"sets":[[1],[2]]}})");
}

TEST(FeasibilityTest, RefusalNamesTheWitness) {
  auto a = *ThresholdStructure(3, 1);
  absl::Status s = RefuseIfInfeasible(FeasibleOneWay(a));
  EXPECT_EQ(s.code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_THAT(std::string(s.message()), ::testing::HasSubstr("D_i+D_j+L_k"));
}

}  // namespace
}  // namespace smt
