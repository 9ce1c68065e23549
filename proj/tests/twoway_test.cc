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

#include "smt/twoway.h"

#include <array>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "smt/feasibility.h"
#include "test_util.h"

namespace smt {
namespace {

using ::smt::testing::S;
using ::smt::testing::W;

Classification Classify(const Field& f, std::array<uint64_t, 4> v) {
  return ClassifyPoints(f, std::span<const uint64_t, 4>(v));
}

TEST(ClassifyTest, AllOnALine) {
  Field f = *Field::Create(11);
  EXPECT_EQ(Classify(f, {2, 3, 4, 5}).cls, PointClass::kA);
  // Constant lines count as degree one.
  EXPECT_EQ(Classify(f, {7, 7, 7, 7}).cls, PointClass::kA);
}

TEST(ClassifyTest, OneOffTheLine) {
  Field f = *Field::Create(11);
  Classification c = Classify(f, {2, 9, 4, 5});
  EXPECT_EQ(c.cls, PointClass::kC);
  EXPECT_EQ(c.excluded, 2);
}

TEST(ClassifyTest, NoTripleThroughTheFourthPoint) {
  Field f = *Field::Create(11);
  EXPECT_EQ(Classify(f, {0, 1, 0, 5}).cls, PointClass::kB);
  // The first three are collinear but miss p(4): two were disrupted.
  EXPECT_EQ(Classify(f, {1, 2, 3, 9}).cls, PointClass::kB);
}

TEST(ClassifyTest, MatchesTripleEnumerationOracle) {
  Field f = *Field::Create(5);
  for (uint64_t code = 0; code < 625; ++code) {
    std::array<uint64_t, 4> v = {code % 5, code / 5 % 5, code / 25 % 5,
                                 code / 125};
    // Oracle: for each triple with position 4, test degree-1 consistency
    // by interpolation through two and checking the third.
    std::vector<int> lines;
    for (int e = 1; e <= 3; ++e) {
      std::vector<Point> pts;
      for (int x = 1; x <= 3; ++x) {
        if (x != e) pts.push_back({uint64_t(x), v[x - 1]});
      }
      pts.push_back({4, v[3]});
      if (ConsistentWithDegree(f, pts, 1)) lines.push_back(e);
    }
    Classification c = Classify(f, v);
    if (lines.size() == 3) {
      EXPECT_EQ(c.cls, PointClass::kA);
    } else if (lines.size() == 1) {
      EXPECT_EQ(c.cls, PointClass::kC);
      EXPECT_EQ(c.excluded, lines[0]);
    } else {
      EXPECT_EQ(lines.size(), 0u);
      EXPECT_EQ(c.cls, PointClass::kB);
    }
  }
}

TEST(SelectRolesTest, Priorities) {
  using C = Classification;
  std::array<C, 4> cs = {C{PointClass::kC, 1}, C{PointClass::kB, 0},
                         C{PointClass::kA, 0}, C{PointClass::kA, 0}};
  Roles r = *SelectRoles(std::span<const C, 4>(cs));
  EXPECT_EQ(r.tag, 'A');
  EXPECT_EQ(r.first, 2);
  cs[2] = cs[3] = C{PointClass::kB, 0};
  r = *SelectRoles(std::span<const C, 4>(cs));
  EXPECT_EQ(r.tag, 'B');
  EXPECT_EQ(r.first, 1);
  EXPECT_EQ(r.second, 0);
  std::array<C, 4> only_b0 = {C{PointClass::kB, 0}, C{PointClass::kC, 1},
                              C{PointClass::kC, 2}, C{PointClass::kC, 3}};
  r = *SelectRoles(std::span<const C, 4>(only_b0));
  EXPECT_EQ(r.second, 1);
  std::array<C, 4> cc = {C{PointClass::kC, 1}, C{PointClass::kC, 2},
                         C{PointClass::kC, 3}, C{PointClass::kC, 2}};
  r = *SelectRoles(std::span<const C, 4>(cc));
  EXPECT_EQ(r.tag, 'C');
  EXPECT_EQ(r.first, 1);
  EXPECT_EQ(r.second, 3);
}

TEST(PayloadTest, CaseADecodes) {
  Field f = *Field::Create(11);
  // p_1(x) = 6 + x.
  std::array<std::array<uint64_t, 4>, 4> pbar{};
  pbar[0] = {7, 8, 9, 10};
  Payload pl = BuildPayload(f, Roles{'A', 0, -1}, pbar, 4);
  EXPECT_EQ(pl[0], 1u);
  EXPECT_EQ(pl[1], 1u);
  EXPECT_EQ(pl[6], 10u);
  std::array<std::array<uint64_t, 2>, 4> poly{};
  poly[0] = {6, 1};
  EXPECT_EQ(*DecodePayload(f, pl, poly), 4u);
}

TEST(PayloadTest, LineAtZero) {
  Field f = *Field::Create(11);
  // Through (1, 5) and (4, 0): slope -5/3 = 2 (mod 11), so p(0) = 3.
  EXPECT_EQ(LineAtZero(f, 1, 5, 4, 0), 3u);
}

TEST(ComposeTest, Examples) {
  Field f = *Field::Create(11);
  std::array<uint64_t, 4> clean = {7, 9, 0, 2};
  EXPECT_EQ(*ComposeInductiveTwoWay(f, clean), 5u);
  std::array<uint64_t, 4> one = {7, 3, 0, 2};
  EXPECT_EQ(*ComposeInductiveTwoWay(f, one), 5u);
  std::array<uint64_t, 4> two = {7, 3, 1, 2};
  EXPECT_FALSE(ComposeInductiveTwoWay(f, two).ok());
}

TEST(TwoWayPlanTest, ThreePairsGiveOneLeafObeyingAvoidance) {
  auto a = *ThresholdStructure(3, 1);
  auto p = *TwoWayProtocol::Plan(a);
  ASSERT_EQ(p->leaves().size(), 1u);
  const TwoWayLeaf& l = p->leaves()[0];
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      EXPECT_FALSE(a.pair(j).disrupt.Contains(l.w[j][k]));
      EXPECT_FALSE(a.pair(k).listen.Contains(l.w[j][k]));
    }
  }
  const std::array<std::pair<int, int>, 3> avoid = {
      std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}};
  for (int c = 0; c < 3; ++c) {
    EXPECT_FALSE(a.pair(avoid[c].first).disrupt.Contains(l.w4[c]));
    EXPECT_FALSE(a.pair(avoid[c].second).disrupt.Contains(l.w4[c]));
  }
  EXPECT_EQ(p->phase(0).slots.size(), 48u);
  EXPECT_EQ(p->phase(1).slots.size(), 27u);
}

TEST(TwoWayPlanTest, InductiveChildrenShareTwoPhases) {
  auto a = S(5, {{{1}, {1}}, {{2}, {2}}, {{3}, {3}}, {{4}, {4}}});
  auto p = *TwoWayProtocol::Plan(a);
  EXPECT_EQ(p->leaves().size(), 4u);
  EXPECT_EQ(p->phase_count(), 2);
  EXPECT_EQ(p->phase(0).slots.size(), 4u * 48u);
  EXPECT_EQ(p->phase(0).direction, Direction::kReceiverToSender);
  EXPECT_EQ(p->phase(1).direction, Direction::kSenderToReceiver);
}

TEST(TwoWayPlanTest, SinglePairIsPadded) {
  auto p = *TwoWayProtocol::Plan(S(3, {{{1}, {2}}}));
  EXPECT_EQ(p->leaves().size(), 1u);
}

TEST(TwoWayPlanTest, RefusesInfeasible) {
  EXPECT_EQ(TwoWayProtocol::Plan(*ThresholdStructure(2, 1)).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_TRUE(
      TwoWayProtocol::Plan(*ThresholdStructure(2, 1), {.force = true}).ok());
}

TEST(TwoWayRoundOneTest, SharesSumToEvaluations) {
  Field f = *Field::Create(11);
  auto p = *TwoWayProtocol::Plan(*ThresholdStructure(3, 1));
  SeededTape r(5);
  TwoWayReceiverState state;
  auto sent = p->Round1Receiver(f, r, state);
  const TwoWayLeaf& l = p->leaves()[0];
  for (int i = 0; i < 4; ++i) {
    auto [c0, c1] = state.polys[0][i];
    for (int j = 0; j < 3; ++j) {
      uint64_t sum = 0;
      for (int k = 0; k < 3; ++k) sum = f.Add(sum, sent[l.share_slots[i][j][k]]);
      EXPECT_EQ(sum, f.Add(c0, f.Mul(c1, j + 1)));
    }
    for (int c = 0; c < 3; ++c) {
      EXPECT_EQ(sent[l.p4_slots[i][c]], f.Add(c0, f.Mul(c1, 4)));
    }
  }
}

TEST(TwoWayRunTest, UndisturbedRunUsesCaseAWithFirstPolynomial) {
  Field f = *Field::Create(11);
  auto p = *TwoWayProtocol::Plan(*ThresholdStructure(3, 1));
  SeededTape s(1), r(2);
  auto out = *p->Run(f, 7, s, r, nullptr);
  EXPECT_EQ(out.decoded, 7u);
  EXPECT_EQ(out.rounds, 2);
  const TwoWayLeaf& l = p->leaves()[0];
  std::vector<uint64_t> round2;
  for (const auto& t : out.transcript.transmissions) {
    if (t.round == 2) round2.push_back(t.delivered);
  }
  EXPECT_EQ(round2[l.payload_slots[0][0]], 1u);
  EXPECT_EQ(round2[l.payload_slots[1][0]], 1u);
}

TEST(TwoWayRunTest, NoiseExercisesEveryCaseAndAlwaysDecodes) {
  Field f = *Field::Create(5);
  auto a = *ThresholdStructure(3, 1);
  auto p = *TwoWayProtocol::Plan(a);
  const TwoWayLeaf& l = p->leaves()[0];
  std::set<uint64_t> tags;
  for (size_t pair = 0; pair < 3; ++pair) {
    for (uint64_t seed = 0; seed < 400; ++seed) {
      Adversary adv(a, pair, NoiseStrategy(), seed);
      SeededTape s(seed), r(seed + 1000);
      auto out = p->Run(f, seed % 5, s, r, &adv);
      ASSERT_TRUE(out.ok()) << out.status();
      ASSERT_EQ(out->decoded, seed % 5) << out->failure;
      size_t base = p->phase(0).slots.size();
      tags.insert(out->transcript.transmissions[base + l.payload_slots[0][0]].sent);
    }
  }
  EXPECT_EQ(tags, (std::set<uint64_t>{1, 2, 3}));
}

TEST(TwoWayRunTest, LargerStructuresDecodeUnderNoise) {
  Field f = *Field::Create(2147483647);
  std::vector<AdversaryStructure> corpus = {
      S(5, {{{1}, {1}}, {{2}, {2}}, {{3}, {3}}, {{4}, {4}}}),
      S(5, {{{1}, {1, 2}}, {{2}, {3}}, {{3}, {4}}, {{4}, {5}}, {{5}, {1}}}),
      *ThresholdStructure(4, 1),
  };
  for (const auto& a : corpus) {
    ASSERT_TRUE(FeasibleTwoWay(a).feasible);
    auto p = *TwoWayProtocol::Plan(a);
    for (size_t pair = 0; pair < a.size(); ++pair) {
      for (uint64_t seed = 0; seed < 30; ++seed) {
        Adversary adv(a, pair, NoiseStrategy(), seed);
        SeededTape s(seed), r(~seed);
        auto out = p->Run(f, 1000 + seed, s, r, &adv);
        ASSERT_TRUE(out.ok());
        EXPECT_EQ(out->decoded, 1000 + seed);
        EXPECT_EQ(out->transcript.phases(), 2);
      }
    }
  }
}

TEST(TwoWayNonCompletelyObliviousTest, PlansOnStrengthenedStructure) {
  auto a = S(4, {{{1}, {2}}}, ObliviousnessMode::kOblivious);
  auto p = *TwoWayProtocol::PlanNonCompletelyOblivious(a);
  EXPECT_EQ(p->planned().pair(0).listen, W(4, {1, 2}));
  EXPECT_EQ(p->structure(), a);
  Field f = *Field::Create(5);
  Adversary adv(a, 0, NoiseStrategy(), 1);
  SeededTape s(1), r(2);
  EXPECT_EQ(p->Run(f, 3, s, r, &adv)->decoded, 3u);
}

TEST(TwoWayNonCompletelyObliviousTest, DInsideLMatchesCompletelyObliviousPlan) {
  auto a = *ThresholdStructure(3, 1);
  auto nco = *TwoWayProtocol::PlanNonCompletelyOblivious(a);
  auto co = *TwoWayProtocol::Plan(a);
  EXPECT_EQ(nco->leaves()[0].w, co->leaves()[0].w);
  EXPECT_EQ(nco->leaves()[0].w4, co->leaves()[0].w4);
}

TEST(TwoWayNonCompletelyObliviousTest, RefusesCoveringStructure) {
  auto a = S(2, {{{1}, {2}}}, ObliviousnessMode::kOblivious);
  EXPECT_EQ(TwoWayProtocol::PlanNonCompletelyOblivious(a).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

}  // namespace
}  // namespace smt
