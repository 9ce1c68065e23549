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

#include "smt/transport.h"

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace smt {
namespace {

using ::smt::testing::S;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

PhaseLayout ThreeWireLayout() {
  PhaseLayout layout;
  for (int w = 0; w < 3; ++w) {
    int g = layout.AddGroup(GroupKind::kSingle);
    layout.AddSlot(w, SlotId{{}, "v" + std::to_string(w + 1)}, g);
  }
  return layout;
}

class TransportTest : public ::testing::Test {
 protected:
  Field f_ = *Field::Create(11);
  PhaseLayout layout_ = ThreeWireLayout();
  std::vector<uint64_t> sent_ = {4, 7, 9};
};

TEST_F(TransportTest, NoAdversaryDeliversVerbatim) {
  Transcript t;
  auto d = ExchangeRound(f_, 1, layout_, sent_, nullptr, t);
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(*d, sent_);
  EXPECT_EQ(t.transmissions.size(), 3u);
  EXPECT_FALSE(t.adversary_pair.has_value());
}

TEST_F(TransportTest, EmptyDisruptSetChangesNothing) {
  auto a = S(3, {{{}, {1, 2, 3}}});
  Adversary adv(a, 0, NoiseStrategy());
  Transcript t;
  EXPECT_EQ(*ExchangeRound(f_, 1, layout_, sent_, &adv, t), sent_);
}

TEST_F(TransportTest, ReplacementChangesOnlyDisruptedSlot) {
  auto a = S(3, {{{2}, {2}}});
  Adversary adv(a, 0, ScriptedStrategy({{{1, "/v2"}, 3}}));
  Transcript t;
  auto d = ExchangeRound(f_, 1, layout_, sent_, &adv, t);
  ASSERT_TRUE(d.ok());
  EXPECT_THAT(*d, ElementsAre(4, 3, 9));
}

TEST_F(TransportTest, CompletelyObliviousUnheardDisruptionLeavesEmptyView) {
  auto a = S(3, {{{2}, {}}});
  Adversary adv(a, 0, NoiseStrategy());
  Transcript t;
  ASSERT_TRUE(ExchangeRound(f_, 1, layout_, sent_, &adv, t).ok());
  EXPECT_TRUE(adv.view().observations().empty());
}

TEST_F(TransportTest, ObliviousAdversaryHearsOnlyReplacement) {
  auto a = S(3, {{{2}, {}}}, ObliviousnessMode::kOblivious);
  Adversary adv(a, 0, ScriptedStrategy({{{1, "/v2"}, 5}}));
  Transcript t;
  ASSERT_TRUE(ExchangeRound(f_, 1, layout_, sent_, &adv, t).ok());
  ASSERT_EQ(adv.view().observations().size(), 1u);
  const Observation& o = adv.view().observations()[0];
  EXPECT_FALSE(o.sent.has_value());
  EXPECT_EQ(o.delivered, 5u);
}

TEST_F(TransportTest, NonObliviousAdversaryHearsBoth) {
  auto a = S(3, {{{2}, {}}}, ObliviousnessMode::kNonOblivious);
  Adversary adv(a, 0, OffsetStrategy(1));
  Transcript t;
  // Offsets are lawful here: the original is heard anyway.
  ASSERT_TRUE(ExchangeRound(f_, 1, layout_, sent_, &adv, t).ok());
  ASSERT_EQ(adv.view().observations().size(), 1u);
  EXPECT_EQ(adv.view().observations()[0].sent, 7u);
  EXPECT_EQ(adv.view().observations()[0].delivered, 8u);
}

TEST_F(TransportTest, OffsetOnUnheardWireIsUnlawfulWhenReplacementsAreHeard) {
  auto a = S(3, {{{2}, {}}}, ObliviousnessMode::kOblivious);
  Adversary adv(a, 0, OffsetStrategy(1));
  Transcript t;
  EXPECT_FALSE(ExchangeRound(f_, 1, layout_, sent_, &adv, t).ok());
}

TEST_F(TransportTest, ListenedWiresRevealSentAndDelivered) {
  auto a = S(3, {{{1}, {1, 3}}});
  Adversary adv(a, 0, ListenedReplaceStrategy(0));
  Transcript t;
  auto d = ExchangeRound(f_, 1, layout_, sent_, &adv, t);
  ASSERT_TRUE(d.ok());
  EXPECT_THAT(*d, ElementsAre(0, 7, 9));
  ASSERT_EQ(adv.view().observations().size(), 2u);
  EXPECT_EQ(adv.view().observations()[0].sent, 4u);
  EXPECT_EQ(adv.view().observations()[0].delivered, 0u);
  EXPECT_EQ(adv.view().observations()[1].sent, 9u);
  EXPECT_EQ(*adv.view().Sent(1, "/v3"), 9u);
}

TEST_F(TransportTest, ReadingOutsideTheViewIsAFault) {
  auto a = S(3, {{{}, {1}}});
  Adversary adv(a, 0, PassiveStrategy());
  Transcript t;
  ASSERT_TRUE(ExchangeRound(f_, 1, layout_, sent_, &adv, t).ok());
  EXPECT_EQ(adv.view().Sent(1, "/v2").status().code(),
            absl::StatusCode::kPermissionDenied);
}

TEST_F(TransportTest, WritingOutsideDisruptSetIsAFault) {
  auto a = S(3, {{{1}, {}}});
  Adversary adv(a, 0, ScriptedStrategy({{{1, "/v2"}, 3}}));
  Transcript t;
  auto d = ExchangeRound(f_, 1, layout_, sent_, &adv, t);
  ASSERT_FALSE(d.ok());
  EXPECT_THAT(std::string(d.status().message()),
              HasSubstr("illegal disruption"));
}

// A strategy that picks a value on a wire it cannot hear.
class ChosenValue : public Strategy {
 public:
  Disruption Decide(const SlotContext&, const AdversaryView&) override {
    return {Disruption::Kind::kReplace, 1};
  }
  std::string name() const override { return "chosen"; }
};

TEST_F(TransportTest, ChosenValueOnUnheardWireIsUnlawfulWhenCompletelyOblivious) {
  auto a = S(3, {{{2}, {}}});
  Adversary adv(a, 0, std::make_unique<ChosenValue>());
  Transcript t;
  EXPECT_FALSE(ExchangeRound(f_, 1, layout_, sent_, &adv, t).ok());
  auto heard = S(3, {{{2}, {}}}, ObliviousnessMode::kOblivious);
  Adversary adv2(heard, 0, std::make_unique<ChosenValue>());
  Transcript t2;
  EXPECT_TRUE(ExchangeRound(f_, 1, layout_, sent_, &adv2, t2).ok());
}

TEST_F(TransportTest, ConservationUnderNoise) {
  auto a = S(3, {{{1, 3}, {}}});
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Adversary adv(a, 0, NoiseStrategy(), seed);
    Transcript t;
    auto d = ExchangeRound(f_, 1, layout_, sent_, &adv, t);
    ASSERT_TRUE(d.ok());
    ASSERT_EQ(d->size(), sent_.size());
    EXPECT_EQ((*d)[1], sent_[1]);
    for (const Transmission& tx : t.transmissions) {
      if (tx.wire == 1) EXPECT_EQ(tx.sent, tx.delivered);
    }
  }
}

TEST_F(TransportTest, SameSeedSameTranscript) {
  auto a = S(3, {{{1, 3}, {1}}}, ObliviousnessMode::kOblivious);
  std::string first;
  for (int rep = 0; rep < 2; ++rep) {
    Adversary adv(a, 0, NoiseStrategy(), 17);
    Transcript t;
    ASSERT_TRUE(ExchangeRound(f_, 1, layout_, sent_, &adv, t).ok());
    std::string dump = t.ToJson().dump();
    if (rep == 0) first = dump;
    EXPECT_EQ(dump, first);
  }
}

TEST_F(TransportTest, ViewIsAFunctionOfListenedTrafficAndMode) {
  // Replaying the same listened traffic reproduces the view, whatever is
  // sent on wires the adversary neither hears nor disrupts.
  auto a = S(3, {{{1}, {1, 3}}}, ObliviousnessMode::kOblivious);
  std::vector<Observation> first;
  for (uint64_t middle = 0; middle < 11; ++middle) {
    std::vector<uint64_t> sent = {4, middle, 9};
    Adversary adv(a, 0, ListenedReplaceStrategy(2));
    Transcript t;
    ASSERT_TRUE(ExchangeRound(f_, 1, layout_, sent, &adv, t).ok());
    if (middle == 0) first = adv.view().observations();
    EXPECT_EQ(adv.view().observations(), first);
  }
}

TEST_F(TransportTest, TranscriptJsonShape) {
  auto a = S(3, {{{2}, {2}}});
  Adversary adv(a, 0, ScriptedStrategy({{{1, "/v2"}, 3}}));
  Transcript t;
  ASSERT_TRUE(ExchangeRound(f_, 1, layout_, sent_, &adv, t).ok());
  auto j = t.ToJson();
  EXPECT_EQ(j["transmissions"][1].dump(),
            R"({"round":1,"dir":"S->R","wire":2,"slot":"/v2","sent":7,)"
            R"("delivered":3})");
  EXPECT_EQ(j["adversary"].dump(),
            R"({"pair_index":1,"mode":"completely_oblivious"})");
  EXPECT_EQ(j["view"][0].dump(),
            R"({"round":1,"dir":"S->R","wire":2,"slot":"/v2","sent":7,)"
            R"("delivered":3})");
}

TEST(MajorityTest, Examples) {
  std::array<uint64_t, 3> same = {9, 9, 9};
  EXPECT_EQ(*MajorityOf(same), 9u);
  std::array<uint64_t, 3> one_off = {9, 4, 9};
  EXPECT_EQ(*MajorityOf(one_off), 9u);
  std::array<uint64_t, 3> none = {1, 2, 3};
  EXPECT_FALSE(MajorityOf(none).ok());
}

TEST(PublicSendTest, SurvivesOneDisruptedCopy) {
  Field f = *Field::Create(11);
  auto a = S(4, {{{2}, {}}});
  Adversary adv(a, 0, NoiseStrategy(), 3);
  Transcript t;
  std::vector<uint64_t> values = {5, 6};
  auto got = PublicSend(f, 1, values, {0, 1, 2}, &adv, t);
  ASSERT_TRUE(got.ok());
  EXPECT_THAT(*got, ElementsAre(5, 6));
}

TEST(PublicSendTest, TwoDisruptedCopiesBreakThePrecondition) {
  Field f = *Field::Create(11);
  auto a = S(4, {{{1, 2}, {}}});
  Adversary adv(a, 0, OffsetStrategy(1), 3);
  Transcript t;
  std::vector<uint64_t> values = {5};
  // Copies 6, 6, 5: the adversary now owns the majority.
  auto got = PublicSend(f, 1, values, {0, 1, 2}, &adv, t);
  ASSERT_TRUE(got.ok());
  EXPECT_THAT(*got, ElementsAre(6));
  Adversary adv2(a, 0, ScriptedStrategy({{{1, "/pub1#1"}, 1},
                                         {{1, "/pub1#2"}, 2}}),
                 3);
  Transcript t2;
  EXPECT_FALSE(PublicSend(f, 1, values, {0, 1, 2}, &adv2, t2).ok());
}

}  // namespace
}  // namespace smt
