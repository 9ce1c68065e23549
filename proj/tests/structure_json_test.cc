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

#include "smt/structure_json.h"

#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace smt {
namespace {

using ::smt::testing::W;
using ::testing::HasSubstr;

TEST(StructureJsonTest, ParsesDocument) {
  auto a = ParseStructureJson(R"({
    "wires": 5,
    "mode": "completely_oblivious",
    "pairs": [{"disrupt": [1, 2], "listen": [1, 4]}, {"disrupt": [5]}]
  })");
  ASSERT_TRUE(a.ok()) << a.status();
  EXPECT_EQ(a->n(), 5);
  EXPECT_EQ(a->mode(), ObliviousnessMode::kCompletelyOblivious);
  ASSERT_EQ(a->size(), 2u);
  EXPECT_EQ(a->pair(0).disrupt, W(5, {1, 2}));
  EXPECT_EQ(a->pair(0).listen, W(5, {1, 4}));
  EXPECT_TRUE(a->pair(1).listen.empty());
}

TEST(StructureJsonTest, ModeDefaultsToOblivious) {
  auto a = ParseStructureJson(R"({"wires": 2, "pairs": []})");
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(a->mode(), ObliviousnessMode::kOblivious);
}

TEST(StructureJsonTest, SyntaxErrorReportsPosition) {
  auto a = ParseStructureJson("{\"wires\": 3,\n \"pairs\": [}");
  ASSERT_FALSE(a.ok());
  EXPECT_THAT(std::string(a.status().message()), HasSubstr("line 2"));
}

TEST(StructureJsonTest, FieldErrorsNameTheField) {
  auto a = ParseStructureJson(
      R"({"wires": 5, "pairs": [{"disrupt": [1]}, {"listen": [7]}]})");
  ASSERT_FALSE(a.ok());
  EXPECT_THAT(std::string(a.status().message()),
              HasSubstr("pairs[1].listen[0]"));
  EXPECT_FALSE(ParseStructureJson(R"({"pairs": []})").ok());
  EXPECT_FALSE(ParseStructureJson(R"({"wires": 3, "mode": "x", "pairs": []})")
                   .ok());
  EXPECT_FALSE(ParseStructureJson(R"({"wires": "3", "pairs": []})").ok());
  EXPECT_FALSE(ParseStructureJson(R"([1, 2])").ok());
}

TEST(StructureJsonTest, RoundTrips) {
  auto a = *DlStructure(4, 2, 1);
  auto b = ParseStructureJson(StructureToJson(a).dump());
  ASSERT_TRUE(b.ok());
  EXPECT_EQ(*b, a);
}

TEST(StructureJsonTest, OutputFieldOrderIsStable) {
  auto a = *ThresholdStructure(2, 1);
  EXPECT_EQ(StructureToJson(a).dump(),
            R"({"wires":2,"mode":"oblivious","pairs":[{"disrupt":[1],)"
            R"("listen":[1]},{"disrupt":[2],"listen":[2]}]})");
}

}  // namespace
}  // namespace smt
