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

#ifndef SMT_FEASIBILITY_H_
#define SMT_FEASIBILITY_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "smt/adversary.h"

namespace smt {

enum class Setting {
  kOneWay,
  // Two-way wires, completely oblivious adversary, any number of rounds.
  kTwoWay,
  // Two-way wires, oblivious but not completely oblivious, two rounds.
  kTwoRoundNonCompletelyOblivious,
};

std::string_view SettingName(Setting setting);  // oneway|twoway|tworound_nco
absl::StatusOr<Setting> ParseSetting(std::string_view name);

// Pair indices (0-based) whose selected sets cover every wire.
struct CoverWitness {
  // "D_i+D_j+L_k", "D_i+D_j", "D_i+L_j" or "D_i+D_j+L_j".
  std::string clause;
  std::vector<size_t> pairs;
  std::vector<WireSet> sets;
};

struct FeasibilityReport {
  Setting setting = Setting::kOneWay;
  bool feasible = true;
  // Present iff !feasible.
  std::optional<CoverWitness> witness;
};

// No D_i u D_j u L_k covers the wires (i <= j; k may equal either).
// Witness: lexicographically smallest (i, j, k).
FeasibilityReport FeasibleOneWay(const AdversaryStructure& a);

// No D_i u D_j and no D_i u L_j covers the wires (i = j allowed). The D u D
// clause is searched first.
FeasibilityReport FeasibleTwoWay(const AdversaryStructure& a);

// No D_i u D_j u L_j covers the wires; L is tied to the second D.
FeasibilityReport FeasibleTwoRoundNonCompletelyOblivious(
    const AdversaryStructure& a);

FeasibilityReport CheckFeasibility(const AdversaryStructure& a,
                                   Setting setting);

// Re-derives the union from the structure; does not trust witness.sets.
bool WitnessCovers(const AdversaryStructure& a, const CoverWitness& w);

enum class ClassicCondition {
  kThresholdOneWay,  // n > 3k
  kThresholdTwoWay,  // n > 2k
  kDlOneWay,         // n > 2d + l
  kDlTwoWay,         // n > d + max(d, l)
};

// `a` is k for threshold conditions, d for dl ones; `b` is l.
bool FeasibleClassic(ClassicCondition condition, int n, int a, int b = 0);

// "D_i+D_j+L_k with i=1, j=2, k=3 covers all wires" style summary.
std::string DescribeWitness(const CoverWitness& w);

// FailedPrecondition naming the witness when the report is infeasible.
absl::Status RefuseIfInfeasible(const FeasibilityReport& report);

nlohmann::ordered_json ReportToJson(const FeasibilityReport& report);

}  // namespace smt

#endif  // SMT_FEASIBILITY_H_
