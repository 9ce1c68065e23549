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

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace smt {
namespace {

bool Full(uint32_t mask, int n) { return mask == WireSet::All(n).mask(); }

}  // namespace

std::string_view SettingName(Setting setting) {
  switch (setting) {
    case Setting::kOneWay:
      return "oneway";
    case Setting::kTwoWay:
      return "twoway";
    case Setting::kTwoRoundNonCompletelyOblivious:
      return "tworound_nco";
  }
  return "unknown";
}

absl::StatusOr<Setting> ParseSetting(std::string_view name) {
  for (Setting s : {Setting::kOneWay, Setting::kTwoWay,
                    Setting::kTwoRoundNonCompletelyOblivious}) {
    if (SettingName(s) == name) return s;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown setting \"", std::string(name),
                   "\" (expected oneway, twoway or tworound_nco)"));
}

FeasibilityReport FeasibleOneWay(const AdversaryStructure& a) {
  FeasibilityReport report{Setting::kOneWay, true, std::nullopt};
  const auto& p = a.pairs();
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = i; j < p.size(); ++j) {
      const uint32_t dd = p[i].disrupt.mask() | p[j].disrupt.mask();
      for (size_t k = 0; k < p.size(); ++k) {
        if (Full(dd | p[k].listen.mask(), a.n())) {
          report.feasible = false;
          report.witness = CoverWitness{
              "D_i+D_j+L_k", {i, j, k}, {p[i].disrupt, p[j].disrupt, p[k].listen}};
          return report;
        }
      }
    }
  }
  return report;
}

FeasibilityReport FeasibleTwoWay(const AdversaryStructure& a) {
  FeasibilityReport report{Setting::kTwoWay, true, std::nullopt};
  const auto& p = a.pairs();
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = i; j < p.size(); ++j) {
      if (Full(p[i].disrupt.mask() | p[j].disrupt.mask(), a.n())) {
        report.feasible = false;
        report.witness =
            CoverWitness{"D_i+D_j", {i, j}, {p[i].disrupt, p[j].disrupt}};
        return report;
      }
    }
  }
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = 0; j < p.size(); ++j) {
      if (Full(p[i].disrupt.mask() | p[j].listen.mask(), a.n())) {
        report.feasible = false;
        report.witness =
            CoverWitness{"D_i+L_j", {i, j}, {p[i].disrupt, p[j].listen}};
        return report;
      }
    }
  }
  return report;
}

FeasibilityReport FeasibleTwoRoundNonCompletelyOblivious(
    const AdversaryStructure& a) {
  FeasibilityReport report{Setting::kTwoRoundNonCompletelyOblivious, true,
                           std::nullopt};
  const auto& p = a.pairs();
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = 0; j < p.size(); ++j) {
      const uint32_t u =
          p[i].disrupt.mask() | p[j].disrupt.mask() | p[j].listen.mask();
      if (Full(u, a.n())) {
        report.feasible = false;
        report.witness = CoverWitness{
            "D_i+D_j+L_j", {i, j}, {p[i].disrupt, p[j].disrupt, p[j].listen}};
        return report;
      }
    }
  }
  return report;
}

FeasibilityReport CheckFeasibility(const AdversaryStructure& a,
                                   Setting setting) {
  switch (setting) {
    case Setting::kOneWay:
      return FeasibleOneWay(a);
    case Setting::kTwoWay:
      return FeasibleTwoWay(a);
    case Setting::kTwoRoundNonCompletelyOblivious:
      return FeasibleTwoRoundNonCompletelyOblivious(a);
  }
  return FeasibleOneWay(a);
}

bool WitnessCovers(const AdversaryStructure& a, const CoverWitness& w) {
  const auto& p = a.pairs();
  for (size_t idx : w.pairs) {
    if (idx >= p.size()) return false;
  }
  std::vector<WireSet> sets;
  const auto& i = w.pairs;
  if (w.clause == "D_i+D_j+L_k" && i.size() == 3) {
    sets = {p[i[0]].disrupt, p[i[1]].disrupt, p[i[2]].listen};
  } else if (w.clause == "D_i+D_j" && i.size() == 2) {
    sets = {p[i[0]].disrupt, p[i[1]].disrupt};
  } else if (w.clause == "D_i+L_j" && i.size() == 2) {
    sets = {p[i[0]].disrupt, p[i[1]].listen};
  } else if (w.clause == "D_i+D_j+L_j" && i.size() == 2) {
    sets = {p[i[0]].disrupt, p[i[1]].disrupt, p[i[1]].listen};
  } else {
    return false;
  }
  return Covers(sets, a.n());
}

bool FeasibleClassic(ClassicCondition condition, int n, int a, int b) {
  switch (condition) {
    case ClassicCondition::kThresholdOneWay:
      return n > 3 * a;
    case ClassicCondition::kThresholdTwoWay:
      return n > 2 * a;
    case ClassicCondition::kDlOneWay:
      return n > 2 * a + b;
    case ClassicCondition::kDlTwoWay:
      return n > a + std::max(a, b);
  }
  return false;
}

std::string DescribeWitness(const CoverWitness& w) {
  std::string pairs;
  for (size_t i = 0; i < w.pairs.size(); ++i) {
    absl::StrAppend(&pairs, i == 0 ? "" : ",", w.pairs[i] + 1);
  }
  return absl::StrCat(w.clause, " with pairs (", pairs, ") covers all wires");
}

absl::Status RefuseIfInfeasible(const FeasibilityReport& report) {
  if (report.feasible) return absl::OkStatus();
  return absl::FailedPreconditionError(
      absl::StrCat("infeasible for ", std::string(SettingName(report.setting)),
                   ": ", DescribeWitness(*report.witness)));
}

nlohmann::ordered_json ReportToJson(const FeasibilityReport& report) {
  nlohmann::ordered_json doc;
  doc["setting"] = std::string(SettingName(report.setting));
  doc["feasible"] = report.feasible;
  if (report.witness) {
    nlohmann::ordered_json w;
    w["clause"] = report.witness->clause;
    std::vector<size_t> one_based;
    for (size_t i : report.witness->pairs) one_based.push_back(i + 1);
    w["pairs"] = one_based;
    nlohmann::ordered_json sets = nlohmann::ordered_json::array();
    for (const WireSet& s : report.witness->sets) sets.push_back(s.OneBased());
    w["sets"] = std::move(sets);
    doc["witness"] = std::move(w);
  } else {
    doc["witness"] = nullptr;
  }
  return doc;
}

}  // namespace smt
