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

#ifndef SMT_STRUCTURE_JSON_H_
#define SMT_STRUCTURE_JSON_H_

#include <string_view>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "smt/adversary.h"

namespace smt {

// Structure document:
//   {"wires": n, "mode": "oblivious" | "completely_oblivious" |
//    "non_oblivious", "pairs": [{"disrupt": [..], "listen": [..]}, ..]}
// Wire numbers are 1-based. "mode" defaults to "oblivious".
//
// Errors name the offending field (e.g. "pairs[1].listen[0]") or the
// line and column of a syntax error.
absl::StatusOr<AdversaryStructure> ParseStructureJson(std::string_view text);
absl::StatusOr<AdversaryStructure> StructureFromJson(
    const nlohmann::json& doc);

nlohmann::ordered_json StructureToJson(const AdversaryStructure& structure);

}  // namespace smt

#endif  // SMT_STRUCTURE_JSON_H_
