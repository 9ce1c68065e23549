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
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace smt {
namespace {

std::pair<int, int> LineColumn(std::string_view text, size_t byte) {
  int line = 1;
  int col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

absl::StatusOr<WireSet> ParseWireList(const nlohmann::json& node, int n,
                                      const std::string& where) {
  if (!node.is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, ": expected an array of wire numbers"));
  }
  std::vector<int> wires;
  for (size_t i = 0; i < node.size(); ++i) {
    const nlohmann::json& w = node[i];
    if (!w.is_number_integer()) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, "[", i, "]: expected an integer"));
    }
    int64_t v = w.get<int64_t>();
    if (v < 1 || v > n) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, "[", i, "]: wire ", v, " outside 1..", n));
    }
    wires.push_back(static_cast<int>(v));
  }
  return WireSet::FromOneBased(n, wires);
}

}  // namespace

absl::StatusOr<AdversaryStructure> StructureFromJson(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    return absl::InvalidArgumentError("structure: expected a JSON object");
  }
  auto wires_it = doc.find("wires");
  if (wires_it == doc.end() || !wires_it->is_number_integer()) {
    return absl::InvalidArgumentError("wires: required integer field");
  }
  int64_t n = wires_it->get<int64_t>();
  if (n < 1 || n > kMaxWires) {
    return absl::InvalidArgumentError(
        absl::StrCat("wires: ", n, " outside [1, ", kMaxWires, "]"));
  }
  ObliviousnessMode mode = ObliviousnessMode::kOblivious;
  if (auto it = doc.find("mode"); it != doc.end()) {
    if (!it->is_string()) {
      return absl::InvalidArgumentError("mode: expected a string");
    }
    auto parsed = ParseMode(it->get<std::string>());
    if (!parsed.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("mode: ", parsed.status().message()));
    }
    mode = *parsed;
  }
  auto pairs_it = doc.find("pairs");
  if (pairs_it == doc.end() || !pairs_it->is_array()) {
    return absl::InvalidArgumentError("pairs: required array field");
  }
  std::vector<AdversaryPair> pairs;
  for (size_t i = 0; i < pairs_it->size(); ++i) {
    const nlohmann::json& p = (*pairs_it)[i];
    const std::string where = absl::StrCat("pairs[", i, "]");
    if (!p.is_object()) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ": expected an object"));
    }
    static const nlohmann::json kEmpty = nlohmann::json::array();
    auto d_it = p.find("disrupt");
    auto l_it = p.find("listen");
    auto d = ParseWireList(d_it == p.end() ? kEmpty : *d_it,
                           static_cast<int>(n), where + ".disrupt");
    if (!d.ok()) return d.status();
    auto l = ParseWireList(l_it == p.end() ? kEmpty : *l_it,
                           static_cast<int>(n), where + ".listen");
    if (!l.ok()) return l.status();
    pairs.push_back({*d, *l});
  }
  return AdversaryStructure::Create(static_cast<int>(n), std::move(pairs),
                                    mode);
}

absl::StatusOr<AdversaryStructure> ParseStructureJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = LineColumn(text, e.byte == 0 ? 0 : e.byte - 1);
    return absl::InvalidArgumentError(
        absl::StrCat("line ", line, ", column ", col, ": malformed JSON"));
  }
  return StructureFromJson(doc);
}

nlohmann::ordered_json StructureToJson(const AdversaryStructure& structure) {
  nlohmann::ordered_json doc;
  doc["wires"] = structure.n();
  doc["mode"] = std::string(ModeName(structure.mode()));
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const AdversaryPair& p : structure.pairs()) {
    nlohmann::ordered_json entry;
    entry["disrupt"] = p.disrupt.OneBased();
    entry["listen"] = p.listen.OneBased();
    pairs.push_back(std::move(entry));
  }
  doc["pairs"] = std::move(pairs);
  return doc;
}

}  // namespace smt
