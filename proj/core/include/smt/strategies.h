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

#ifndef SMT_STRATEGIES_H_
#define SMT_STRATEGIES_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "smt/adversary.h"
#include "smt/feasibility.h"
#include "smt/field.h"
#include "smt/protocol.h"
#include "smt/transport.h"

namespace smt {

// Stock behaviours by name: "passive", "noise", "offset" (+1 on every
// disrupted slot) and "replace_heard" (0 on listened disrupted slots).
absl::StatusOr<std::unique_ptr<Strategy>> StrategyByName(
    std::string_view name);
std::vector<std::string> StrategyNames();

// A deterministic function of the adversary's lawful view. `decide` sees
// only what AdversaryView exposes.
std::unique_ptr<Strategy> ViewFunctionStrategy(
    std::string name,
    std::function<Disruption(const SlotContext&, const AdversaryView&)>
        decide);

enum class AttackKind {
  kOneWayAmbiguity,   // D_i + D_j + L_k covers, one-way
  kTwoWaySwap,        // D_i + D_j covers
  kTwoWayReplay,      // D_i + L_j covers
  kTwoRoundNonCompletelyOblivious,  // D_i + D_j + L_j covers
  // The protocol already leaks to a passive listener on the covering L
  // set, so no tape matches what that listener sees.
  kEavesdrop,
};
std::string_view AttackName(AttackKind kind);

// One execution of a witness: both tapes and the adversary's writes.
struct ScriptedExecution {
  uint64_t message = 0;
  size_t pair = 0;  // 0-based
  std::vector<uint64_t> sender_tape;
  std::vector<uint64_t> receiver_tape;
  Script script;
};

struct AttackWitness {
  AttackKind kind = AttackKind::kOneWayAmbiguity;
  std::vector<size_t> pairs;  // the covering pairs, 0-based, attack order
  std::array<ScriptedExecution, 2> executions;
  int round_cap = 0;
  uint64_t search_nodes = 0;
  bool randomized_search = false;
};

struct AttackOptions {
  // Receiver inputs are compared over rounds 1..round_cap.
  int round_cap = 2;
  // Tape search nodes before giving up with ResourceExhausted.
  uint64_t node_budget = 2'000'000;
};

// Each attack fails with FailedPrecondition when the named sets do not
// cover the wires and with ResourceExhausted when the tape search runs out
// of budget. Equal messages give the trivial witness: two identical
// undisturbed executions.
absl::StatusOr<AttackWitness> AttackOneWayAmbiguity(
    const Protocol& protocol, const Field& field, size_t i, size_t j,
    size_t k, uint64_t m1, uint64_t m2, const AttackOptions& options = {});

absl::StatusOr<AttackWitness> AttackTwoWaySwap(
    const Protocol& protocol, const Field& field, size_t i, size_t j,
    uint64_t m1, uint64_t m2, const AttackOptions& options = {});

// The first execution is the attack: S sends m, R ends up with the inputs
// of an undisturbed run of m2 (the second execution).
absl::StatusOr<AttackWitness> AttackTwoWayReplay(
    const Protocol& protocol, const Field& field, size_t i, size_t j,
    uint64_t m, uint64_t m2, const AttackOptions& options = {});

// Needs an adversary that hears its own replacements, and a protocol with
// one receiver-to-sender phase followed by one sender-to-receiver phase.
absl::StatusOr<AttackWitness> AttackTwoRoundNonCompletelyOblivious(
    const Protocol& protocol, const Field& field, size_t i, size_t j,
    uint64_t m, uint64_t m2, const AttackOptions& options = {});

// Plans our protocol for `setting` forced onto `structure` and runs the
// attack its cover witness calls for.
struct AttackResult {
  std::unique_ptr<Protocol> protocol;
  AttackWitness witness;
  // pair_map[i]: index in the input structure of the protocol's pair i.
  // Structures over the planning cap are cut down to the covering pairs.
  std::vector<size_t> pair_map;
};
absl::StatusOr<AttackResult> AttackStructure(
    const AdversaryStructure& structure, Setting setting, const Field& field,
    uint64_t m1, uint64_t m2, const AttackOptions& options = {});

// Re-simulates both executions against the protocol; nothing in the
// witness is trusted.
struct WitnessCheck {
  bool receiver_inputs_identical = false;
  bool messages_differ = false;
  // Eavesdrop witnesses: the listener's view distributions differ,
  // re-derived by the privacy checker.
  bool views_differ = false;
  std::array<ExecutionOutcome, 2> outcomes;
  bool ok() const {
    return messages_differ && (receiver_inputs_identical || views_differ);
  }
};
absl::StatusOr<WitnessCheck> VerifyWitness(const Protocol& protocol,
                                           const Field& field,
                                           const AttackWitness& witness);

nlohmann::ordered_json WitnessToJson(const AttackWitness& witness,
                                     const WitnessCheck& check);

// A vector of `count` draws in [0, p) whose outputs equal `target`.
// Dependencies of each output on the draws are found by probing, and each
// output is checked as soon as its last dependency is fixed. The first
// 20000 nodes go to a lexicographic search; the rest to seeded restarts.
// Exposed for tests.
struct DrawSearchResult {
  std::optional<std::vector<uint64_t>> draws;
  uint64_t nodes = 0;
  // The lexicographic pass covered every tape the probed dependencies
  // allow: no match exists.
  bool exhausted = false;
  // Found by the seeded restart pass rather than the lexicographic one.
  bool randomized = false;
};
DrawSearchResult SearchDraws(
    size_t count, uint64_t p,
    const std::function<std::vector<uint64_t>(const std::vector<uint64_t>&)>&
        outputs,
    const std::vector<uint64_t>& target, uint64_t node_budget);

}  // namespace smt

#endif  // SMT_STRATEGIES_H_
