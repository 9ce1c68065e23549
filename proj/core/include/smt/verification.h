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

#ifndef SMT_VERIFICATION_H_
#define SMT_VERIFICATION_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "smt/adversary.h"
#include "smt/field.h"
#include "smt/protocol.h"
#include "smt/transport.h"

namespace smt {

// ---- Reliability ----

struct ReliabilityOptions {
  // Largest number of executions an exhaustive sweep may take.
  uint64_t budget = 20'000'000;
  // Executions when the sweep cannot be exhaustive.
  uint64_t random_trials = 100'000;
  uint64_t seed = 1;
  // Messages to try; empty means every field element (p <= 16) or a fixed
  // handful otherwise.
  std::vector<uint64_t> messages;
};

struct ReliabilityFailure {
  uint64_t message;
  size_t pair;
  std::string assignment;
  std::string detail;
};

struct ReliabilityReport {
  uint64_t trials = 0;
  uint64_t failure_count = 0;
  std::vector<ReliabilityFailure> failures;  // first few only
  // Set only when every assignment of the chosen method was run.
  bool exhaustive = false;
  // "slots": every value on every disrupted slot.
  // "groups": every effect on what the recipient aggregates (sums of
  //   additive groups, majorities of public groups).
  // "random": seeded random disruptions.
  std::string method;

  bool ok() const { return failure_count == 0; }
};

// Every message x adversary pair x disruption assignment, exhaustively when
// the budget allows.
ReliabilityReport VerifyReliability(const Protocol& protocol,
                                    const Field& field,
                                    const ReliabilityOptions& options = {});

nlohmann::ordered_json ReliabilityToJson(const ReliabilityReport& report);

// ---- Privacy ----

// What a battery strategy does to a disrupted slot.
enum class SlotRule { kKeep, kNoise, kAddOne, kZero };

struct BatteryEntry {
  std::string name;
  SlotRule listened;  // disrupted slots the adversary hears
  SlotRule unheard;   // disrupted slots it does not
};

std::unique_ptr<Strategy> BatteryStrategy(const BatteryEntry& entry);

// Entries lawful for `mode`. The deterministic subset suits full tape
// enumeration; noise needs an engine that enumerates it.
std::vector<BatteryEntry> DefaultBattery(ObliviousnessMode mode,
                                         bool include_noise);

struct PrivacyOptions {
  // Largest number of executions a full tape enumeration may take.
  uint64_t budget = 20'000'000;
  std::vector<BatteryEntry> battery;  // empty: the default battery
  std::vector<uint64_t> messages;     // empty: every field element
  // Only check these pairs (0-based); empty means all.
  std::vector<size_t> pairs;
  // Adversary mode; defaults to the protocol structure's. Lets a plan made
  // for one mode be checked against a stronger adversary.
  std::optional<ObliviousnessMode> mode;
  // Receiver draws fixed by index in draw order; the rest are enumerated.
  std::map<size_t, uint64_t> receiver_pins;
};

struct PrivacyVerdict {
  size_t pair = 0;
  std::string strategy;
  bool equal = true;
  // First pair of messages whose view distributions differ.
  std::optional<std::pair<uint64_t, uint64_t>> differing;
  uint64_t distinct_views = 0;
  std::string engine;  // "tape-enumeration" or "factored"
};

struct PrivacyReport {
  bool refused = false;
  std::string refusal;
  std::vector<PrivacyVerdict> verdicts;
  uint64_t executions = 0;

  bool ok() const;  // not refused and every verdict equal
  // First differing verdict, if any.
  const PrivacyVerdict* first_violation() const;
};

// Exact view-distribution comparison across messages. Uses the factored
// engine for single-leaf two-way protocols and full tape enumeration for
// everything else; refuses rather than samples when neither fits.
PrivacyReport VerifyPrivacy(const Protocol& protocol, const Field& field,
                            const PrivacyOptions& options = {});

// Full tape enumeration only. Noise rules are rejected.
PrivacyReport VerifyPrivacyByEnumeration(const Protocol& protocol,
                                         const Field& field,
                                         const PrivacyOptions& options);

nlohmann::ordered_json PrivacyToJson(const PrivacyReport& report);

// Number of draws each party makes per execution.
struct TapeShape {
  size_t sender = 0;
  size_t receiver = 0;
};
absl::StatusOr<TapeShape> MeasureTapes(const Protocol& protocol,
                                       const Field& field);

// ---- Feasibility cross-validation ----

struct CrossCheckEntry {
  std::string family;  // "threshold", "dl" or "general"
  std::string name;    // e.g. "threshold n=4 k=1"
  std::string setting;
  bool structural = false;
  bool closed_form = false;
  bool agree() const { return structural == closed_form; }
};

struct CrossCheckReport {
  std::vector<CrossCheckEntry> entries;
  size_t disagreements = 0;
  bool ok() const { return disagreements == 0; }
};

struct CrossCheckCorpus {
  int threshold_max_n = 6;
  int dl_max_n = 5;
  // General structures, given by their sets (D = L).
  std::vector<std::pair<int, std::vector<WireSet>>> general;
};

// The set-system example from the literature plus its sub-families.
CrossCheckCorpus DefaultCrossCheckCorpus();

CrossCheckReport CrossValidateFeasibility(const CrossCheckCorpus& corpus);

nlohmann::ordered_json CrossCheckToJson(const CrossCheckReport& report);

}  // namespace smt

#endif  // SMT_VERIFICATION_H_
