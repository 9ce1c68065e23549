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

#ifndef SMT_TRANSPORT_H_
#define SMT_TRANSPORT_H_

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "smt/adversary.h"
#include "smt/field.h"
#include "smt/rng.h"

namespace smt {

enum class Direction { kSenderToReceiver, kReceiverToSender };
std::string_view DirectionName(Direction d);  // "S->R" / "R->S"

// Names one field element in flight within a phase: the sub-protocol that
// produced it and a short tag such as "s2.3" (sharing 2, share 3).
struct SlotId {
  ProtocolPath path;
  std::string tag;

  std::string ToString() const;  // "<path>/<tag>"
  friend bool operator==(const SlotId&, const SlotId&) = default;
};

// How the recipient combines the slots of one group.
enum class GroupKind {
  kSingle,    // used on its own
  kAdditive,  // summed (additive sharing)
  kPublic,    // identical copies, majority vote
};

struct SlotSpec {
  int wire;  // 0-based
  SlotId id;
  int group;
};

// The fixed shape of one half-duplex phase: which wire every slot travels
// on. Protocol plans build these once; executions only carry values.
struct PhaseLayout {
  Direction direction = Direction::kSenderToReceiver;
  std::vector<SlotSpec> slots;
  std::vector<GroupKind> groups;
  std::vector<std::vector<size_t>> group_slots;

  int AddGroup(GroupKind kind);
  size_t AddSlot(int wire, SlotId id, int group);
  // Appends `copies` slots on `wires` as one public group; returns the group.
  int AddPublic(std::span<const int> wires, const ProtocolPath& path,
                const std::string& tag);
};

// Majority of the copies; fails when no value has a strict majority.
absl::StatusOr<uint64_t> MajorityOf(std::span<const uint64_t> copies);

struct Disruption {
  enum class Kind {
    kKeep,
    kReplace,  // chosen value
    kAdd,      // sent + value; the adversary need not know the result
    kNoise,    // fresh uniform value
    kNoiseAs,  // noise that happens to equal value
  };
  Kind kind = Kind::kKeep;
  uint64_t value = 0;
};

// One lawful observation. `sent` is present for listened wires (and for
// every disrupted wire of a non-oblivious adversary); `delivered` for
// listened wires and, unless the adversary is completely oblivious, for
// disrupted slots it overwrote.
struct Observation {
  int round;
  Direction direction;
  int wire;
  std::string slot;
  std::optional<uint64_t> sent;
  std::optional<uint64_t> delivered;

  friend bool operator==(const Observation&, const Observation&) = default;
};

class AdversaryView {
 public:
  const std::vector<Observation>& observations() const { return obs_; }
  size_t Add(Observation o);
  void SetDelivered(size_t index, uint64_t value);
  // Value of a lawful observation; PermissionDenied for anything the
  // adversary could not have seen.
  absl::StatusOr<uint64_t> Sent(int round, const std::string& slot) const;

 private:
  std::vector<Observation> obs_;
  std::map<std::pair<int, std::string>, size_t> index_;
};

struct SlotContext {
  int round;
  const PhaseLayout& layout;
  size_t slot;
  bool listened;  // the adversary hears the sent value
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  // Asked once per slot on a disrupted wire, after the adversary has heard
  // the phase's listened slots.
  virtual Disruption Decide(const SlotContext& ctx,
                            const AdversaryView& view) = 0;
  virtual std::string name() const = 0;
  // Rejects planned writes to slots outside `disrupt` before the phase runs.
  virtual absl::Status CheckTargets(int /*round*/,
                                    const PhaseLayout& /*layout*/,
                                    const WireSet& /*disrupt*/) const {
    return absl::OkStatus();
  }
};

// An adversary committed to one pair of the structure for the whole
// execution.
class Adversary {
 public:
  Adversary(const AdversaryStructure& structure, size_t pair_index,
            std::unique_ptr<Strategy> strategy, uint64_t noise_seed = 0);

  size_t pair_index() const { return pair_index_; }
  const AdversaryPair& pair() const { return pair_; }
  ObliviousnessMode mode() const { return mode_; }
  const AdversaryView& view() const { return view_; }
  Strategy& strategy() { return *strategy_; }

  // Observes the phase and returns delivered values. Fails on unlawful
  // behaviour: a chosen value on a wire a completely oblivious adversary
  // does not listen to.
  absl::StatusOr<std::vector<uint64_t>> Intercept(
      const Field& field, int round, const PhaseLayout& layout,
      std::span<const uint64_t> sent);

 private:
  size_t pair_index_;
  AdversaryPair pair_;
  ObliviousnessMode mode_;
  std::unique_ptr<Strategy> strategy_;
  SplitMix64 noise_;
  AdversaryView view_;
};

struct Transmission {
  int round;
  Direction direction;
  int wire;
  SlotId slot;
  uint64_t sent;
  uint64_t delivered;
};

struct Transcript {
  std::vector<Transmission> transmissions;
  std::optional<size_t> adversary_pair;
  ObliviousnessMode mode = ObliviousnessMode::kOblivious;
  std::vector<Observation> view;

  int phases() const;
  // Delivered values of every phase addressed to the receiver, in order;
  // the receiver-side input stream.
  std::vector<uint64_t> ReceiverInputs() const;
  nlohmann::ordered_json ToJson() const;
  nlohmann::ordered_json ReceiverInputsJson() const;
};

// Runs one phase: values on wires outside D arrive verbatim, the adversary
// (if any) rewrites slots on D, and the transcript records everything.
absl::StatusOr<std::vector<uint64_t>> ExchangeRound(
    const Field& field, int round, const PhaseLayout& layout,
    std::span<const uint64_t> sent, Adversary* adversary,
    Transcript& transcript);

// Sends each value as three public copies on `wires` in a single phase and
// majority-decodes them.
absl::StatusOr<std::vector<uint64_t>> PublicSend(
    const Field& field, int round, std::span<const uint64_t> values,
    const std::array<int, 3>& wires, Adversary* adversary,
    Transcript& transcript);

// Stock strategies.
std::unique_ptr<Strategy> PassiveStrategy();
std::unique_ptr<Strategy> NoiseStrategy();
// Adds `delta` to every disrupted slot.
std::unique_ptr<Strategy> OffsetStrategy(uint64_t delta);
// Replaces listened disrupted slots with `value` and leaves the rest alone.
std::unique_ptr<Strategy> ListenedReplaceStrategy(uint64_t value);
// Exact per-slot values keyed by (round, slot id string). Scripted values
// model noise that happens to take these values, so they are lawful on
// unheard wires. Unlisted disrupted slots get noise unless `keep_unlisted`.
using Script = std::map<std::pair<int, std::string>, uint64_t>;
std::unique_ptr<Strategy> ScriptedStrategy(Script script,
                                           bool keep_unlisted = false);

}  // namespace smt

#endif  // SMT_TRANSPORT_H_
