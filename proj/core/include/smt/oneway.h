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

#ifndef SMT_ONEWAY_H_
#define SMT_ONEWAY_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "smt/adversary.h"
#include "smt/field.h"
#include "smt/protocol.h"
#include "smt/rng.h"
#include "smt/transport.h"

namespace smt {

// wires[k][t]: wire of share t in sharing k. Sharing k avoids the D's of
// the two other pairs; share t avoids L_t.
struct OneWayBaseCase {
  std::array<std::array<int, 3>, 3> wires;
  std::array<std::array<size_t, 3>, 3> slots;  // indices into the layout
};

struct OneWayNode {
  ProtocolPath path;
  AdversaryStructure structure;          // as planned at this node
  std::optional<OneWayBaseCase> base;    // set for leaves
  std::vector<OneWayNode> children;      // 4 for inductive nodes
};

struct OneWayOptions {
  // Plan even when the structure is infeasible, taking the best wire
  // available. Used to run attacks against our own protocol.
  bool force = false;
  size_t max_pairs = 7;  // 4^(|A|-3) leaves
  // Negative control: move one share of every leaf onto a wire its
  // sharing must avoid.
  bool inject_fault = false;
};

class OneWayProtocol : public Protocol {
 public:
  static absl::StatusOr<std::unique_ptr<OneWayProtocol>> Plan(
      const AdversaryStructure& structure, OneWayOptions options = {});

  const AdversaryStructure& structure() const override { return structure_; }
  int phase_count() const override { return 1; }
  const PhaseLayout& phase(int) const override { return layout_; }
  std::string name() const override { return "oneway"; }
  uint64_t min_modulus() const override;

  const OneWayNode& root() const { return root_; }
  const PhaseLayout& layout() const { return layout_; }
  size_t leaf_count() const;

  // Values for every layout slot.
  std::vector<uint64_t> Send(const Field& field, uint64_t m,
                             RandomTape& tape) const;
  // Fails with DataLoss when no majority or no consistent line exists.
  absl::StatusOr<uint64_t> Receive(const Field& field,
                                   std::span<const uint64_t> delivered) const;

  absl::StatusOr<ExecutionOutcome> Execute(
      const Field& field, uint64_t m, RandomTape& sender_tape,
      RandomTape& receiver_tape, PhaseChannel& channel) const override;

 private:
  OneWayProtocol() = default;

  AdversaryStructure structure_;
  OneWayNode root_;
  PhaseLayout layout_;
};

// Degree-1, one-error decode of v_j = m + j r over j = 1..4; returns m.
absl::StatusOr<uint64_t> DecodeFourCandidates(
    const Field& field, std::span<const uint64_t> candidates);

// The classic k-threshold protocol: a random degree-k polynomial with
// p(0) = m, p(i) on wire i for i = 1..3k+1, decoded with up to k errors.
class ThresholdProtocol : public Protocol {
 public:
  static absl::StatusOr<std::unique_ptr<ThresholdProtocol>> Create(int n,
                                                                   int k);

  const AdversaryStructure& structure() const override { return structure_; }
  int phase_count() const override { return 1; }
  const PhaseLayout& phase(int) const override { return layout_; }
  std::string name() const override { return "threshold"; }
  uint64_t min_modulus() const override { return 3 * k_ + 2; }

  absl::StatusOr<ExecutionOutcome> Execute(
      const Field& field, uint64_t m, RandomTape& sender_tape,
      RandomTape& receiver_tape, PhaseChannel& channel) const override;

 private:
  ThresholdProtocol() = default;
  int k_ = 0;
  AdversaryStructure structure_;
  PhaseLayout layout_;
};

// m split additively over all n wires; R sums. Private against any
// adversary that misses a wire, reliable against none.
class AdditiveProtocol : public Protocol {
 public:
  static absl::StatusOr<std::unique_ptr<AdditiveProtocol>> Create(
      const AdversaryStructure& structure);

  const AdversaryStructure& structure() const override { return structure_; }
  int phase_count() const override { return 1; }
  const PhaseLayout& phase(int) const override { return layout_; }
  std::string name() const override { return "additive"; }

  absl::StatusOr<ExecutionOutcome> Execute(
      const Field& field, uint64_t m, RandomTape& sender_tape,
      RandomTape& receiver_tape, PhaseChannel& channel) const override;

 private:
  AdditiveProtocol() = default;
  AdversaryStructure structure_;
  PhaseLayout layout_;
};

// Sends m in the clear on wire 1 and a random pad elsewhere. Exists to
// check that the privacy oracle notices.
class CleartextProtocol : public Protocol {
 public:
  static absl::StatusOr<std::unique_ptr<CleartextProtocol>> Create(
      const AdversaryStructure& structure);

  const AdversaryStructure& structure() const override { return structure_; }
  int phase_count() const override { return 1; }
  const PhaseLayout& phase(int) const override { return layout_; }
  std::string name() const override { return "cleartext"; }

  absl::StatusOr<ExecutionOutcome> Execute(
      const Field& field, uint64_t m, RandomTape& sender_tape,
      RandomTape& receiver_tape, PhaseChannel& channel) const override;

 private:
  CleartextProtocol() = default;
  AdversaryStructure structure_;
  PhaseLayout layout_;
};

}  // namespace smt

#endif  // SMT_ONEWAY_H_
