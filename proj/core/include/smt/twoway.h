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

#ifndef SMT_TWOWAY_H_
#define SMT_TWOWAY_H_

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

// One base-case instance, its wires and its slot indices in both phases.
// Positions 1..3 are the evaluation points shared additively; position 4 is
// sent publicly.
struct TwoWayLeaf {
  ProtocolPath path;
  AdversaryStructure structure;
  std::array<std::array<int, 3>, 3> w;  // w[j][k] avoids D_j and L_k
  std::array<int, 3> w4;                // avoid D1+D2, D1+D3, D2+D3
  // share_slots[i][j][k]: share k of p_i(j+1), round 1.
  std::array<std::array<std::array<size_t, 3>, 3>, 4> share_slots;
  std::array<std::array<size_t, 3>, 4> p4_slots;  // copies of p_i(4)
  std::array<std::array<size_t, 3>, 9> payload_slots;  // round 2
};

struct TwoWayNode {
  ProtocolPath path;
  std::optional<size_t> leaf;        // index into TwoWayProtocol::leaves()
  std::vector<TwoWayNode> children;  // 4 for inductive nodes
};

struct TwoWayOptions {
  bool force = false;
  size_t max_pairs = 6;
  bool inject_fault = false;
};

// How the four points of one polynomial look after round 1.
enum class PointClass {
  kA,  // all four on a line
  kB,  // no collinear triple through p(4)
  kC,  // exactly one collinear triple through p(4)
};

struct Classification {
  PointClass cls;
  int excluded = 0;  // kC: the position 1..3 off the line
};

// values[0..2] = delivered p(1..3), values[3] = p(4).
Classification ClassifyPoints(const Field& field,
                              std::span<const uint64_t, 4> values);

struct Roles {
  char tag;    // 'A', 'B' or 'C'
  int first;   // A: i; B: i; C: i1 (all 0-based)
  int second;  // B: j; C: i2; A: unused (-1)
};

// Lowest i of class A, else lowest of class B with the lowest j != i, else
// the lowest pair sharing an excluded position.
absl::StatusOr<Roles> SelectRoles(std::span<const Classification, 4> classes);

// Payload field order: tag, idx1, b1, b2, b3, idx2, c1, c2, c3. Tags are
// 1/2/3 for A/B/C and 0 for the fallback of a broken child; indices are
// 1-based.
using Payload = std::array<uint64_t, 9>;
constexpr size_t kPayloadSize = 9;

// Value at 0 of the line through (x1, y1) and (x2, y2).
uint64_t LineAtZero(const Field& field, uint64_t x1, uint64_t y1, uint64_t x2,
                    uint64_t y2);

// pbar[i][0..2] = delivered p_i(1..3), pbar[i][3] = p_i(4).
Payload BuildPayload(const Field& field, const Roles& roles,
                     const std::array<std::array<uint64_t, 4>, 4>& pbar,
                     uint64_t m);

// poly[i] = {p_i(0), slope}.
absl::StatusOr<uint64_t> DecodePayload(
    const Field& field, const Payload& payload,
    const std::array<std::array<uint64_t, 2>, 4>& poly);

struct TwoWayReceiverState {
  // Per leaf, per i: {p_i(0), slope}.
  std::vector<std::array<std::array<uint64_t, 2>, 4>> polys;
};

class TwoWayProtocol : public Protocol {
 public:
  // Completely oblivious adversaries.
  static absl::StatusOr<std::unique_ptr<TwoWayProtocol>> Plan(
      const AdversaryStructure& structure, TwoWayOptions options = {});
  // Oblivious adversaries that hear replacements: plans for the
  // strengthened structure, runs against the original one.
  static absl::StatusOr<std::unique_ptr<TwoWayProtocol>>
  PlanNonCompletelyOblivious(const AdversaryStructure& structure,
                             TwoWayOptions options = {});

  // The adversary structure executions are run against.
  const AdversaryStructure& structure() const override { return structure_; }
  // The structure the wires were chosen for.
  const AdversaryStructure& planned() const { return planned_; }
  int phase_count() const override { return 2; }
  const PhaseLayout& phase(int index) const override {
    return index == 0 ? round1_ : round2_;
  }
  std::string name() const override { return "twoway"; }
  uint64_t min_modulus() const override { return 5; }

  const TwoWayNode& root() const { return root_; }
  const std::vector<TwoWayLeaf>& leaves() const { return leaves_; }

  // R's first message and retained state.
  std::vector<uint64_t> Round1Receiver(const Field& field, RandomTape& tape,
                                       TwoWayReceiverState& state) const;
  // S's reply to what it received.
  std::vector<uint64_t> Round2Sender(const Field& field,
                                     std::span<const uint64_t> delivered1,
                                     uint64_t m, RandomTape& tape) const;
  absl::StatusOr<uint64_t> Round2Receiver(
      const Field& field, const TwoWayReceiverState& state,
      std::span<const uint64_t> delivered2) const;

  // Per-leaf sender step, exposed for the privacy engine: the reduced
  // points and the payload for message `m_leaf`.
  std::array<std::array<uint64_t, 4>, 4> LeafPoints(
      const Field& field, const TwoWayLeaf& leaf,
      std::span<const uint64_t> delivered1) const;
  Payload LeafPayload(const Field& field,
                      const std::array<std::array<uint64_t, 4>, 4>& pbar,
                      uint64_t m_leaf) const;

  absl::StatusOr<ExecutionOutcome> Execute(
      const Field& field, uint64_t m, RandomTape& sender_tape,
      RandomTape& receiver_tape, PhaseChannel& channel) const override;

 private:
  TwoWayProtocol() = default;
  static absl::StatusOr<std::unique_ptr<TwoWayProtocol>> PlanInternal(
      const AdversaryStructure& planned, const AdversaryStructure& attacked,
      const TwoWayOptions& options);

  AdversaryStructure structure_;
  AdversaryStructure planned_;
  TwoWayNode root_;
  std::vector<TwoWayLeaf> leaves_;
  PhaseLayout round1_;
  PhaseLayout round2_;
};

// Degree-1, one-error decode of child values m + j r, j = 1..4.
absl::StatusOr<uint64_t> ComposeInductiveTwoWay(
    const Field& field, std::span<const uint64_t> children);

}  // namespace smt

#endif  // SMT_TWOWAY_H_
