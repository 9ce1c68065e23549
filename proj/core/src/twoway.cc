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

#include "smt/twoway.h"

#include <stdexcept>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "smt/feasibility.h"
#include "smt/oneway.h"

namespace smt {
namespace {

// Lowest wire outside the first set that leaves one; without force only the
// first set counts. Forced plans end on wire 0.
int PickWire(std::initializer_list<WireSet> avoid, bool force) {
  for (const WireSet& set : avoid) {
    int w = set.LowestOutside();
    if (w >= 0 || !force) return w;
  }
  return 0;
}

// Majority of the copies, or the first copy when there is none (only an
// adversary outside the child's structure can cause that).
uint64_t MajorityOrFirst(std::span<const uint64_t> copies) {
  absl::StatusOr<uint64_t> v = MajorityOf(copies);
  return v.ok() ? *v : copies.front();
}

bool Collinear(const Field& field, uint64_t x1, uint64_t y1, uint64_t x2,
               uint64_t y2, uint64_t x3, uint64_t y3) {
  // (y2 - y1)(x3 - x1) == (y3 - y1)(x2 - x1)
  uint64_t lhs = field.Mul(field.Sub(y2, y1), field.Sub(x3, x1));
  uint64_t rhs = field.Mul(field.Sub(y3, y1), field.Sub(x2, x1));
  return lhs == rhs;
}

struct Planner {
  const TwoWayOptions& options;
  std::vector<TwoWayLeaf>& leaves;
  PhaseLayout& round1;
  PhaseLayout& round2;

  // `attacked` mirrors `structure` pair by pair; forced plans fall back on
  // its listen sets to stay private where they can.
  absl::StatusOr<TwoWayNode> PlanNode(const AdversaryStructure& structure,
                                      const AdversaryStructure& attacked,
                                      const ProtocolPath& path) {
    TwoWayNode node;
    node.path = path;
    if (structure.size() > 3) {
      for (uint8_t j = 1; j <= 4; ++j) {
        ProtocolPath child = path;
        child.push_back(j);
        absl::StatusOr<TwoWayNode> c = PlanNode(structure.Without(j - 1),
                                                 attacked.Without(j - 1), child);
        if (!c.ok()) return c.status();
        node.children.push_back(*std::move(c));
      }
      return node;
    }
    const AdversaryStructure a = structure.PaddedTo(3);
    const AdversaryStructure b = attacked.PaddedTo(3);
    TwoWayLeaf leaf;
    leaf.path = path;
    leaf.structure = structure;
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const WireSet& d = a.pair(j).disrupt;
        leaf.w[j][k] =
            PickWire({d | a.pair(k).listen, a.pair(k).listen,
                      b.pair(k).listen, d},
                     options.force);
        if (leaf.w[j][k] < 0) {
          return absl::FailedPreconditionError(
              absl::StrCat("no wire w", j + 1, ",", k + 1, " at node [",
                           PathString(path), "]"));
        }
      }
    }
    const std::array<std::pair<int, int>, 3> w4_pairs = {
        std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}};
    for (int c = 0; c < 3; ++c) {
      WireSet avoid = a.pair(w4_pairs[c].first).disrupt |
                      a.pair(w4_pairs[c].second).disrupt;
      leaf.w4[c] = PickWire({avoid}, options.force);
      if (leaf.w4[c] < 0) {
        return absl::FailedPreconditionError(absl::StrCat(
            "no wire w4,", c + 1, " at node [", PathString(path), "]"));
      }
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 3; ++j) {
        int g = round1.AddGroup(GroupKind::kAdditive);
        for (int k = 0; k < 3; ++k) {
          leaf.share_slots[i][j][k] = round1.AddSlot(
              leaf.w[j][k],
              SlotId{path, absl::StrCat("p", i + 1, "(", j + 1, ").", k + 1)},
              g);
        }
      }
      int g = round1.AddGroup(GroupKind::kPublic);
      for (int c = 0; c < 3; ++c) {
        leaf.p4_slots[i][c] = round1.AddSlot(
            leaf.w4[c], SlotId{path, absl::StrCat("p", i + 1, "(4)#", c + 1)},
            g);
      }
    }
    static constexpr std::array<const char*, 9> kNames = {
        "tag", "idx1", "b1", "b2", "b3", "idx2", "c1", "c2", "c3"};
    for (size_t f = 0; f < kPayloadSize; ++f) {
      int g = round2.AddGroup(GroupKind::kPublic);
      for (int c = 0; c < 3; ++c) {
        leaf.payload_slots[f][c] = round2.AddSlot(
            leaf.w4[c], SlotId{path, absl::StrCat(kNames[f], "#", c + 1)}, g);
      }
    }
    node.leaf = leaves.size();
    leaves.push_back(std::move(leaf));
    return node;
  }
};

}  // namespace

Classification ClassifyPoints(const Field& field,
                              std::span<const uint64_t, 4> v) {
  // Triple through p(4) that leaves out position e (1..3).
  auto triple_ok = [&](int e) {
    std::array<uint64_t, 2> xs{};
    size_t c = 0;
    for (int x = 1; x <= 3; ++x) {
      if (x != e) xs[c++] = x;
    }
    return Collinear(field, xs[0], v[xs[0] - 1], xs[1], v[xs[1] - 1], 4, v[3]);
  };
  int lines = 0;
  int excluded = 0;
  for (int e = 1; e <= 3; ++e) {
    if (triple_ok(e)) {
      ++lines;
      excluded = e;
    }
  }
  // Two triples through p(4) share two points, so they lie on one line.
  if (lines >= 2) return {PointClass::kA, 0};
  if (lines == 1) return {PointClass::kC, excluded};
  return {PointClass::kB, 0};
}

absl::StatusOr<Roles> SelectRoles(std::span<const Classification, 4> classes) {
  for (int i = 0; i < 4; ++i) {
    if (classes[i].cls == PointClass::kA) return Roles{'A', i, -1};
  }
  for (int i = 0; i < 4; ++i) {
    if (classes[i].cls == PointClass::kB) return Roles{'B', i, i == 0 ? 1 : 0};
  }
  for (int i1 = 0; i1 < 4; ++i1) {
    for (int i2 = i1 + 1; i2 < 4; ++i2) {
      if (classes[i1].excluded == classes[i2].excluded) {
        return Roles{'C', i1, i2};
      }
    }
  }
  return absl::InternalError("no two polynomials share an excluded position");
}

uint64_t LineAtZero(const Field& field, uint64_t x1, uint64_t y1, uint64_t x2,
                    uint64_t y2) {
  uint64_t slope =
      field.Mul(field.Sub(y2, y1), field.Inv(field.Sub(x2 % field.modulus(),
                                                       x1 % field.modulus())));
  return field.Sub(y1, field.Mul(slope, x1 % field.modulus()));
}

Payload BuildPayload(const Field& field, const Roles& roles,
                     const std::array<std::array<uint64_t, 4>, 4>& pbar,
                     uint64_t m) {
  Payload out{};
  const int i = roles.first;
  out[1] = i + 1;
  if (roles.tag == 'A') {
    out[0] = 1;
    out[6] = field.Add(m, LineAtZero(field, 1, pbar[i][0], 4, pbar[i][3]));
    return out;
  }
  for (int x = 0; x < 3; ++x) out[2 + x] = pbar[i][x];
  const int j = roles.second;
  out[5] = j + 1;
  const std::array<uint64_t, 4>& q = pbar[j];
  if (roles.tag == 'B') {
    out[0] = 2;
    for (int h = 1; h <= 3; ++h) {
      out[5 + h] = field.Add(m, LineAtZero(field, h, q[h - 1], 4, q[3]));
    }
    return out;
  }
  out[0] = 3;
  Classification c = ClassifyPoints(field, std::span<const uint64_t, 4>(q));
  const int e = c.excluded;
  const int keep = e == 1 ? 2 : 1;
  out[6] = field.Add(m, LineAtZero(field, keep, q[keep - 1], 4, q[3]));
  out[7] = field.Add(m, LineAtZero(field, e, q[e - 1], 4, q[3]));
  return out;
}

absl::StatusOr<uint64_t> DecodePayload(
    const Field& field, const Payload& payload,
    const std::array<std::array<uint64_t, 2>, 4>& poly) {
  auto index = [](uint64_t v) -> int {
    return v >= 1 && v <= 4 ? static_cast<int>(v) - 1 : -1;
  };
  auto truth = [&](int i, uint64_t x) {
    return field.Add(poly[i][0], field.Mul(poly[i][1], x));
  };
  const int i = index(payload[1]);
  if (i < 0) return absl::DataLossError("payload index out of range");
  if (payload[0] == 1) return field.Sub(payload[6], poly[i][0]);
  if (payload[0] != 2 && payload[0] != 3) {
    return absl::DataLossError(absl::StrCat("payload tag ", payload[0]));
  }
  const int j = index(payload[5]);
  if (j < 0 || j == i) return absl::DataLossError("bad second index");
  std::vector<int> differ;
  int same = 0;
  for (int x = 1; x <= 3; ++x) {
    if (payload[1 + x] != truth(i, x)) {
      differ.push_back(x);
    } else {
      same = x;
    }
  }
  if (payload[0] == 2) {
    if (differ.size() != 2) {
      return absl::DataLossError("case B: expected two disrupted positions");
    }
    return field.Sub(payload[5 + same], poly[j][0]);
  }
  if (differ.size() == 1) return field.Sub(payload[6], poly[j][0]);
  if (differ.size() == 2) return field.Sub(payload[7], poly[j][0]);
  return absl::DataLossError("case C: disrupted positions fit neither alternative");
}

absl::StatusOr<uint64_t> ComposeInductiveTwoWay(
    const Field& field, std::span<const uint64_t> children) {
  return DecodeFourCandidates(field, children);
}

absl::StatusOr<std::unique_ptr<TwoWayProtocol>> TwoWayProtocol::PlanInternal(
    const AdversaryStructure& planned, const AdversaryStructure& attacked,
    const TwoWayOptions& options) {
  if (planned.size() > options.max_pairs) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "|A| = ", planned.size(), " exceeds the planning cap of ",
        options.max_pairs, " pairs"));
  }
  std::unique_ptr<TwoWayProtocol> p(new TwoWayProtocol());
  p->structure_ = attacked;
  p->planned_ = planned;
  p->round1_.direction = Direction::kReceiverToSender;
  p->round2_.direction = Direction::kSenderToReceiver;
  Planner planner{options, p->leaves_, p->round1_, p->round2_};
  absl::StatusOr<TwoWayNode> root = planner.PlanNode(planned, attacked, {});
  if (!root.ok()) return root.status();
  p->root_ = *std::move(root);
  if (options.inject_fault) {
    // Every leaf, so the outer decode cannot outvote a single bad child.
    for (TwoWayLeaf& leaf : p->leaves_) {
      const AdversaryStructure a = leaf.structure.PaddedTo(3);
      int j = 0;
      while (j < 3 && a.pair(j).disrupt.empty()) ++j;
      if (j == 3) {
        return absl::FailedPreconditionError(
            "cannot inject a fault: every disrupt set is empty");
      }
      const int w = a.pair(j).disrupt.ZeroBased().front();
      leaf.w[j][0] = w;
      for (int i = 0; i < 4; ++i) {
        p->round1_.slots[leaf.share_slots[i][j][0]].wire = w;
      }
    }
  }
  return p;
}

absl::StatusOr<std::unique_ptr<TwoWayProtocol>> TwoWayProtocol::Plan(
    const AdversaryStructure& structure, TwoWayOptions options) {
  if (!options.force) {
    if (absl::Status s = RefuseIfInfeasible(FeasibleTwoWay(structure));
        !s.ok()) {
      return s;
    }
  }
  return PlanInternal(structure, structure, options);
}

absl::StatusOr<std::unique_ptr<TwoWayProtocol>>
TwoWayProtocol::PlanNonCompletelyOblivious(const AdversaryStructure& structure,
                                           TwoWayOptions options) {
  if (!options.force) {
    if (absl::Status s = RefuseIfInfeasible(
            FeasibleTwoRoundNonCompletelyOblivious(structure));
        !s.ok()) {
      return s;
    }
  }
  AdversaryStructure attacked =
      structure.mode() == ObliviousnessMode::kCompletelyOblivious
          ? structure.WithMode(ObliviousnessMode::kOblivious)
          : structure;
  return PlanInternal(Strengthen(structure), attacked, options);
}

std::vector<uint64_t> TwoWayProtocol::Round1Receiver(
    const Field& field, RandomTape& tape, TwoWayReceiverState& state) const {
  std::vector<uint64_t> out(round1_.slots.size(), 0);
  state.polys.assign(leaves_.size(), {});
  for (size_t l = 0; l < leaves_.size(); ++l) {
    const TwoWayLeaf& leaf = leaves_[l];
    for (int i = 0; i < 4; ++i) {
      const std::string pi = absl::StrCat("p", i + 1);
      uint64_t c0 = tape.Draw(field, leaf.path, pi + ".c0");
      uint64_t c1 = tape.Draw(field, leaf.path, pi + ".c1");
      state.polys[l][i] = {c0, c1};
      for (uint64_t x = 1; x <= 3; ++x) {
        const std::string px = absl::StrCat(pi, "(", x, ")");
        uint64_t value = field.Add(c0, field.Mul(c1, x));
        uint64_t r1 = tape.Draw(field, leaf.path, px + ".r1");
        uint64_t r2 = tape.Draw(field, leaf.path, px + ".r2");
        out[leaf.share_slots[i][x - 1][0]] = r1;
        out[leaf.share_slots[i][x - 1][1]] = r2;
        out[leaf.share_slots[i][x - 1][2]] =
            field.Sub(field.Sub(value, r1), r2);
      }
      uint64_t p4 = field.Add(c0, field.Mul(c1, 4));
      for (int c = 0; c < 3; ++c) out[leaf.p4_slots[i][c]] = p4;
    }
  }
  return out;
}

std::array<std::array<uint64_t, 4>, 4> TwoWayProtocol::LeafPoints(
    const Field& field, const TwoWayLeaf& leaf,
    std::span<const uint64_t> delivered1) const {
  std::array<std::array<uint64_t, 4>, 4> pbar{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 3; ++j) {
      uint64_t sum = 0;
      for (int k = 0; k < 3; ++k) {
        sum = field.Add(sum, delivered1[leaf.share_slots[i][j][k]]);
      }
      pbar[i][j] = sum;
    }
    std::array<uint64_t, 3> copies{};
    for (int c = 0; c < 3; ++c) copies[c] = delivered1[leaf.p4_slots[i][c]];
    pbar[i][3] = MajorityOrFirst(copies);
  }
  return pbar;
}

Payload TwoWayProtocol::LeafPayload(
    const Field& field, const std::array<std::array<uint64_t, 4>, 4>& pbar,
    uint64_t m_leaf) const {
  std::array<Classification, 4> classes{};
  for (int i = 0; i < 4; ++i) {
    classes[i] = ClassifyPoints(field, std::span<const uint64_t, 4>(pbar[i]));
  }
  absl::StatusOr<Roles> roles =
      SelectRoles(std::span<const Classification, 4>(classes));
  if (!roles.ok()) return Payload{};
  return BuildPayload(field, *roles, pbar, m_leaf);
}

namespace {

struct SenderWalk {
  const TwoWayProtocol& protocol;
  const Field& field;
  std::span<const uint64_t> delivered1;
  RandomTape& tape;
  std::vector<uint64_t>& out;

  void Visit(const TwoWayNode& node, uint64_t m) {
    if (node.leaf.has_value()) {
      const TwoWayLeaf& leaf = protocol.leaves()[*node.leaf];
      Payload payload = protocol.LeafPayload(
          field, protocol.LeafPoints(field, leaf, delivered1), m);
      for (size_t f = 0; f < kPayloadSize; ++f) {
        for (int c = 0; c < 3; ++c) out[leaf.payload_slots[f][c]] = payload[f];
      }
      return;
    }
    uint64_t r = tape.Draw(field, node.path, "r");
    for (uint64_t j = 1; j <= 4; ++j) {
      Visit(node.children[j - 1], field.Add(m, field.Mul(j, r)));
    }
  }
};

struct ReceiverWalk {
  const TwoWayProtocol& protocol;
  const Field& field;
  const TwoWayReceiverState& state;
  std::span<const uint64_t> delivered2;

  absl::StatusOr<uint64_t> Visit(const TwoWayNode& node) {
    if (node.leaf.has_value()) {
      const TwoWayLeaf& leaf = protocol.leaves()[*node.leaf];
      Payload payload{};
      for (size_t f = 0; f < kPayloadSize; ++f) {
        std::array<uint64_t, 3> copies{};
        for (int c = 0; c < 3; ++c) {
          copies[c] = delivered2[leaf.payload_slots[f][c]];
        }
        payload[f] = MajorityOrFirst(copies);
      }
      return DecodePayload(field, payload, state.polys[*node.leaf]);
    }
    std::array<uint64_t, 4> v{};
    for (size_t j = 0; j < 4; ++j) {
      absl::StatusOr<uint64_t> c = Visit(node.children[j]);
      v[j] = c.ok() ? *c : 0;
    }
    return ComposeInductiveTwoWay(field, v);
  }
};

}  // namespace

std::vector<uint64_t> TwoWayProtocol::Round2Sender(
    const Field& field, std::span<const uint64_t> delivered1, uint64_t m,
    RandomTape& tape) const {
  if (delivered1.size() != round1_.slots.size()) {
    throw std::invalid_argument("Round2Sender: round-1 slot count mismatch");
  }
  std::vector<uint64_t> out(round2_.slots.size(), 0);
  SenderWalk{*this, field, delivered1, tape, out}.Visit(root_,
                                                        field.Reduce(m));
  return out;
}

absl::StatusOr<uint64_t> TwoWayProtocol::Round2Receiver(
    const Field& field, const TwoWayReceiverState& state,
    std::span<const uint64_t> delivered2) const {
  if (delivered2.size() != round2_.slots.size()) {
    return absl::InvalidArgumentError("round-2 slot count mismatch");
  }
  return ReceiverWalk{*this, field, state, delivered2}.Visit(root_);
}

absl::StatusOr<ExecutionOutcome> TwoWayProtocol::Execute(
    const Field& field, uint64_t m, RandomTape& sender_tape,
    RandomTape& receiver_tape, PhaseChannel& channel) const {
  ExecutionOutcome out;
  TwoWayReceiverState state;
  std::vector<uint64_t> sent1 = Round1Receiver(field, receiver_tape, state);
  absl::StatusOr<std::vector<uint64_t>> d1 =
      channel.Exchange(1, round1_, sent1);
  if (!d1.ok()) return d1.status();
  std::vector<uint64_t> sent2 = Round2Sender(field, *d1, m, sender_tape);
  absl::StatusOr<std::vector<uint64_t>> d2 =
      channel.Exchange(2, round2_, sent2);
  if (!d2.ok()) return d2.status();
  out.rounds = 2;
  absl::StatusOr<uint64_t> decoded = Round2Receiver(field, state, *d2);
  if (decoded.ok()) {
    out.decoded = *decoded;
  } else {
    out.failure = std::string(decoded.status().message());
  }
  return out;
}

}  // namespace smt
