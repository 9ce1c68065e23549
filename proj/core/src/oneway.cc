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

#include "smt/oneway.h"

#include <functional>
#include <map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "smt/feasibility.h"

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

absl::StatusOr<OneWayNode> PlanNode(const AdversaryStructure& structure,
                                    ProtocolPath path,
                                    const OneWayOptions& options,
                                    PhaseLayout& layout) {
  OneWayNode node;
  node.path = path;
  node.structure = structure;
  if (structure.size() <= 3) {
    const AdversaryStructure padded = structure.PaddedTo(3);
    const int n = structure.n();
    OneWayBaseCase base;
    for (int k = 0; k < 3; ++k) {
      WireSet d_avoid = WireSet::Empty(n);
      for (int a = 0; a < 3; ++a) {
        if (a != k) d_avoid = d_avoid | padded.pair(a).disrupt;
      }
      int g = layout.AddGroup(GroupKind::kAdditive);
      for (int t = 0; t < 3; ++t) {
        int w = PickWire({d_avoid | padded.pair(t).listen,
                          padded.pair(t).listen, d_avoid},
                         options.force);
        if (w < 0) {
          return absl::FailedPreconditionError(absl::StrCat(
              "no wire for sharing ", k + 1, " share ", t + 1, " at node [",
              PathString(path), "]"));
        }
        base.wires[k][t] = w;
        base.slots[k][t] = layout.AddSlot(
            w, SlotId{path, absl::StrCat("s", k + 1, ".", t + 1)}, g);
      }
    }
    node.base = base;
    return node;
  }
  for (uint8_t j = 1; j <= 4; ++j) {
    ProtocolPath child_path = path;
    child_path.push_back(j);
    absl::StatusOr<OneWayNode> child =
        PlanNode(structure.Without(j - 1), child_path, options, layout);
    if (!child.ok()) return child.status();
    node.children.push_back(*std::move(child));
  }
  return node;
}

void CollectLeaves(OneWayNode& node, std::vector<OneWayNode*>& out) {
  if (node.base.has_value()) {
    out.push_back(&node);
    return;
  }
  for (OneWayNode& c : node.children) CollectLeaves(c, out);
}

void SendNode(const OneWayNode& node, const Field& field, uint64_t m,
              RandomTape& tape, std::vector<uint64_t>& out) {
  if (node.base.has_value()) {
    for (int k = 0; k < 3; ++k) {
      const std::string s = absl::StrCat("s", k + 1);
      uint64_t r1 = tape.Draw(field, node.path, s + ".r1");
      uint64_t r2 = tape.Draw(field, node.path, s + ".r2");
      out[node.base->slots[k][0]] = r1;
      out[node.base->slots[k][1]] = r2;
      out[node.base->slots[k][2]] = field.Sub(field.Sub(m, r1), r2);
    }
    return;
  }
  uint64_t r = tape.Draw(field, node.path, "r");
  for (uint64_t j = 1; j <= 4; ++j) {
    SendNode(node.children[j - 1], field, field.Add(m, field.Mul(j, r)), tape,
             out);
  }
}

absl::StatusOr<uint64_t> ReceiveNode(const OneWayNode& node,
                                     const Field& field,
                                     std::span<const uint64_t> delivered) {
  if (node.base.has_value()) {
    std::array<uint64_t, 3> sums{};
    for (int k = 0; k < 3; ++k) {
      for (int t = 0; t < 3; ++t) {
        sums[k] = field.Add(sums[k], delivered[node.base->slots[k][t]]);
      }
    }
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        if (sums[a] == sums[b]) return sums[a];
      }
    }
    return absl::DataLossError(absl::StrCat(
        "node [", PathString(node.path), "]: sharings disagree (", sums[0],
        ",", sums[1], ",", sums[2], ")"));
  }
  std::array<uint64_t, 4> v{};
  for (size_t j = 0; j < 4; ++j) {
    // A failed child counts as one wrong candidate.
    absl::StatusOr<uint64_t> c = ReceiveNode(node.children[j], field, delivered);
    v[j] = c.ok() ? *c : 0;
  }
  return DecodeFourCandidates(field, v);
}

void CountLeaves(const OneWayNode& node, size_t& count) {
  if (node.base.has_value()) {
    ++count;
    return;
  }
  for (const OneWayNode& c : node.children) CountLeaves(c, count);
}

absl::StatusOr<ExecutionOutcome> RunOnePhase(
    const Protocol& p, const std::vector<uint64_t>& sent,
    PhaseChannel& channel,
    const std::function<absl::StatusOr<uint64_t>(std::span<const uint64_t>)>&
        receive) {
  ExecutionOutcome out;
  absl::StatusOr<std::vector<uint64_t>> delivered =
      channel.Exchange(1, p.phase(0), sent);
  if (!delivered.ok()) return delivered.status();
  out.rounds = 1;
  absl::StatusOr<uint64_t> m = receive(*delivered);
  if (m.ok()) {
    out.decoded = *m;
  } else {
    out.failure = std::string(m.status().message());
  }
  return out;
}

}  // namespace

absl::StatusOr<uint64_t> DecodeFourCandidates(
    const Field& field, std::span<const uint64_t> candidates) {
  std::vector<Point> points;
  for (size_t j = 0; j < candidates.size(); ++j) {
    points.push_back(Point{j + 1, candidates[j]});
  }
  absl::StatusOr<std::optional<Decoded>> d =
      DecodeWithErrors(field, points, 1, 1);
  if (!d.ok()) return d.status();
  if (!d->has_value()) {
    return absl::DataLossError("no line through three of the four candidates");
  }
  return (*d)->polynomial.Evaluate(0);
}

absl::StatusOr<std::unique_ptr<OneWayProtocol>> OneWayProtocol::Plan(
    const AdversaryStructure& structure, OneWayOptions options) {
  if (!options.force) {
    if (absl::Status s = RefuseIfInfeasible(FeasibleOneWay(structure));
        !s.ok()) {
      return s;
    }
  }
  if (structure.size() > options.max_pairs) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "|A| = ", structure.size(), " exceeds the planning cap of ",
        options.max_pairs, " pairs"));
  }
  std::unique_ptr<OneWayProtocol> p(new OneWayProtocol());
  p->structure_ = structure;
  p->layout_.direction = Direction::kSenderToReceiver;
  absl::StatusOr<OneWayNode> root = PlanNode(structure, {}, options, p->layout_);
  if (!root.ok()) return root.status();
  p->root_ = *std::move(root);
  if (options.inject_fault) {
    // Every leaf, so the outer decode cannot outvote a single bad child.
    std::vector<OneWayNode*> leaves;
    CollectLeaves(p->root_, leaves);
    for (OneWayNode* leaf : leaves) {
      const AdversaryStructure padded = leaf->structure.PaddedTo(3);
      bool injected = false;
      for (int k = 0; k < 3 && !injected; ++k) {
        for (int a = 0; a < 3 && !injected; ++a) {
          if (a == k || padded.pair(a).disrupt.empty()) continue;
          int w = padded.pair(a).disrupt.ZeroBased().front();
          leaf->base->wires[k][0] = w;
          p->layout_.slots[leaf->base->slots[k][0]].wire = w;
          injected = true;
        }
      }
      if (!injected) {
        return absl::FailedPreconditionError(
            "cannot inject a fault: every disrupt set is empty");
      }
    }
  }
  return p;
}

uint64_t OneWayProtocol::min_modulus() const {
  return root_.base.has_value() ? 2 : 5;
}

size_t OneWayProtocol::leaf_count() const {
  size_t count = 0;
  CountLeaves(root_, count);
  return count;
}

std::vector<uint64_t> OneWayProtocol::Send(const Field& field, uint64_t m,
                                           RandomTape& tape) const {
  std::vector<uint64_t> out(layout_.slots.size(), 0);
  SendNode(root_, field, field.Reduce(m), tape, out);
  return out;
}

absl::StatusOr<uint64_t> OneWayProtocol::Receive(
    const Field& field, std::span<const uint64_t> delivered) const {
  if (delivered.size() != layout_.slots.size()) {
    return absl::InvalidArgumentError("delivered slot count mismatch");
  }
  return ReceiveNode(root_, field, delivered);
}

absl::StatusOr<ExecutionOutcome> OneWayProtocol::Execute(
    const Field& field, uint64_t m, RandomTape& sender_tape, RandomTape&,
    PhaseChannel& channel) const {
  return RunOnePhase(*this, Send(field, m, sender_tape), channel,
                     [&](std::span<const uint64_t> d) {
                       return Receive(field, d);
                     });
}

absl::StatusOr<std::unique_ptr<ThresholdProtocol>> ThresholdProtocol::Create(
    int n, int k) {
  if (k < 0 || 3 * k + 1 > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "threshold protocol needs n > 3k, got n=", n, " k=", k));
  }
  absl::StatusOr<AdversaryStructure> s = ThresholdStructure(n, k);
  if (!s.ok()) return s.status();
  std::unique_ptr<ThresholdProtocol> p(new ThresholdProtocol());
  p->k_ = k;
  p->structure_ = *std::move(s);
  p->layout_.direction = Direction::kSenderToReceiver;
  for (int i = 1; i <= 3 * k + 1; ++i) {
    int g = p->layout_.AddGroup(GroupKind::kSingle);
    p->layout_.AddSlot(i - 1, SlotId{{}, absl::StrCat("p", i)}, g);
  }
  return p;
}

absl::StatusOr<ExecutionOutcome> ThresholdProtocol::Execute(
    const Field& field, uint64_t m, RandomTape& sender_tape, RandomTape&,
    PhaseChannel& channel) const {
  std::vector<uint64_t> coeffs = {field.Reduce(m)};
  for (int c = 1; c <= k_; ++c) {
    coeffs.push_back(sender_tape.Draw(field, {}, absl::StrCat("c", c)));
  }
  // Built from raw coefficients so a zero top coefficient is allowed.
  Polynomial poly(field, coeffs);
  std::vector<uint64_t> sent;
  for (uint64_t i = 1; i <= layout_.slots.size(); ++i) {
    sent.push_back(poly.Evaluate(i));
  }
  return RunOnePhase(
      *this, sent, channel,
      [&](std::span<const uint64_t> d) -> absl::StatusOr<uint64_t> {
        std::vector<Point> points;
        for (size_t i = 0; i < d.size(); ++i) points.push_back({i + 1, d[i]});
        absl::StatusOr<std::optional<Decoded>> dec =
            DecodeWithErrors(field, points, k_, k_);
        if (!dec.ok()) return dec.status();
        if (!dec->has_value()) {
          return absl::DataLossError("no unique degree-k decode");
        }
        return (*dec)->polynomial.Evaluate(0);
      });
}

absl::StatusOr<std::unique_ptr<AdditiveProtocol>> AdditiveProtocol::Create(
    const AdversaryStructure& structure) {
  if (structure.n() < 1) return absl::InvalidArgumentError("no wires");
  std::unique_ptr<AdditiveProtocol> p(new AdditiveProtocol());
  p->structure_ = structure;
  p->layout_.direction = Direction::kSenderToReceiver;
  int g = p->layout_.AddGroup(GroupKind::kAdditive);
  for (int w = 0; w < structure.n(); ++w) {
    p->layout_.AddSlot(w, SlotId{{}, absl::StrCat("a", w + 1)}, g);
  }
  return p;
}

absl::StatusOr<ExecutionOutcome> AdditiveProtocol::Execute(
    const Field& field, uint64_t m, RandomTape& sender_tape, RandomTape&,
    PhaseChannel& channel) const {
  std::vector<uint64_t> sent;
  uint64_t last = field.Reduce(m);
  for (size_t w = 0; w + 1 < layout_.slots.size(); ++w) {
    uint64_t r = sender_tape.Draw(field, {}, absl::StrCat("r", w + 1));
    sent.push_back(r);
    last = field.Sub(last, r);
  }
  sent.push_back(last);
  return RunOnePhase(*this, sent, channel,
                     [&](std::span<const uint64_t> d) {
                       uint64_t sum = 0;
                       for (uint64_t v : d) sum = field.Add(sum, v);
                       return absl::StatusOr<uint64_t>(sum);
                     });
}

absl::StatusOr<std::unique_ptr<CleartextProtocol>> CleartextProtocol::Create(
    const AdversaryStructure& structure) {
  if (structure.n() < 1) return absl::InvalidArgumentError("no wires");
  std::unique_ptr<CleartextProtocol> p(new CleartextProtocol());
  p->structure_ = structure;
  p->layout_.direction = Direction::kSenderToReceiver;
  for (int w = 0; w < structure.n(); ++w) {
    int g = p->layout_.AddGroup(GroupKind::kSingle);
    p->layout_.AddSlot(w, SlotId{{}, absl::StrCat("c", w + 1)}, g);
  }
  return p;
}

absl::StatusOr<ExecutionOutcome> CleartextProtocol::Execute(
    const Field& field, uint64_t m, RandomTape& sender_tape, RandomTape&,
    PhaseChannel& channel) const {
  std::vector<uint64_t> sent = {field.Reduce(m)};
  for (size_t w = 1; w < layout_.slots.size(); ++w) {
    sent.push_back(sender_tape.Draw(field, {}, absl::StrCat("pad", w + 1)));
  }
  return RunOnePhase(*this, sent, channel,
                     [&](std::span<const uint64_t> d) {
                       return absl::StatusOr<uint64_t>(d[0]);
                     });
}

}  // namespace smt
