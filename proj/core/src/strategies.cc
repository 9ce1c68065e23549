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

#include "smt/strategies.h"

#include <algorithm>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "smt/oneway.h"
#include "smt/rng.h"
#include "smt/twoway.h"
#include "smt/verification.h"

namespace smt {
namespace {

class ViewFunction : public Strategy {
 public:
  ViewFunction(std::string name,
               std::function<Disruption(const SlotContext&,
                                        const AdversaryView&)>
                   decide)
      : name_(std::move(name)), decide_(std::move(decide)) {}
  Disruption Decide(const SlotContext& ctx,
                    const AdversaryView& view) override {
    return decide_(ctx, view);
  }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  std::function<Disruption(const SlotContext&, const AdversaryView&)> decide_;
};

using PhaseValues = std::vector<std::vector<uint64_t>>;
// Per phase, replacement values for some slots.
using Overrides = std::vector<std::vector<std::optional<uint64_t>>>;

// Records what each phase sent and delivers it, after overrides.
class RecordingChannel : public PhaseChannel {
 public:
  RecordingChannel(PhaseValues& sent, const Overrides* overrides)
      : sent_(sent), overrides_(overrides) {}
  absl::StatusOr<std::vector<uint64_t>> Exchange(
      int, const PhaseLayout&, std::span<const uint64_t> sent) override {
    const size_t ph = sent_.size();
    sent_.emplace_back(sent.begin(), sent.end());
    std::vector<uint64_t> out(sent.begin(), sent.end());
    if (overrides_ != nullptr && ph < overrides_->size()) {
      for (size_t s = 0; s < out.size(); ++s) {
        if ((*overrides_)[ph][s].has_value()) out[s] = *(*overrides_)[ph][s];
      }
    }
    return out;
  }

 private:
  PhaseValues& sent_;
  const Overrides* overrides_;
};

PhaseValues RunRecorded(const Protocol& protocol, const Field& field,
                        uint64_t m, const std::vector<uint64_t>& sender,
                        const std::vector<uint64_t>& receiver,
                        const Overrides* overrides = nullptr) {
  PhaseValues sent;
  FixedTape s(sender), r(receiver);
  RecordingChannel channel(sent, overrides);
  (void)protocol.Execute(field, m, s, r, channel);
  return sent;
}

std::vector<size_t> SlotsOn(const PhaseLayout& layout, const WireSet& wires) {
  std::vector<size_t> out;
  for (size_t s = 0; s < layout.slots.size(); ++s) {
    if (wires.Contains(layout.slots[s].wire)) out.push_back(s);
  }
  return out;
}

// Scripts `values` onto the slots of phase `ph` that lie on `wires`.
void ScriptPhase(const Protocol& protocol, int ph, const WireSet& wires,
                 const std::vector<uint64_t>& values, Script& script) {
  const PhaseLayout& layout = protocol.phase(ph);
  for (size_t s : SlotsOn(layout, wires)) {
    script[{ph + 1, layout.slots[s].id.ToString()}] = values[s];
  }
}

absl::Status CheckPairs(const AdversaryStructure& a,
                        std::initializer_list<size_t> pairs) {
  for (size_t p : pairs) {
    if (p >= a.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("pair index ", p + 1, " outside 1..", a.size()));
    }
  }
  return absl::OkStatus();
}

absl::Status CheckCovers(std::initializer_list<WireSet> sets, int n,
                         std::string_view clause) {
  std::vector<WireSet> v(sets);
  if (!Covers(v, n)) {
    return absl::FailedPreconditionError(
        absl::StrCat(std::string(clause), " does not cover all wires"));
  }
  return absl::OkStatus();
}

struct Tapes {
  std::vector<uint64_t> sender;
  std::vector<uint64_t> receiver;
};

absl::StatusOr<Tapes> ZeroTapes(const Protocol& protocol, const Field& field) {
  absl::StatusOr<TapeShape> shape = MeasureTapes(protocol, field);
  if (!shape.ok()) return shape.status();
  return Tapes{std::vector<uint64_t>(shape->sender, 0),
               std::vector<uint64_t>(shape->receiver, 0)};
}

AttackWitness Trivial(AttackKind kind, std::vector<size_t> pairs,
                      const Tapes& tapes, uint64_t m, int cap) {
  AttackWitness w;
  w.kind = kind;
  w.pairs = std::move(pairs);
  w.round_cap = cap;
  for (ScriptedExecution& e : w.executions) {
    e = {m, w.pairs[0], tapes.sender, tapes.receiver, {}};
  }
  return w;
}

// Outputs of interest: sent values on the given slots of every phase.
std::vector<uint64_t> Pick(const PhaseValues& sent,
                           const std::vector<std::vector<size_t>>& slots) {
  std::vector<uint64_t> out;
  for (size_t ph = 0; ph < slots.size() && ph < sent.size(); ++ph) {
    for (size_t s : slots[ph]) out.push_back(sent[ph][s]);
  }
  return out;
}

std::optional<PrivacyVerdict> PassiveLeak(const Protocol& protocol,
                                          const Field& field, size_t pair,
                                          uint64_t m, uint64_t m2) {
  PrivacyOptions po;
  po.battery = {{"passive", SlotRule::kKeep, SlotRule::kKeep}};
  po.messages = {m, m2};
  po.pairs = {pair};
  PrivacyReport report = VerifyPrivacy(protocol, field, po);
  const PrivacyVerdict* v = report.first_violation();
  if (report.refused || v == nullptr) return std::nullopt;
  return *v;
}

// The tape search came back empty. When a passive listener on `pair`
// already tells m from m2 the protocol leaks and that is the witness.
absl::StatusOr<AttackWitness> NoMatch(const Protocol& protocol,
                                      const Field& field, size_t pair,
                                      uint64_t m, uint64_t m2,
                                      const DrawSearchResult& r,
                                      const AttackOptions& options) {
  if (!r.exhausted) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "tape search exhausted its budget of ", options.node_budget,
        " nodes"));
  }
  if (!PassiveLeak(protocol, field, pair, m, m2).has_value()) {
    return absl::NotFoundError(absl::StrCat(
        "tape search found no matching tape after ", r.nodes, " nodes"));
  }
  absl::StatusOr<Tapes> zero = ZeroTapes(protocol, field);
  if (!zero.ok()) return zero.status();
  AttackWitness w;
  w.kind = AttackKind::kEavesdrop;
  w.pairs = {pair};
  w.round_cap = options.round_cap;
  w.search_nodes = r.nodes;
  w.executions[0] = {m, pair, zero->sender, zero->receiver, {}};
  w.executions[1] = {m2, pair, zero->sender, zero->receiver, {}};
  return w;
}

}  // namespace

absl::StatusOr<std::unique_ptr<Strategy>> StrategyByName(
    std::string_view name) {
  if (name == "passive") return PassiveStrategy();
  if (name == "noise") return NoiseStrategy();
  if (name == "offset") return OffsetStrategy(1);
  if (name == "replace_heard") return ListenedReplaceStrategy(0);
  return absl::InvalidArgumentError(
      absl::StrCat("unknown strategy '", std::string(name),
                   "'; expected passive, noise, offset or replace_heard"));
}

std::vector<std::string> StrategyNames() {
  return {"passive", "noise", "offset", "replace_heard"};
}

std::unique_ptr<Strategy> ViewFunctionStrategy(
    std::string name,
    std::function<Disruption(const SlotContext&, const AdversaryView&)>
        decide) {
  return std::make_unique<ViewFunction>(std::move(name), std::move(decide));
}

std::string_view AttackName(AttackKind kind) {
  switch (kind) {
    case AttackKind::kOneWayAmbiguity:
      return "oneway_ambiguity";
    case AttackKind::kTwoWaySwap:
      return "twoway_swap";
    case AttackKind::kTwoWayReplay:
      return "twoway_replay";
    case AttackKind::kTwoRoundNonCompletelyOblivious:
      return "tworound_nco";
    case AttackKind::kEavesdrop:
      return "eavesdrop";
  }
  return "unknown";
}

DrawSearchResult SearchDraws(
    size_t count, uint64_t p,
    const std::function<std::vector<uint64_t>(const std::vector<uint64_t>&)>&
        outputs,
    const std::vector<uint64_t>& target, uint64_t node_budget) {
  DrawSearchResult result;
  // last[o]: highest draw output o was seen to depend on, -1 for none.
  std::vector<int> last(target.size(), -1);
  SplitMix64 rng(0x7461706573ULL);
  for (int probe = 0; probe < 4 && p > 1; ++probe) {
    std::vector<uint64_t> base(count);
    for (uint64_t& v : base) v = rng.Uniform(p);
    const std::vector<uint64_t> o0 = outputs(base);
    for (size_t d = 0; d < count; ++d) {
      for (int alt = 0; alt < 2; ++alt) {
        std::vector<uint64_t> t = base;
        t[d] = (base[d] + 1 + rng.Uniform(p - 1)) % p;
        const std::vector<uint64_t> o = outputs(t);
        for (size_t i = 0; i < o.size(); ++i) {
          if (o[i] != o0[i]) last[i] = std::max(last[i], static_cast<int>(d));
        }
      }
    }
  }
  // check_at[d + 1]: outputs fully determined once draw d is fixed.
  std::vector<std::vector<size_t>> check_at(count + 1);
  for (size_t i = 0; i < target.size(); ++i) check_at[last[i] + 1].push_back(i);

  std::vector<uint64_t> draws(count, 0);
  auto satisfied = [&](size_t level) {
    if (check_at[level].empty()) return true;
    const std::vector<uint64_t> o = outputs(draws);
    for (size_t i : check_at[level]) {
      if (o[i] != target[i]) return false;
    }
    return true;
  };
  if (!satisfied(0)) return result;

  // Lexicographic first, within a slice of the budget.
  const uint64_t lex_budget = std::min<uint64_t>(node_budget, 20'000);
  std::function<bool(size_t)> dfs = [&](size_t d) {
    if (d == count) return outputs(draws) == target;
    for (uint64_t v = 0; v < p; ++v) {
      if (++result.nodes > lex_budget) return false;
      draws[d] = v;
      if (satisfied(d + 1) && dfs(d + 1)) return true;
      if (result.nodes > lex_budget) return false;
    }
    draws[d] = 0;
    return false;
  };
  if (dfs(0)) {
    result.draws = draws;
    return result;
  }
  if (result.nodes <= lex_budget) {
    result.exhausted = true;  // the whole tree was searched
    return result;
  }
  // Outputs fixed late (a case choice that depends on every draw) make
  // the lexicographic tree too deep; seeded restarts pick each draw at
  // random among values that keep the early outputs on target.
  result.randomized = true;
  std::vector<uint64_t> order(p);
  while (result.nodes <= node_budget) {
    bool dead = false;
    for (size_t d = 0; d < count && !dead; ++d) {
      for (uint64_t v = 0; v < p; ++v) order[v] = v;
      for (uint64_t v = p - 1; v > 0; --v) {
        std::swap(order[v], order[rng.Uniform(v + 1)]);
      }
      dead = true;
      for (uint64_t v : order) {
        if (++result.nodes > node_budget) return result;
        draws[d] = v;
        if (satisfied(d + 1)) {
          dead = false;
          break;
        }
      }
    }
    if (!dead && outputs(draws) == target) {
      result.draws = draws;
      return result;
    }
  }
  return result;
}

absl::StatusOr<AttackWitness> AttackOneWayAmbiguity(
    const Protocol& protocol, const Field& field, size_t i, size_t j,
    size_t k, uint64_t m1, uint64_t m2, const AttackOptions& options) {
  const AdversaryStructure& a = protocol.structure();
  if (absl::Status s = CheckPairs(a, {i, j, k}); !s.ok()) return s;
  const WireSet& di = a.pair(i).disrupt;
  const WireSet& dj = a.pair(j).disrupt;
  if (absl::Status s =
          CheckCovers({di, dj, a.pair(k).listen}, a.n(), "D_i+D_j+L_k");
      !s.ok()) {
    return s;
  }
  absl::StatusOr<Tapes> zero = ZeroTapes(protocol, field);
  if (!zero.ok()) return zero.status();
  m1 = field.Reduce(m1);
  m2 = field.Reduce(m2);
  if (m1 == m2) {
    return Trivial(AttackKind::kOneWayAmbiguity, {i, j, k}, *zero, m1,
                   options.round_cap);
  }
  const Tapes c1 = *zero;
  const PhaseValues x1 = RunRecorded(protocol, field, m1, c1.sender,
                                     c1.receiver);
  // Outside D_i u D_j the two runs must agree; privacy on L_k says a
  // matching tape exists.
  const WireSet rest = (di | dj).Complement();
  std::vector<std::vector<size_t>> rest_slots;
  for (int ph = 0; ph < protocol.phase_count(); ++ph) {
    rest_slots.push_back(SlotsOn(protocol.phase(ph), rest));
  }
  DrawSearchResult found = SearchDraws(
      c1.sender.size(), field.modulus(),
      [&](const std::vector<uint64_t>& draws) {
        return Pick(RunRecorded(protocol, field, m2, draws, c1.receiver),
                    rest_slots);
      },
      Pick(x1, rest_slots), options.node_budget);
  if (!found.draws.has_value()) {
    return NoMatch(protocol, field, k, m1, m2, found, options);
  }
  const std::vector<uint64_t>& c2 = *found.draws;
  const PhaseValues x2 = RunRecorded(protocol, field, m2, c2, c1.receiver);

  AttackWitness w;
  w.kind = AttackKind::kOneWayAmbiguity;
  w.pairs = {i, j, k};
  w.round_cap = options.round_cap;
  w.search_nodes = found.nodes;
  w.randomized_search = found.randomized;
  // Possibility A: S sends m2, D_i shows what m1 would have sent.
  ScriptedExecution& ea = w.executions[0];
  ea = {m2, i, c2, c1.receiver, {}};
  // Possibility B: S sends m1, D_j \ D_i shows what m2 would have sent.
  ScriptedExecution& eb = w.executions[1];
  eb = {m1, j, c1.sender, c1.receiver, {}};
  for (int ph = 0; ph < protocol.phase_count(); ++ph) {
    ScriptPhase(protocol, ph, di, x1[ph], ea.script);
    ScriptPhase(protocol, ph, dj - di, x2[ph], eb.script);
  }
  return w;
}

absl::StatusOr<AttackWitness> AttackTwoWaySwap(const Protocol& protocol,
                                               const Field& field, size_t i,
                                               size_t j, uint64_t m1,
                                               uint64_t m2,
                                               const AttackOptions& options) {
  const AdversaryStructure& a = protocol.structure();
  if (absl::Status s = CheckPairs(a, {i, j}); !s.ok()) return s;
  const WireSet& di = a.pair(i).disrupt;
  const WireSet& dj = a.pair(j).disrupt;
  if (absl::Status s = CheckCovers({di, dj}, a.n(), "D_i+D_j"); !s.ok()) {
    return s;
  }
  // R's messages must not depend on anything it received.
  bool seen_sender = false;
  for (int ph = 0; ph < protocol.phase_count(); ++ph) {
    const bool to_receiver =
        protocol.phase(ph).direction == Direction::kSenderToReceiver;
    if (!to_receiver && seen_sender) {
      return absl::InvalidArgumentError(
          "swap attack needs every receiver phase before the sender's");
    }
    seen_sender = seen_sender || to_receiver;
  }
  absl::StatusOr<Tapes> zero = ZeroTapes(protocol, field);
  if (!zero.ok()) return zero.status();
  m1 = field.Reduce(m1);
  m2 = field.Reduce(m2);
  if (m1 == m2) {
    return Trivial(AttackKind::kTwoWaySwap, {i, j}, *zero, m1,
                   options.round_cap);
  }
  const PhaseValues alpha =
      RunRecorded(protocol, field, m1, zero->sender, zero->receiver);
  const PhaseValues beta =
      RunRecorded(protocol, field, m2, zero->sender, zero->receiver);
  AttackWitness w;
  w.kind = AttackKind::kTwoWaySwap;
  w.pairs = {i, j};
  w.round_cap = options.round_cap;
  w.executions[0] = {m1, i, zero->sender, zero->receiver, {}};
  w.executions[1] = {m2, j, zero->sender, zero->receiver, {}};
  for (int ph = 0; ph < protocol.phase_count(); ++ph) {
    if (protocol.phase(ph).direction != Direction::kSenderToReceiver) continue;
    ScriptPhase(protocol, ph, di, beta[ph], w.executions[0].script);
    ScriptPhase(protocol, ph, dj - di, alpha[ph], w.executions[1].script);
  }
  return w;
}

absl::StatusOr<AttackWitness> AttackTwoWayReplay(
    const Protocol& protocol, const Field& field, size_t i, size_t j,
    uint64_t m, uint64_t m2, const AttackOptions& options) {
  const AdversaryStructure& a = protocol.structure();
  if (absl::Status s = CheckPairs(a, {i, j}); !s.ok()) return s;
  const WireSet& di = a.pair(i).disrupt;
  const WireSet& lj = a.pair(j).listen;
  if (absl::Status s = CheckCovers({di, lj}, a.n(), "D_i+L_j"); !s.ok()) {
    return s;
  }
  absl::StatusOr<Tapes> zero = ZeroTapes(protocol, field);
  if (!zero.ok()) return zero.status();
  m = field.Reduce(m);
  m2 = field.Reduce(m2);
  if (m == m2) {
    return Trivial(AttackKind::kTwoWayReplay, {i, j}, *zero, m,
                   options.round_cap);
  }
  const PhaseValues alpha =
      RunRecorded(protocol, field, m, zero->sender, zero->receiver);
  std::vector<std::vector<size_t>> heard;
  for (int ph = 0; ph < protocol.phase_count(); ++ph) {
    heard.push_back(SlotsOn(protocol.phase(ph), lj - di));
  }
  const size_t ns = zero->sender.size();
  DrawSearchResult found = SearchDraws(
      ns + zero->receiver.size(), field.modulus(),
      [&](const std::vector<uint64_t>& d) {
        return Pick(RunRecorded(protocol, field, m2, {d.begin(), d.begin() + ns},
                                {d.begin() + ns, d.end()}),
                    heard);
      },
      Pick(alpha, heard), options.node_budget);
  if (!found.draws.has_value()) {
    return NoMatch(protocol, field, j, m, m2, found, options);
  }
  const std::vector<uint64_t> cs2(found.draws->begin(),
                                  found.draws->begin() + ns);
  const std::vector<uint64_t> cr2(found.draws->begin() + ns,
                                  found.draws->end());
  const PhaseValues beta = RunRecorded(protocol, field, m2, cs2, cr2);

  AttackWitness w;
  w.kind = AttackKind::kTwoWayReplay;
  w.pairs = {i, j};
  w.round_cap = options.round_cap;
  w.search_nodes = found.nodes;
  w.randomized_search = found.randomized;
  // S sends m with its own tape; R runs the m2 tape. D_i keeps S looking
  // at the m run and R looking at the m2 run.
  w.executions[0] = {m, i, zero->sender, cr2, {}};
  w.executions[1] = {m2, j, cs2, cr2, {}};
  for (int ph = 0; ph < protocol.phase_count(); ++ph) {
    const bool to_sender =
        protocol.phase(ph).direction == Direction::kReceiverToSender;
    ScriptPhase(protocol, ph, di, to_sender ? alpha[ph] : beta[ph],
                w.executions[0].script);
  }
  return w;
}

absl::StatusOr<AttackWitness> AttackTwoRoundNonCompletelyOblivious(
    const Protocol& protocol, const Field& field, size_t i, size_t j,
    uint64_t m, uint64_t m2, const AttackOptions& options) {
  const AdversaryStructure& a = protocol.structure();
  if (absl::Status s = CheckPairs(a, {i, j}); !s.ok()) return s;
  if (a.mode() == ObliviousnessMode::kCompletelyOblivious) {
    return absl::FailedPreconditionError(
        "this attack needs an adversary that hears its replacements");
  }
  const WireSet& di = a.pair(i).disrupt;
  const WireSet& dj = a.pair(j).disrupt;
  const WireSet& lj = a.pair(j).listen;
  if (absl::Status s = CheckCovers({di, dj, lj}, a.n(), "D_i+D_j+L_j");
      !s.ok()) {
    return s;
  }
  if (protocol.phase_count() != 2 ||
      protocol.phase(0).direction != Direction::kReceiverToSender ||
      protocol.phase(1).direction != Direction::kSenderToReceiver) {
    return absl::InvalidArgumentError(
        "attack needs a receiver phase followed by a sender phase");
  }
  absl::StatusOr<Tapes> zero = ZeroTapes(protocol, field);
  if (!zero.ok()) return zero.status();
  m = field.Reduce(m);
  m2 = field.Reduce(m2);
  if (m == m2) {
    return Trivial(AttackKind::kTwoRoundNonCompletelyOblivious, {i, j},
                   *zero, m, options.round_cap);
  }
  const WireSet alpha_w = di - lj;
  const WireSet beta_w = dj - (di | lj);
  const PhaseValues x =
      RunRecorded(protocol, field, m, zero->sender, zero->receiver);

  // The m2 run in which D_j \ (D_i u L_j) carries R's original round-1
  // values: it must look the same as the m run on L_j in both rounds.
  Overrides keep_beta(1, std::vector<std::optional<uint64_t>>(
                             protocol.phase(0).slots.size()));
  for (size_t s : SlotsOn(protocol.phase(0), beta_w)) keep_beta[0][s] = x[0][s];
  const std::vector<std::vector<size_t>> heard = {
      SlotsOn(protocol.phase(0), lj), SlotsOn(protocol.phase(1), lj)};
  const size_t ns = zero->sender.size();
  DrawSearchResult found = SearchDraws(
      ns + zero->receiver.size(), field.modulus(),
      [&](const std::vector<uint64_t>& d) {
        return Pick(RunRecorded(protocol, field, m2, {d.begin(), d.begin() + ns},
                                {d.begin() + ns, d.end()}, &keep_beta),
                    heard);
      },
      Pick(x, heard), options.node_budget);
  if (!found.draws.has_value()) {
    return NoMatch(protocol, field, j, m, m2, found, options);
  }
  const std::vector<uint64_t> cs2(found.draws->begin(),
                                  found.draws->begin() + ns);
  const std::vector<uint64_t> cr2(found.draws->begin() + ns,
                                  found.draws->end());
  const PhaseValues y =
      RunRecorded(protocol, field, m2, cs2, cr2, &keep_beta);

  AttackWitness w;
  w.kind = AttackKind::kTwoRoundNonCompletelyOblivious;
  w.pairs = {i, j};
  w.round_cap = options.round_cap;
  w.search_nodes = found.nodes;
  w.randomized_search = found.randomized;
  // Possibility A: pair i feeds S the primed round-1 values on
  // D_i \ L_j, S answers for m2, and R gets the m run's round 2 there.
  w.executions[0] = {m2, i, cs2, zero->receiver, {}};
  ScriptPhase(protocol, 0, alpha_w, y[0], w.executions[0].script);
  ScriptPhase(protocol, 1, alpha_w, x[1], w.executions[0].script);
  // Possibility B: pair j only touches round 2, with the m2 run's values.
  w.executions[1] = {m, j, zero->sender, zero->receiver, {}};
  ScriptPhase(protocol, 1, beta_w, y[1], w.executions[1].script);
  return w;
}

absl::StatusOr<AttackResult> AttackStructure(
    const AdversaryStructure& structure, Setting setting, const Field& field,
    uint64_t m1, uint64_t m2, const AttackOptions& options) {
  const FeasibilityReport report = CheckFeasibility(structure, setting);
  if (report.feasible) {
    return absl::FailedPreconditionError(absl::StrCat(
        "structure is feasible for ", std::string(SettingName(setting)),
        "; there is nothing to attack"));
  }
  const std::string& clause = report.witness->clause;
  AttackResult out;
  std::vector<size_t> p = report.witness->pairs;
  AdversaryStructure a = structure;
  if (structure.size() > 6) {
    // Too many pairs to plan for; the covering pairs alone still make the
    // structure infeasible.
    std::vector<AdversaryPair> kept;
    for (size_t& idx : p) {
      auto it = std::find(out.pair_map.begin(), out.pair_map.end(), idx);
      if (it == out.pair_map.end()) {
        out.pair_map.push_back(idx);
        kept.push_back(structure.pair(idx));
        idx = kept.size() - 1;
      } else {
        idx = it - out.pair_map.begin();
      }
    }
    absl::StatusOr<AdversaryStructure> cut =
        AdversaryStructure::Create(structure.n(), kept, structure.mode());
    if (!cut.ok()) return cut.status();
    a = *std::move(cut);
  } else {
    for (size_t idx = 0; idx < structure.size(); ++idx) {
      out.pair_map.push_back(idx);
    }
  }
  absl::StatusOr<AttackWitness> w;
  switch (setting) {
    case Setting::kOneWay: {
      auto plan = OneWayProtocol::Plan(a, {.force = true});
      if (!plan.ok()) return plan.status();
      out.protocol = *std::move(plan);
      w = AttackOneWayAmbiguity(*out.protocol, field, p[0], p[1], p[2], m1,
                                m2, options);
      break;
    }
    case Setting::kTwoWay: {
      auto plan = TwoWayProtocol::Plan(a, {.force = true});
      if (!plan.ok()) return plan.status();
      out.protocol = *std::move(plan);
      w = clause == "D_i+D_j"
              ? AttackTwoWaySwap(*out.protocol, field, p[0], p[1], m1, m2,
                                 options)
              : AttackTwoWayReplay(*out.protocol, field, p[0], p[1], m1, m2,
                                   options);
      break;
    }
    case Setting::kTwoRoundNonCompletelyOblivious: {
      if (a.mode() == ObliviousnessMode::kCompletelyOblivious) {
        a = a.WithMode(ObliviousnessMode::kOblivious);
      }
      auto plan =
          TwoWayProtocol::PlanNonCompletelyOblivious(a, {.force = true});
      if (!plan.ok()) return plan.status();
      out.protocol = *std::move(plan);
      w = AttackTwoRoundNonCompletelyOblivious(*out.protocol, field, p[0],
                                               p[1], m1, m2, options);
      break;
    }
  }
  if (!w.ok()) return w.status();
  out.witness = *std::move(w);
  return out;
}

absl::StatusOr<WitnessCheck> VerifyWitness(const Protocol& protocol,
                                           const Field& field,
                                           const AttackWitness& witness) {
  WitnessCheck check;
  std::array<std::string, 2> inputs;
  for (size_t e = 0; e < 2; ++e) {
    const ScriptedExecution& x = witness.executions[e];
    if (x.pair >= protocol.structure().size()) {
      return absl::InvalidArgumentError("witness names an unknown pair");
    }
    Adversary adv(protocol.structure(), x.pair,
                  ScriptedStrategy(x.script, /*keep_unlisted=*/true));
    FixedTape s(x.sender_tape), r(x.receiver_tape);
    absl::StatusOr<ExecutionOutcome> out =
        protocol.Run(field, x.message, s, r, &adv);
    if (!out.ok()) return out.status();
    nlohmann::ordered_json side;
    side["receiver_tape"] = x.receiver_tape;
    nlohmann::ordered_json in = nlohmann::ordered_json::array();
    for (const auto& t : out->transcript.ReceiverInputsJson()) {
      if (t["round"].get<int>() <= witness.round_cap) in.push_back(t);
    }
    side["inputs"] = std::move(in);
    inputs[e] = side.dump();
    check.outcomes[e] = *std::move(out);
  }
  check.receiver_inputs_identical = inputs[0] == inputs[1];
  check.messages_differ =
      witness.executions[0].message != witness.executions[1].message;
  if (witness.kind == AttackKind::kEavesdrop) {
    check.views_differ =
        PassiveLeak(protocol, field, witness.executions[0].pair,
                    witness.executions[0].message,
                    witness.executions[1].message)
            .has_value();
  }
  return check;
}

nlohmann::ordered_json WitnessToJson(const AttackWitness& witness,
                                     const WitnessCheck& check) {
  nlohmann::ordered_json j;
  j["attack"] = AttackName(witness.kind);
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (size_t p : witness.pairs) pairs.push_back(p + 1);
  j["pairs"] = std::move(pairs);
  j["messages"] = {witness.executions[0].message,
                   witness.executions[1].message};
  j["round_cap"] = witness.round_cap;
  j["search"] = witness.randomized_search ? "seeded_restarts" : "lexicographic";
  j["search_nodes"] = witness.search_nodes;
  j["receiver_inputs_identical"] = check.receiver_inputs_identical;
  j["messages_differ"] = check.messages_differ;
  if (witness.kind == AttackKind::kEavesdrop) {
    j["views_differ"] = check.views_differ;
  }
  j["verified"] = check.ok();
  nlohmann::ordered_json execs = nlohmann::ordered_json::array();
  for (size_t e = 0; e < 2; ++e) {
    const ScriptedExecution& x = witness.executions[e];
    const ExecutionOutcome& out = check.outcomes[e];
    nlohmann::ordered_json ej;
    ej["message"] = x.message;
    ej["pair_index"] = x.pair + 1;
    ej["sender_tape"] = x.sender_tape;
    ej["receiver_tape"] = x.receiver_tape;
    nlohmann::ordered_json script = nlohmann::ordered_json::array();
    for (const auto& [key, value] : x.script) {
      script.push_back(
          {{"round", key.first}, {"slot", key.second}, {"value", value}});
    }
    ej["script"] = std::move(script);
    ej["decoded"] = out.decoded.has_value()
                        ? nlohmann::ordered_json(*out.decoded)
                        : nlohmann::ordered_json(nullptr);
    if (!out.failure.empty()) ej["failure"] = out.failure;
    ej["transcript"] = out.transcript.ToJson();
    execs.push_back(std::move(ej));
  }
  j["executions"] = std::move(execs);
  return j;
}

}  // namespace smt
