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

#include "smt/verification.h"

#include <algorithm>
#include <limits>
#include <map>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "smt/feasibility.h"
#include "smt/twoway_privacy.h"

namespace smt {
namespace {

constexpr size_t kMaxRecordedFailures = 16;
constexpr uint64_t kNoValue = std::numeric_limits<uint64_t>::max();

std::vector<uint64_t> DefaultMessages(const Field& field) {
  const uint64_t p = field.modulus();
  if (p <= 16) {
    std::vector<uint64_t> all(p);
    for (uint64_t v = 0; v < p; ++v) all[v] = v;
    return all;
  }
  return {0, 1, 2, p - 1, 123456789 % p};
}

// One write applied by the tamper channel.
struct Write {
  size_t slot;
  Disruption::Kind kind;  // kAdd or kNoiseAs
  uint64_t value;
};

// Applies fixed writes per phase, counting phases by call order.
class TamperChannel : public PhaseChannel {
 public:
  TamperChannel(const Field& field,
                const std::vector<std::vector<Write>>& writes)
      : field_(field), writes_(writes) {}

  absl::StatusOr<std::vector<uint64_t>> Exchange(
      int, const PhaseLayout&, std::span<const uint64_t> sent) override {
    std::vector<uint64_t> out(sent.begin(), sent.end());
    if (phase_ < writes_.size()) {
      for (const Write& w : writes_[phase_]) {
        out[w.slot] = w.kind == Disruption::Kind::kAdd
                          ? field_.Add(sent[w.slot], w.value)
                          : w.value;
      }
    }
    ++phase_;
    return out;
  }

 private:
  const Field& field_;
  const std::vector<std::vector<Write>>& writes_;
  size_t phase_ = 0;
};

// A set of slots disrupted together, with the alternatives tried for them.
// choices[c] has one write per slot of the unit (kKeep for untouched).
struct Unit {
  int phase;
  std::vector<size_t> slots;
  std::vector<std::vector<Disruption>> choices;
};

struct Sweep {
  std::vector<Unit> units;
  bool exact = true;  // covers every outcome the receiver can see

  uint64_t Count() const {
    uint64_t c = 1;
    for (const Unit& u : units) {
      if (c > std::numeric_limits<uint64_t>::max() / u.choices.size()) {
        return std::numeric_limits<uint64_t>::max();
      }
      c *= u.choices.size();
    }
    return c;
  }
};

std::vector<Disruption> SlotAlphabet(const Field& field) {
  std::vector<Disruption> out;
  if (field.modulus() <= 5) {
    for (uint64_t d = 0; d < field.modulus(); ++d) {
      out.push_back({Disruption::Kind::kAdd, d});
    }
  } else {
    out = {{Disruption::Kind::kKeep, 0},
           {Disruption::Kind::kNoiseAs, 0},
           {Disruption::Kind::kNoiseAs, 1},
           {Disruption::Kind::kAdd, 1}};
  }
  return out;
}

bool Disrupted(const PhaseLayout& layout, size_t s, const WireSet& d) {
  return d.Contains(layout.slots[s].wire);
}

Sweep SlotSweep(const Protocol& protocol, const Field& field,
                const WireSet& disrupt) {
  Sweep sweep;
  const std::vector<Disruption> alphabet = SlotAlphabet(field);
  for (int ph = 0; ph < protocol.phase_count(); ++ph) {
    const PhaseLayout& layout = protocol.phase(ph);
    for (size_t s = 0; s < layout.slots.size(); ++s) {
      if (!Disrupted(layout, s, disrupt)) continue;
      Unit u{ph, {s}, {}};
      for (const Disruption& d : alphabet) u.choices.push_back({d});
      sweep.units.push_back(std::move(u));
    }
  }
  sweep.exact = field.modulus() <= 5;
  return sweep;
}

// The recipient only ever uses group aggregates: sums of additive groups,
// values of single slots, majorities of public groups. Enumerating the
// aggregate each group can take is therefore exhaustive.
Sweep GroupSweep(const Protocol& protocol, const Field& field,
                 const WireSet& disrupt) {
  Sweep sweep;
  const uint64_t p = field.modulus();
  for (int ph = 0; ph < protocol.phase_count(); ++ph) {
    const PhaseLayout& layout = protocol.phase(ph);
    for (size_t g = 0; g < layout.groups.size(); ++g) {
      std::vector<size_t> touched;
      for (size_t s : layout.group_slots[g]) {
        if (Disrupted(layout, s, disrupt)) touched.push_back(s);
      }
      if (touched.empty()) continue;
      Unit u{ph, touched, {}};
      const size_t copies = layout.group_slots[g].size();
      if (layout.groups[g] != GroupKind::kPublic) {
        for (uint64_t d = 0; d < p; ++d) {
          std::vector<Disruption> c(touched.size());
          c[0] = {Disruption::Kind::kAdd, d};
          u.choices.push_back(std::move(c));
        }
      } else if (2 * touched.size() < copies) {
        // The untouched copies keep the majority; one pattern suffices.
        u.choices.push_back(std::vector<Disruption>(
            touched.size(), Disruption{Disruption::Kind::kAdd, 1}));
      } else {
        for (uint64_t v = 0; v < p; ++v) {
          u.choices.push_back(std::vector<Disruption>(
              touched.size(), Disruption{Disruption::Kind::kNoiseAs, v}));
        }
        sweep.exact = false;  // split votes are not covered
      }
      sweep.units.push_back(std::move(u));
    }
  }
  return sweep;
}

std::vector<std::vector<Write>> WritesFor(const Protocol& protocol,
                                          const Sweep& sweep,
                                          std::span<const size_t> pick) {
  std::vector<std::vector<Write>> writes(protocol.phase_count());
  for (size_t i = 0; i < sweep.units.size(); ++i) {
    const Unit& u = sweep.units[i];
    const std::vector<Disruption>& c = u.choices[pick[i]];
    for (size_t k = 0; k < u.slots.size(); ++k) {
      if (c[k].kind == Disruption::Kind::kKeep) continue;
      if (c[k].kind == Disruption::Kind::kAdd && c[k].value == 0) continue;
      writes[u.phase].push_back({u.slots[k], c[k].kind, c[k].value});
    }
  }
  return writes;
}

std::string DescribeWrites(const Protocol& protocol,
                           const std::vector<std::vector<Write>>& writes) {
  std::vector<std::string> parts;
  for (size_t ph = 0; ph < writes.size(); ++ph) {
    const PhaseLayout& layout = protocol.phase(static_cast<int>(ph));
    for (const Write& w : writes[ph]) {
      parts.push_back(absl::StrCat(
          "phase", ph + 1, ":", layout.slots[w.slot].id.ToString(), "@w",
          layout.slots[w.slot].wire + 1,
          w.kind == Disruption::Kind::kAdd ? "+=" : "=", w.value));
    }
  }
  return parts.empty() ? "none" : absl::StrJoin(parts, ",");
}

uint64_t SeedFor(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  return SplitMix64Mix(SplitMix64Mix(SplitMix64Mix(seed ^ a) ^ b) ^ c);
}

struct RunResult {
  bool ok;
  std::string detail;
};

RunResult RunOnce(const Protocol& protocol, const Field& field, uint64_t m,
                  RandomTape& sender, RandomTape& receiver,
                  const std::vector<std::vector<Write>>& writes) {
  TamperChannel channel(field, writes);
  absl::StatusOr<ExecutionOutcome> out =
      protocol.Execute(field, m, sender, receiver, channel);
  if (!out.ok()) return {false, out.status().ToString()};
  if (!out->decoded.has_value()) return {false, out->failure};
  if (*out->decoded != m) {
    return {false, absl::StrCat("decoded ", *out->decoded)};
  }
  return {true, ""};
}

void Record(ReliabilityReport& report, uint64_t m, size_t pair,
            std::string assignment, std::string detail) {
  ++report.failure_count;
  if (report.failures.size() < kMaxRecordedFailures) {
    report.failures.push_back(
        {m, pair, std::move(assignment), std::move(detail)});
  }
}

// Draws recorded once and replayed for every assignment of one
// (message, pair) so that only the disruption varies.
struct FrozenTapes {
  std::vector<uint64_t> sender;
  std::vector<uint64_t> receiver;
};

FrozenTapes Freeze(const Protocol& protocol, const Field& field, uint64_t m,
                   uint64_t seed) {
  SeededTape s(seed), r(seed ^ 0x9e3779b97f4a7c15ULL);
  RecordingTape rs(s), rr(r);
  PerfectChannel channel;
  (void)protocol.Execute(field, m, rs, rr, channel);
  FrozenTapes out;
  for (const auto& e : rs.entries()) out.sender.push_back(e.value);
  for (const auto& e : rr.entries()) out.receiver.push_back(e.value);
  return out;
}

void RunSweep(const Protocol& protocol, const Field& field,
              const std::vector<uint64_t>& messages, size_t pair,
              const Sweep& sweep, uint64_t seed, ReliabilityReport& report) {
  for (uint64_t m : messages) {
    const FrozenTapes tapes = Freeze(protocol, field, m, SeedFor(seed, m, pair, 0));
    std::vector<size_t> pick(sweep.units.size(), 0);
    while (true) {
      std::vector<std::vector<Write>> writes = WritesFor(protocol, sweep, pick);
      FixedTape s(tapes.sender), r(tapes.receiver);
      RunResult res = RunOnce(protocol, field, m, s, r, writes);
      ++report.trials;
      if (!res.ok) {
        Record(report, m, pair, DescribeWrites(protocol, writes), res.detail);
      }
      size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < sweep.units[i].choices.size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
  }
}

void RunRandom(const Protocol& protocol, const Field& field,
               const std::vector<uint64_t>& messages, uint64_t trials,
               uint64_t seed, ReliabilityReport& report) {
  const AdversaryStructure& a = protocol.structure();
  SplitMix64 rng(SplitMix64Mix(seed ^ 0x72656c69ULL));
  for (uint64_t t = 0; t < trials; ++t) {
    const uint64_t m = messages[t % messages.size()];
    const size_t pair = (t / messages.size()) % a.size();
    const WireSet& d = a.pair(pair).disrupt;
    std::vector<std::vector<Write>> writes(protocol.phase_count());
    for (int ph = 0; ph < protocol.phase_count(); ++ph) {
      const PhaseLayout& layout = protocol.phase(ph);
      for (size_t s = 0; s < layout.slots.size(); ++s) {
        if (!Disrupted(layout, s, d)) continue;
        switch (rng.Uniform(4)) {
          case 0:
            break;
          case 1:
            writes[ph].push_back({s, Disruption::Kind::kNoiseAs,
                                  rng.Uniform(field.modulus())});
            break;
          case 2:
            writes[ph].push_back({s, Disruption::Kind::kAdd, 1});
            break;
          default:
            writes[ph].push_back({s, Disruption::Kind::kNoiseAs, 0});
        }
      }
    }
    SeededTape s(SeedFor(seed, t, 1, 0)), r(SeedFor(seed, t, 2, 0));
    RunResult res = RunOnce(protocol, field, m, s, r, writes);
    ++report.trials;
    if (!res.ok) {
      Record(report, m, pair, DescribeWrites(protocol, writes), res.detail);
    }
  }
}

}  // namespace

ReliabilityReport VerifyReliability(const Protocol& protocol,
                                    const Field& field,
                                    const ReliabilityOptions& options) {
  ReliabilityReport report;
  const std::vector<uint64_t> messages =
      options.messages.empty() ? DefaultMessages(field) : options.messages;
  const AdversaryStructure& a = protocol.structure();
  if (field.modulus() < protocol.min_modulus()) {
    report.method = "none";
    Record(report, 0, 0, "none",
           absl::StrCat("modulus ", field.modulus(), " below ",
                        protocol.min_modulus()));
    return report;
  }

  std::vector<Sweep> slot_sweeps, group_sweeps;
  uint64_t slot_total = 0, group_total = 0;
  auto add = [](uint64_t x, uint64_t y) {
    return x > std::numeric_limits<uint64_t>::max() - y
               ? std::numeric_limits<uint64_t>::max()
               : x + y;
  };
  for (size_t c = 0; c < a.size(); ++c) {
    slot_sweeps.push_back(SlotSweep(protocol, field, a.pair(c).disrupt));
    group_sweeps.push_back(field.modulus() <= 16
                               ? GroupSweep(protocol, field, a.pair(c).disrupt)
                               : Sweep{{}, false});
    for (size_t i = 0; i < messages.size(); ++i) {
      slot_total = add(slot_total, slot_sweeps.back().Count());
      group_total = add(group_total, group_sweeps.back().exact
                                         ? group_sweeps.back().Count()
                                         : std::numeric_limits<uint64_t>::max());
    }
  }

  const std::vector<Sweep>* chosen = nullptr;
  if (slot_total <= options.budget) {
    chosen = &slot_sweeps;
    report.method = "slots";
  } else if (field.modulus() <= 16 && group_total <= options.budget) {
    chosen = &group_sweeps;
    report.method = "groups";
  }
  if (chosen == nullptr) {
    report.method = "random";
    if (a.size() > 0) {
      RunRandom(protocol, field, messages, options.random_trials,
                options.seed, report);
    }
    return report;
  }
  bool exact = true;
  for (size_t c = 0; c < a.size(); ++c) {
    exact = exact && (*chosen)[c].exact;
    RunSweep(protocol, field, messages, c, (*chosen)[c], options.seed,
             report);
  }
  report.exhaustive = exact && field.modulus() <= 5;
  return report;
}

nlohmann::ordered_json ReliabilityToJson(const ReliabilityReport& report) {
  nlohmann::ordered_json j;
  j["kind"] = "reliability";
  j["ok"] = report.ok();
  j["method"] = report.method;
  j["exhaustive"] = report.exhaustive;
  j["trials"] = report.trials;
  j["failure_count"] = report.failure_count;
  nlohmann::ordered_json fails = nlohmann::ordered_json::array();
  for (const ReliabilityFailure& f : report.failures) {
    fails.push_back({{"message", f.message},
                     {"pair_index", f.pair + 1},
                     {"assignment", f.assignment},
                     {"detail", f.detail}});
  }
  j["failures"] = std::move(fails);
  return j;
}

// ---- Privacy ----

namespace {

class BatteryRunner : public Strategy {
 public:
  explicit BatteryRunner(BatteryEntry entry) : entry_(std::move(entry)) {}

  Disruption Decide(const SlotContext& ctx, const AdversaryView&) override {
    switch (ctx.listened ? entry_.listened : entry_.unheard) {
      case SlotRule::kKeep:
        return {};
      case SlotRule::kNoise:
        return {Disruption::Kind::kNoise, 0};
      case SlotRule::kAddOne:
        return {Disruption::Kind::kAdd, 1};
      case SlotRule::kZero:
        return {Disruption::Kind::kReplace, 0};
    }
    return {};
  }
  std::string name() const override { return entry_.name; }

 private:
  BatteryEntry entry_;
};

// Feeds every phase through the adversary without keeping a transcript.
class InterceptChannel : public PhaseChannel {
 public:
  InterceptChannel(const Field& field, Adversary& adversary)
      : field_(field), adversary_(adversary) {}
  absl::StatusOr<std::vector<uint64_t>> Exchange(
      int round, const PhaseLayout& layout,
      std::span<const uint64_t> sent) override {
    return adversary_.Intercept(field_, round, layout, sent);
  }

 private:
  const Field& field_;
  Adversary& adversary_;
};

using ViewKey = std::vector<uint64_t>;

ViewKey KeyOf(const AdversaryView& view) {
  ViewKey key;
  key.reserve(view.observations().size() * 2);
  for (const Observation& o : view.observations()) {
    key.push_back(o.sent.value_or(kNoValue));
    key.push_back(o.delivered.value_or(kNoValue));
  }
  return key;
}

// Receiver tape with some draws pinned; the others come from `free`.
class PinnedTape : public RandomTape {
 public:
  PinnedTape(const std::map<size_t, uint64_t>& pins,
             std::vector<uint64_t> free)
      : pins_(pins), free_(std::move(free)) {}
  uint64_t Draw(const Field& field, std::span<const uint8_t> path,
                std::string_view label) override {
    auto it = pins_.find(next_++);
    if (it != pins_.end()) return field.Reduce(it->second);
    return free_.Draw(field, path, label);
  }

 private:
  const std::map<size_t, uint64_t>& pins_;
  FixedTape free_;
  size_t next_ = 0;
};

bool UsesNoise(const BatteryEntry& e) {
  return e.listened == SlotRule::kNoise || e.unheard == SlotRule::kNoise;
}

std::vector<size_t> PairsToCheck(const AdversaryStructure& a,
                                 const PrivacyOptions& options) {
  if (!options.pairs.empty()) return options.pairs;
  std::vector<size_t> all(a.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

}  // namespace

std::unique_ptr<Strategy> BatteryStrategy(const BatteryEntry& entry) {
  return std::make_unique<BatteryRunner>(entry);
}

std::vector<BatteryEntry> DefaultBattery(ObliviousnessMode mode,
                                         bool include_noise) {
  using R = SlotRule;
  std::vector<BatteryEntry> out = {
      {"passive", R::kKeep, R::kKeep},
      {"offset_heard", R::kAddOne, R::kKeep},
      {"zero_heard", R::kZero, R::kKeep},
  };
  if (include_noise) {
    out.push_back({"noise", R::kNoise, R::kNoise});
    out.push_back({"offset_heard_noise_unheard", R::kAddOne, R::kNoise});
  }
  if (mode != ObliviousnessMode::kCompletelyOblivious) {
    out.push_back({"zero_all", R::kZero, R::kZero});
  }
  return out;
}

bool PrivacyReport::ok() const {
  return !refused && first_violation() == nullptr;
}

const PrivacyVerdict* PrivacyReport::first_violation() const {
  for (const PrivacyVerdict& v : verdicts) {
    if (!v.equal) return &v;
  }
  return nullptr;
}

absl::StatusOr<TapeShape> MeasureTapes(const Protocol& protocol,
                                       const Field& field) {
  FixedTape s({}), r({});
  PerfectChannel channel;
  absl::StatusOr<ExecutionOutcome> out =
      protocol.Execute(field, 0, s, r, channel);
  if (!out.ok()) return out.status();
  return TapeShape{s.overrun(), r.overrun()};
}

PrivacyReport VerifyPrivacyByEnumeration(const Protocol& protocol,
                                         const Field& field,
                                         const PrivacyOptions& options) {
  PrivacyReport report;
  const AdversaryStructure a =
      protocol.structure().WithMode(options.mode.value_or(
          protocol.structure().mode()));
  const std::vector<BatteryEntry> battery =
      options.battery.empty() ? DefaultBattery(a.mode(), false)
                              : options.battery;
  for (const BatteryEntry& e : battery) {
    if (UsesNoise(e)) {
      report.refused = true;
      report.refusal = absl::StrCat("battery entry ", e.name,
                                    " uses noise, which tape enumeration "
                                    "cannot enumerate");
      return report;
    }
  }
  const std::vector<uint64_t> messages =
      options.messages.empty() ? DefaultMessages(field) : options.messages;
  if (field.modulus() < protocol.min_modulus()) {
    report.refused = true;
    report.refusal = absl::StrCat("modulus ", field.modulus(), " below ",
                                  protocol.min_modulus());
    return report;
  }
  absl::StatusOr<TapeShape> shape = MeasureTapes(protocol, field);
  if (!shape.ok()) {
    report.refused = true;
    report.refusal = shape.status().ToString();
    return report;
  }
  size_t pinned = 0;
  for (const auto& [index, value] : options.receiver_pins) {
    if (index < shape->receiver) ++pinned;
  }
  const size_t free_receiver = shape->receiver - pinned;
  const size_t draws = shape->sender + free_receiver;
  const std::vector<size_t> pairs = PairsToCheck(a, options);

  // p^draws tapes per message, pair and strategy.
  long double total = messages.size() * pairs.size() * battery.size();
  for (size_t i = 0; i < draws; ++i) total *= field.modulus();
  if (total > static_cast<long double>(options.budget)) {
    report.refused = true;
    report.refusal = absl::StrCat(
        "tape enumeration needs ", field.modulus(), "^", draws, " x ",
        messages.size() * pairs.size() * battery.size(),
        " executions, above the budget of ", options.budget);
    return report;
  }
  uint64_t tapes = 1;
  for (size_t i = 0; i < draws; ++i) tapes *= field.modulus();

  for (size_t c : pairs) {
    for (const BatteryEntry& entry : battery) {
      PrivacyVerdict verdict{c, entry.name, true, std::nullopt, 0,
                             "tape-enumeration"};
      std::map<ViewKey, uint64_t> first;
      for (size_t mi = 0; mi < messages.size() && verdict.equal; ++mi) {
        std::map<ViewKey, uint64_t> counts;
        std::vector<uint64_t> digits(draws, 0);
        for (uint64_t t = 0; t < tapes; ++t) {
          uint64_t x = t;
          for (size_t i = 0; i < draws; ++i) {
            digits[i] = x % field.modulus();
            x /= field.modulus();
          }
          FixedTape st({digits.begin(), digits.begin() + shape->sender});
          PinnedTape rt(options.receiver_pins,
                        {digits.begin() + shape->sender, digits.end()});
          Adversary adv(a, c, BatteryStrategy(entry));
          InterceptChannel channel(field, adv);
          absl::StatusOr<ExecutionOutcome> out =
              protocol.Execute(field, messages[mi], st, rt, channel);
          ++report.executions;
          if (!out.ok()) {
            report.refused = true;
            report.refusal = absl::StrCat("pair ", c + 1, ", ", entry.name,
                                          ": ", out.status().ToString());
            return report;
          }
          ++counts[KeyOf(adv.view())];
        }
        if (mi == 0) {
          first = std::move(counts);
          verdict.distinct_views = first.size();
        } else if (counts != first) {
          verdict.equal = false;
          verdict.differing = std::make_pair(messages[0], messages[mi]);
        }
      }
      report.verdicts.push_back(std::move(verdict));
    }
  }
  return report;
}

PrivacyReport VerifyPrivacy(const Protocol& protocol, const Field& field,
                            const PrivacyOptions& options) {
  if (const auto* tw = dynamic_cast<const TwoWayProtocol*>(&protocol);
      tw != nullptr && tw->leaves().size() == 1) {
    return VerifyTwoWayPrivacyFactored(*tw, field, options);
  }
  return VerifyPrivacyByEnumeration(protocol, field, options);
}

nlohmann::ordered_json PrivacyToJson(const PrivacyReport& report) {
  nlohmann::ordered_json j;
  j["kind"] = "privacy";
  j["ok"] = report.ok();
  j["refused"] = report.refused;
  if (report.refused) j["refusal"] = report.refusal;
  j["executions"] = report.executions;
  nlohmann::ordered_json vs = nlohmann::ordered_json::array();
  for (const PrivacyVerdict& v : report.verdicts) {
    nlohmann::ordered_json e;
    e["pair_index"] = v.pair + 1;
    e["strategy"] = v.strategy;
    e["engine"] = v.engine;
    e["verdict"] = v.equal ? "equal" : "differs";
    if (v.differing.has_value()) {
      e["differing_messages"] = {v.differing->first, v.differing->second};
    }
    e["distinct_views"] = v.distinct_views;
    vs.push_back(std::move(e));
  }
  j["verdicts"] = std::move(vs);
  return j;
}

// ---- Feasibility cross-validation ----

namespace {

bool AnyUnionCovers(const std::vector<WireSet>& sets, int n, int arity) {
  const uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
  const size_t s = sets.size();
  for (size_t i = 0; i < s; ++i) {
    if (arity == 1 && sets[i].mask() == full) return true;
    for (size_t j = i; j < s && arity >= 2; ++j) {
      const uint32_t ij = sets[i].mask() | sets[j].mask();
      if (arity == 2 && ij == full) return true;
      for (size_t k = j; k < s && arity == 3; ++k) {
        if ((ij | sets[k].mask()) == full) return true;
      }
    }
  }
  return false;
}

void AddEntry(CrossCheckReport& report, CrossCheckEntry e) {
  if (!e.agree()) ++report.disagreements;
  report.entries.push_back(std::move(e));
}

}  // namespace

CrossCheckCorpus DefaultCrossCheckCorpus() {
  CrossCheckCorpus corpus;
  const std::vector<std::vector<int>> sets = {{1, 2, 3}, {1, 2, 4}, {1, 5}};
  for (int n = 5; n <= 7; ++n) {
    // Every non-empty sub-family of the three sets.
    for (uint32_t pick = 1; pick < 8; ++pick) {
      std::vector<WireSet> family;
      for (size_t i = 0; i < 3; ++i) {
        if ((pick >> i) & 1u) {
          family.push_back(*WireSet::FromOneBased(n, sets[i]));
        }
      }
      corpus.general.push_back({n, std::move(family)});
    }
  }
  return corpus;
}

CrossCheckReport CrossValidateFeasibility(const CrossCheckCorpus& corpus) {
  CrossCheckReport report;
  for (int n = 1; n <= corpus.threshold_max_n; ++n) {
    for (int k = 0; k <= n; ++k) {
      AdversaryStructure a = *ThresholdStructure(n, k);
      const std::string name = absl::StrCat("threshold n=", n, " k=", k);
      AddEntry(report, {"threshold", name, "oneway",
                        FeasibleOneWay(a).feasible,
                        FeasibleClassic(ClassicCondition::kThresholdOneWay,
                                        n, k)});
      AddEntry(report, {"threshold", name, "twoway",
                        FeasibleTwoWay(a).feasible,
                        FeasibleClassic(ClassicCondition::kThresholdTwoWay,
                                        n, k)});
    }
  }
  for (int n = 1; n <= corpus.dl_max_n; ++n) {
    for (int d = 0; d <= n; ++d) {
      for (int l = 0; l <= n; ++l) {
        AdversaryStructure a = *DlStructure(n, d, l);
        const std::string name =
            absl::StrCat("dl n=", n, " d=", d, " l=", l);
        AddEntry(report, {"dl", name, "oneway", FeasibleOneWay(a).feasible,
                          FeasibleClassic(ClassicCondition::kDlOneWay, n, d,
                                          l)});
        AddEntry(report, {"dl", name, "twoway", FeasibleTwoWay(a).feasible,
                          FeasibleClassic(ClassicCondition::kDlTwoWay, n, d,
                                          l)});
      }
    }
  }
  for (const auto& [n, sets] : corpus.general) {
    absl::StatusOr<AdversaryStructure> a = GeneralStructure(n, sets);
    if (!a.ok()) continue;
    std::vector<std::string> names;
    for (const WireSet& s : sets) names.push_back(s.ToString());
    const std::string name =
        absl::StrCat("general n=", n, " ", absl::StrJoin(names, ""));
    AddEntry(report, {"general", name, "oneway", FeasibleOneWay(*a).feasible,
                      !AnyUnionCovers(sets, n, 3)});
    AddEntry(report, {"general", name, "twoway", FeasibleTwoWay(*a).feasible,
                      !AnyUnionCovers(sets, n, 2)});
  }
  return report;
}

nlohmann::ordered_json CrossCheckToJson(const CrossCheckReport& report) {
  nlohmann::ordered_json j;
  j["kind"] = "crossvalidate";
  j["ok"] = report.ok();
  j["entries"] = report.entries.size();
  j["disagreements"] = report.disagreements;
  nlohmann::ordered_json bad = nlohmann::ordered_json::array();
  for (const CrossCheckEntry& e : report.entries) {
    if (e.agree()) continue;
    bad.push_back({{"structure", e.name},
                   {"setting", e.setting},
                   {"structural", e.structural},
                   {"closed_form", e.closed_form}});
  }
  j["disagreeing"] = std::move(bad);
  return j;
}

}  // namespace smt
