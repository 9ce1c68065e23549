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

#include "smt/transport.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace smt {

std::string_view DirectionName(Direction d) {
  return d == Direction::kSenderToReceiver ? "S->R" : "R->S";
}

std::string SlotId::ToString() const {
  return absl::StrCat(PathString(path), "/", tag);
}

int PhaseLayout::AddGroup(GroupKind kind) {
  groups.push_back(kind);
  group_slots.emplace_back();
  return static_cast<int>(groups.size()) - 1;
}

size_t PhaseLayout::AddSlot(int wire, SlotId id, int group) {
  if (group < 0 || group >= static_cast<int>(groups.size())) {
    throw std::invalid_argument("AddSlot: unknown group");
  }
  slots.push_back(SlotSpec{wire, std::move(id), group});
  group_slots[group].push_back(slots.size() - 1);
  return slots.size() - 1;
}

int PhaseLayout::AddPublic(std::span<const int> wires,
                           const ProtocolPath& path, const std::string& tag) {
  int g = AddGroup(GroupKind::kPublic);
  for (size_t c = 0; c < wires.size(); ++c) {
    AddSlot(wires[c], SlotId{path, absl::StrCat(tag, "#", c + 1)}, g);
  }
  return g;
}

absl::StatusOr<uint64_t> MajorityOf(std::span<const uint64_t> copies) {
  for (uint64_t v : copies) {
    size_t count = std::count(copies.begin(), copies.end(), v);
    if (2 * count > copies.size()) return v;
  }
  return absl::FailedPreconditionError(
      "public send: no majority among copies");
}

size_t AdversaryView::Add(Observation o) {
  index_[{o.round, o.slot}] = obs_.size();
  obs_.push_back(std::move(o));
  return obs_.size() - 1;
}

void AdversaryView::SetDelivered(size_t index, uint64_t value) {
  obs_.at(index).delivered = value;
}

absl::StatusOr<uint64_t> AdversaryView::Sent(int round,
                                             const std::string& slot) const {
  auto it = index_.find({round, slot});
  if (it == index_.end() || !obs_[it->second].sent.has_value()) {
    return absl::PermissionDeniedError(
        absl::StrCat("illegal eavesdrop: round ", round, " slot ", slot));
  }
  return *obs_[it->second].sent;
}

Adversary::Adversary(const AdversaryStructure& structure, size_t pair_index,
                     std::unique_ptr<Strategy> strategy, uint64_t noise_seed)
    : pair_index_(pair_index),
      pair_(structure.pair(pair_index)),
      mode_(structure.mode()),
      strategy_(std::move(strategy)),
      noise_(DeriveStream(noise_seed, {}, "adversary-noise")) {}

absl::StatusOr<std::vector<uint64_t>> Adversary::Intercept(
    const Field& field, int round, const PhaseLayout& layout,
    std::span<const uint64_t> sent) {
  if (absl::Status s = strategy_->CheckTargets(round, layout, pair_.disrupt);
      !s.ok()) {
    return s;
  }
  const bool hears_original = mode_ == ObliviousnessMode::kNonOblivious;
  const bool hears_new = mode_ != ObliviousnessMode::kCompletelyOblivious;
  std::vector<uint64_t> delivered(sent.begin(), sent.end());
  std::vector<std::optional<size_t>> obs_index(sent.size());
  // Slots that now carry a value the adversary chose or drew itself.
  std::vector<bool> wrote(sent.size(), false);

  // Rushing: everything heard this phase is known before any write.
  for (size_t s = 0; s < sent.size(); ++s) {
    int w = layout.slots[s].wire;
    bool listened = pair_.listen.Contains(w);
    bool disrupted = pair_.disrupt.Contains(w);
    if (listened || (disrupted && hears_original)) {
      obs_index[s] = view_.Add(Observation{round, layout.direction, w,
                                           layout.slots[s].id.ToString(),
                                           sent[s], std::nullopt});
    }
  }
  for (size_t s = 0; s < sent.size(); ++s) {
    int w = layout.slots[s].wire;
    if (!pair_.disrupt.Contains(w)) continue;
    bool listened = pair_.listen.Contains(w);
    Disruption d = strategy_->Decide(SlotContext{round, layout, s, listened},
                                     view_);
    switch (d.kind) {
      case Disruption::Kind::kKeep:
        break;
      case Disruption::Kind::kReplace:
        if (!listened && !hears_new) {
          return absl::FailedPreconditionError(absl::StrCat(
              "illegal disruption: chosen value on unheard wire ", w + 1,
              " by a completely oblivious adversary"));
        }
        delivered[s] = field.Reduce(d.value);
        wrote[s] = true;
        break;
      case Disruption::Kind::kAdd:
        // Hearing sent + delta would reveal the unheard original.
        if (!listened && hears_new && !hears_original) {
          return absl::FailedPreconditionError(absl::StrCat(
              "illegal disruption: offset on unheard wire ", w + 1,
              " by an adversary that hears replacements"));
        }
        delivered[s] = field.Add(sent[s], field.Reduce(d.value));
        break;
      case Disruption::Kind::kNoise:
        delivered[s] = noise_.Uniform(field.modulus());
        wrote[s] = true;
        break;
      case Disruption::Kind::kNoiseAs:
        delivered[s] = field.Reduce(d.value);
        wrote[s] = true;
        break;
    }
  }
  for (size_t s = 0; s < sent.size(); ++s) {
    int w = layout.slots[s].wire;
    // A slot let through untouched shows nothing new: the adversary only
    // hears replacements it made.
    bool visible = pair_.listen.Contains(w) ||
                   (pair_.disrupt.Contains(w) &&
                    (hears_original || (hears_new && wrote[s])));
    if (!visible) continue;
    if (obs_index[s].has_value()) {
      view_.SetDelivered(*obs_index[s], delivered[s]);
    } else {
      view_.Add(Observation{round, layout.direction, w,
                            layout.slots[s].id.ToString(), std::nullopt,
                            delivered[s]});
    }
  }
  return delivered;
}

int Transcript::phases() const {
  int max_round = 0;
  for (const Transmission& t : transmissions) {
    max_round = std::max(max_round, t.round);
  }
  return max_round;
}

std::vector<uint64_t> Transcript::ReceiverInputs() const {
  std::vector<uint64_t> out;
  for (const Transmission& t : transmissions) {
    if (t.direction == Direction::kSenderToReceiver) {
      out.push_back(t.delivered);
    }
  }
  return out;
}

nlohmann::ordered_json Transcript::ReceiverInputsJson() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Transmission& t : transmissions) {
    if (t.direction != Direction::kSenderToReceiver) continue;
    arr.push_back({{"round", t.round},
                   {"wire", t.wire + 1},
                   {"slot", t.slot.ToString()},
                   {"value", t.delivered}});
  }
  return arr;
}

namespace {

nlohmann::ordered_json ObservationJson(const Observation& o) {
  nlohmann::ordered_json j = {{"round", o.round},
                              {"dir", DirectionName(o.direction)},
                              {"wire", o.wire + 1},
                              {"slot", o.slot}};
  j["sent"] = o.sent.has_value() ? nlohmann::ordered_json(*o.sent)
                                 : nlohmann::ordered_json(nullptr);
  j["delivered"] = o.delivered.has_value()
                       ? nlohmann::ordered_json(*o.delivered)
                       : nlohmann::ordered_json(nullptr);
  return j;
}

}  // namespace

nlohmann::ordered_json Transcript::ToJson() const {
  nlohmann::ordered_json tx = nlohmann::ordered_json::array();
  for (const Transmission& t : transmissions) {
    tx.push_back({{"round", t.round},
                  {"dir", DirectionName(t.direction)},
                  {"wire", t.wire + 1},
                  {"slot", t.slot.ToString()},
                  {"sent", t.sent},
                  {"delivered", t.delivered}});
  }
  nlohmann::ordered_json out;
  out["transmissions"] = std::move(tx);
  if (adversary_pair.has_value()) {
    out["adversary"] = {{"pair_index", *adversary_pair + 1},
                        {"mode", ModeName(mode)}};
  } else {
    out["adversary"] = nullptr;
  }
  nlohmann::ordered_json view = nlohmann::ordered_json::array();
  for (const Observation& o : this->view) view.push_back(ObservationJson(o));
  out["view"] = std::move(view);
  return out;
}

absl::StatusOr<std::vector<uint64_t>> ExchangeRound(
    const Field& field, int round, const PhaseLayout& layout,
    std::span<const uint64_t> sent, Adversary* adversary,
    Transcript& transcript) {
  if (sent.size() != layout.slots.size()) {
    throw std::invalid_argument("ExchangeRound: value count != slot count");
  }
  std::vector<uint64_t> delivered(sent.begin(), sent.end());
  if (adversary != nullptr) {
    absl::StatusOr<std::vector<uint64_t>> d =
        adversary->Intercept(field, round, layout, sent);
    if (!d.ok()) return d.status();
    delivered = *std::move(d);
    transcript.adversary_pair = adversary->pair_index();
    transcript.mode = adversary->mode();
    transcript.view = adversary->view().observations();
  }
  for (size_t s = 0; s < sent.size(); ++s) {
    transcript.transmissions.push_back(
        Transmission{round, layout.direction, layout.slots[s].wire,
                     layout.slots[s].id, sent[s], delivered[s]});
  }
  return delivered;
}

absl::StatusOr<std::vector<uint64_t>> PublicSend(
    const Field& field, int round, std::span<const uint64_t> values,
    const std::array<int, 3>& wires, Adversary* adversary,
    Transcript& transcript) {
  PhaseLayout layout;
  std::vector<uint64_t> sent;
  for (size_t i = 0; i < values.size(); ++i) {
    layout.AddPublic(wires, {}, absl::StrCat("pub", i + 1));
    for (int c = 0; c < 3; ++c) sent.push_back(field.Reduce(values[i]));
  }
  absl::StatusOr<std::vector<uint64_t>> delivered =
      ExchangeRound(field, round, layout, sent, adversary, transcript);
  if (!delivered.ok()) return delivered.status();
  std::vector<uint64_t> out;
  for (size_t g = 0; g < layout.groups.size(); ++g) {
    std::vector<uint64_t> copies;
    for (size_t s : layout.group_slots[g]) copies.push_back((*delivered)[s]);
    absl::StatusOr<uint64_t> v = MajorityOf(copies);
    if (!v.ok()) return v.status();
    out.push_back(*v);
  }
  return out;
}

namespace {

class Passive : public Strategy {
 public:
  Disruption Decide(const SlotContext&, const AdversaryView&) override {
    return {};
  }
  std::string name() const override { return "passive"; }
};

class Noise : public Strategy {
 public:
  Disruption Decide(const SlotContext&, const AdversaryView&) override {
    return {Disruption::Kind::kNoise, 0};
  }
  std::string name() const override { return "noise"; }
};

class Offset : public Strategy {
 public:
  explicit Offset(uint64_t delta) : delta_(delta) {}
  Disruption Decide(const SlotContext&, const AdversaryView&) override {
    return {Disruption::Kind::kAdd, delta_};
  }
  std::string name() const override { return absl::StrCat("offset", delta_); }

 private:
  uint64_t delta_;
};

class ListenedReplace : public Strategy {
 public:
  explicit ListenedReplace(uint64_t value) : value_(value) {}
  Disruption Decide(const SlotContext& ctx, const AdversaryView&) override {
    if (!ctx.listened) return {};
    return {Disruption::Kind::kReplace, value_};
  }
  std::string name() const override {
    return absl::StrCat("replace", value_);
  }

 private:
  uint64_t value_;
};

class Scripted : public Strategy {
 public:
  Scripted(Script script, bool keep_unlisted)
      : script_(std::move(script)), keep_unlisted_(keep_unlisted) {}

  Disruption Decide(const SlotContext& ctx, const AdversaryView&) override {
    auto it = script_.find({ctx.round, ctx.layout.slots[ctx.slot].id.ToString()});
    if (it == script_.end()) {
      return keep_unlisted_ ? Disruption{}
                            : Disruption{Disruption::Kind::kNoise, 0};
    }
    return {Disruption::Kind::kNoiseAs, it->second};
  }

  absl::Status CheckTargets(int round, const PhaseLayout& layout,
                            const WireSet& disrupt) const override {
    for (const SlotSpec& s : layout.slots) {
      if (disrupt.Contains(s.wire)) continue;
      if (script_.count({round, s.id.ToString()}) > 0) {
        return absl::FailedPreconditionError(
            absl::StrCat("illegal disruption: script writes slot ",
                         s.id.ToString(), " on wire ", s.wire + 1,
                         " outside D"));
      }
    }
    return absl::OkStatus();
  }

  std::string name() const override { return "scripted"; }

 private:
  Script script_;
  bool keep_unlisted_;
};

}  // namespace

std::unique_ptr<Strategy> PassiveStrategy() {
  return std::make_unique<Passive>();
}
std::unique_ptr<Strategy> NoiseStrategy() { return std::make_unique<Noise>(); }
std::unique_ptr<Strategy> OffsetStrategy(uint64_t delta) {
  return std::make_unique<Offset>(delta);
}
std::unique_ptr<Strategy> ListenedReplaceStrategy(uint64_t value) {
  return std::make_unique<ListenedReplace>(value);
}
std::unique_ptr<Strategy> ScriptedStrategy(Script script, bool keep_unlisted) {
  return std::make_unique<Scripted>(std::move(script), keep_unlisted);
}

}  // namespace smt
