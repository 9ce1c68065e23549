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

#include "smt/twoway_privacy.h"

#include <array>
#include <functional>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "absl/strings/str_cat.h"

namespace smt {
namespace {

using u128 = unsigned __int128;
constexpr uint64_t kNone = std::numeric_limits<uint64_t>::max();

// Class index of four received points: 0 = A, 1 = B, 2..4 = C with
// excluded position 1..3.
constexpr int kClassA = 0;
constexpr int kClassB = 1;
constexpr int kClassCount = 5;

int ClassIndex(const Classification& c) {
  switch (c.cls) {
    case PointClass::kA:
      return kClassA;
    case PointClass::kB:
      return kClassB;
    case PointClass::kC:
      return 1 + c.excluded;
  }
  return kClassB;
}

// What the adversary does to, and sees of, one slot.
struct SlotModel {
  bool disrupted = false;
  bool hears_sent = false;
  bool sees_delivered = false;
  SlotRule rule = SlotRule::kKeep;
};

absl::StatusOr<SlotModel> ModelSlot(int wire, const AdversaryPair& pair,
                                    ObliviousnessMode mode,
                                    const BatteryEntry& entry) {
  const bool listened = pair.listen.Contains(wire);
  const bool disrupted = pair.disrupt.Contains(wire);
  const bool hears_new = mode != ObliviousnessMode::kCompletelyOblivious;
  const bool hears_original = mode == ObliviousnessMode::kNonOblivious;
  SlotModel s;
  s.disrupted = disrupted;
  s.hears_sent = listened || (disrupted && hears_original);
  s.sees_delivered = listened || (disrupted && hears_original);
  if (!disrupted) return s;
  s.rule = listened ? entry.listened : entry.unheard;
  const bool writes = s.rule == SlotRule::kZero || s.rule == SlotRule::kNoise;
  s.sees_delivered = s.sees_delivered || (hears_new && writes);
  if (!listened && s.rule == SlotRule::kZero && !hears_new) {
    return absl::FailedPreconditionError(absl::StrCat(
        "illegal disruption: chosen value on unheard wire ", wire + 1,
        " by a completely oblivious adversary"));
  }
  if (!listened && s.rule == SlotRule::kAddOne && hears_new &&
      !hears_original) {
    return absl::FailedPreconditionError(absl::StrCat(
        "illegal disruption: offset on unheard wire ", wire + 1,
        " by an adversary that hears replacements"));
  }
  return s;
}

uint64_t Apply(const Field& field, const SlotModel& s, uint64_t sent,
               uint64_t noise) {
  if (!s.disrupted) return sent;
  switch (s.rule) {
    case SlotRule::kKeep:
      return sent;
    case SlotRule::kAddOne:
      return field.Add(sent, 1);
    case SlotRule::kZero:
      return 0;
    case SlotRule::kNoise:
      return noise;
  }
  return sent;
}

void Normalize(std::vector<uint64_t>& row) {
  uint64_t g = 0;
  for (uint64_t v : row) g = std::gcd(g, v);
  if (g > 1) {
    for (uint64_t& v : row) v /= g;
  }
}

// The law of (view fragment, received value) given the true value at one
// evaluation point, with fragments merged into classes of proportional
// rows. sparse[class][v] lists (received, weight).
struct PointChannel {
  std::vector<std::vector<std::vector<std::pair<uint64_t, uint64_t>>>>
      sparse;
};

// `shares` true: three additive shares with draws from r1s, r2s. False:
// three identical public copies, majority-decoded.
PointChannel BuildChannel(const Field& field,
                          const std::array<SlotModel, 3>& slots, bool shares,
                          const std::vector<uint64_t>& r1s,
                          const std::vector<uint64_t>& r2s) {
  const uint64_t p = field.modulus();
  std::vector<int> noisy;
  for (int k = 0; k < 3; ++k) {
    if (slots[k].disrupted && slots[k].rule == SlotRule::kNoise) {
      noisy.push_back(k);
    }
  }
  uint64_t noise_combos = 1;
  for (size_t i = 0; i < noisy.size(); ++i) noise_combos *= p;

  std::map<std::vector<uint64_t>, std::vector<uint64_t>> rows;
  std::vector<uint64_t> fragment(6);
  for (uint64_t v = 0; v < p; ++v) {
    for (uint64_t r1 : shares ? r1s : std::vector<uint64_t>{0}) {
      for (uint64_t r2 : shares ? r2s : std::vector<uint64_t>{0}) {
        std::array<uint64_t, 3> sent =
            shares ? std::array<uint64_t, 3>{r1, r2,
                                             field.Sub(field.Sub(v, r1), r2)}
                   : std::array<uint64_t, 3>{v, v, v};
        for (uint64_t nc = 0; nc < noise_combos; ++nc) {
          std::array<uint64_t, 3> noise{};
          uint64_t x = nc;
          for (int k : noisy) {
            noise[k] = x % p;
            x /= p;
          }
          std::array<uint64_t, 3> got{};
          for (int k = 0; k < 3; ++k) {
            got[k] = Apply(field, slots[k], sent[k], noise[k]);
            fragment[2 * k] = slots[k].hears_sent ? sent[k] : kNone;
            fragment[2 * k + 1] = slots[k].sees_delivered ? got[k] : kNone;
          }
          uint64_t received;
          if (shares) {
            received = field.Add(field.Add(got[0], got[1]), got[2]);
          } else if (got[0] == got[1] || got[0] == got[2]) {
            received = got[0];
          } else if (got[1] == got[2]) {
            received = got[1];
          } else {
            received = got[0];
          }
          std::vector<uint64_t>& row = rows[fragment];
          if (row.empty()) row.assign(p * p, 0);
          ++row[v * p + received];
        }
      }
    }
  }
  std::map<std::vector<uint64_t>, size_t> classes;
  PointChannel out;
  for (auto& [frag, row] : rows) {
    Normalize(row);
    auto [it, fresh] = classes.emplace(row, out.sparse.size());
    if (!fresh) continue;
    out.sparse.emplace_back(p);
    for (uint64_t v = 0; v < p; ++v) {
      for (uint64_t got = 0; got < p; ++got) {
        if (row[v * p + got] != 0) {
          out.sparse.back()[v].push_back({got, row[v * p + got]});
        }
      }
    }
  }
  return out;
}

// Per polynomial view class: the weights of the four received values and
// the tables the payload checks need.
struct PolyClass {
  std::array<uint64_t, kClassCount> weight{};  // per point class
  std::vector<uint64_t> a_line;                // A: at 0, by value
  // Per point class: the three candidates m + line(h, 4) at 0, indexed
  // c1 * p^2 + c2 * p + c3.
  std::array<std::vector<uint64_t>, kClassCount> b_lines;
  // C with excluded e (index 2 + e - 1): revealed points p(1..3) and the
  // two candidates (kept line, excluded line).
  std::array<std::vector<uint64_t>, 3> c_points;
  std::array<std::vector<uint64_t>, 3> c_lines;
};

struct PolyModel {
  std::vector<PolyClass> classes;
};

std::vector<uint64_t> Range(const Field& field,
                            const std::map<size_t, uint64_t>& pins,
                            size_t index) {
  auto it = pins.find(index);
  if (it != pins.end()) return {field.Reduce(it->second)};
  std::vector<uint64_t> all(field.modulus());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

PolyModel BuildPoly(const Field& field,
                    const std::array<PointChannel, 4>& channels,
                    const std::vector<uint64_t>& c0s,
                    const std::vector<uint64_t>& c1s,
                    const std::vector<int>& point_class) {
  const uint64_t p = field.modulus();
  const uint64_t p2 = p * p, p3 = p2 * p, p4 = p3 * p;
  std::map<std::vector<uint64_t>, size_t> seen;
  PolyModel model;
  std::array<size_t, 4> lam{};
  std::vector<uint64_t> row(p4);
  while (true) {
    std::fill(row.begin(), row.end(), 0);
    bool any = false;
    for (uint64_t c0 : c0s) {
      for (uint64_t c1 : c1s) {
        std::array<const std::vector<std::pair<uint64_t, uint64_t>>*, 4> l{};
        bool empty = false;
        for (int x = 0; x < 4; ++x) {
          uint64_t v = field.Add(c0, field.Mul(c1, x + 1));
          l[x] = &channels[x].sparse[lam[x]][v];
          empty = empty || l[x]->empty();
        }
        if (empty) continue;
        any = true;
        for (const auto& [g1, w1] : *l[0]) {
          for (const auto& [g2, w2] : *l[1]) {
            for (const auto& [g3, w3] : *l[2]) {
              for (const auto& [g4, w4] : *l[3]) {
                row[((g1 * p + g2) * p + g3) * p + g4] += w1 * w2 * w3 * w4;
              }
            }
          }
        }
      }
    }
    if (any) {
      Normalize(row);
      if (seen.emplace(row, model.classes.size()).second) {
        PolyClass pc;
        pc.a_line.assign(p, 0);
        for (auto& t : pc.b_lines) t.assign(p3, 0);
        for (auto& t : pc.c_points) t.assign(p3, 0);
        for (auto& t : pc.c_lines) t.assign(p2, 0);
        for (uint64_t idx = 0; idx < p4; ++idx) {
          const uint64_t w = row[idx];
          if (w == 0) continue;
          const std::array<uint64_t, 4> q = {idx / p3, (idx / p2) % p,
                                             (idx / p) % p, idx % p};
          const int t = point_class[idx];
          pc.weight[t] += w;
          if (t == kClassA) {
            pc.a_line[LineAtZero(field, 1, q[0], 4, q[3])] += w;
          }
          std::array<uint64_t, 3> lines{};
          for (int h = 0; h < 3; ++h) {
            lines[h] = LineAtZero(field, h + 1, q[h], 4, q[3]);
          }
          pc.b_lines[t][(lines[0] * p + lines[1]) * p + lines[2]] += w;
          if (t >= 2) {
            const int e = t - 1;
            const int keep = e == 1 ? 2 : 1;
            pc.c_points[e - 1][(q[0] * p + q[1]) * p + q[2]] += w;
            pc.c_lines[e - 1][lines[keep - 1] * p + lines[e - 1]] += w;
          }
        }
        model.classes.push_back(std::move(pc));
      }
    }
    int x = 0;
    for (; x < 4; ++x) {
      if (++lam[x] < channels[x].sparse.size()) break;
      lam[x] = 0;
    }
    if (x == 4) break;
  }
  return model;
}

// True iff table(z) == table(z + delta * (1, .., 1)) for every z, where z
// ranges over `dims` coordinates mod p.
template <typename T>
bool ShiftInvariant(const std::vector<T>& table, uint64_t p, int dims,
                    uint64_t delta) {
  for (uint64_t z = 0; z < table.size(); ++z) {
    uint64_t shifted = 0, rest = z, scale = 1;
    for (int d = 0; d < dims; ++d) {
      shifted += ((rest % p + delta) % p) * scale;
      rest /= p;
      scale *= p;
    }
    if (table[z] != table[shifted]) return false;
  }
  return true;
}

// Outcome of one invariance check: index into the message list of the
// first message whose payload law differs from the first message's.
std::optional<size_t> FirstShiftFailure(
    const std::function<bool(uint64_t)>& invariant, const Field& field,
    const std::vector<uint64_t>& messages) {
  for (size_t i = 1; i < messages.size(); ++i) {
    if (!invariant(field.Sub(messages[i], messages[0]))) return i;
  }
  return std::nullopt;
}

struct Checker {
  const Field& field;
  const std::vector<uint64_t>& messages;
  const std::array<PolyModel, 4>& polys;

  uint64_t p() const { return field.modulus(); }

  // Some view class of polynomial q gives the point classes in `allowed`
  // positive weight.
  bool Can(int q, std::initializer_list<int> allowed) const {
    for (const PolyClass& c : polys[q].classes) {
      for (int t : allowed) {
        if (c.weight[t] > 0) return true;
      }
    }
    return false;
  }

  std::optional<size_t> CheckA() const {
    for (int i = 0; i < 4; ++i) {
      bool ok = true;
      for (int q = 0; q < i; ++q) ok = ok && Can(q, {1, 2, 3, 4});
      if (!ok || !Can(i, {kClassA})) continue;
      for (const PolyClass& c : polys[i].classes) {
        if (c.weight[kClassA] == 0) continue;
        auto bad = FirstShiftFailure(
            [&](uint64_t d) { return ShiftInvariant(c.a_line, p(), 1, d); },
            field, messages);
        if (bad) return bad;
      }
    }
    return std::nullopt;
  }

  std::optional<size_t> CheckB() const {
    for (int i = 0; i < 4; ++i) {
      const int j = i == 0 ? 1 : 0;
      bool ok = Can(i, {kClassB});
      for (int q = 0; q < 4; ++q) {
        if (q == i || q == j) continue;
        ok = ok && (q < i ? Can(q, {2, 3, 4}) : Can(q, {1, 2, 3, 4}));
      }
      if (!ok) continue;
      const std::vector<int> allowed =
          j < i ? std::vector<int>{2, 3, 4} : std::vector<int>{1, 2, 3, 4};
      for (const PolyClass& c : polys[j].classes) {
        std::vector<uint64_t> sum(p() * p() * p(), 0);
        bool any = false;
        for (int t : allowed) {
          if (c.weight[t] == 0) continue;
          any = true;
          for (size_t z = 0; z < sum.size(); ++z) sum[z] += c.b_lines[t][z];
        }
        if (!any) continue;
        auto bad = FirstShiftFailure(
            [&](uint64_t d) { return ShiftInvariant(sum, p(), 3, d); },
            field, messages);
        if (bad) return bad;
      }
    }
    return std::nullopt;
  }

  // Lowest pair of polynomials sharing an excluded position.
  static std::pair<int, int> LowestPair(const std::array<int, 4>& e) {
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        if (e[a] == e[b]) return {a, b};
      }
    }
    return {-1, -1};
  }

  std::optional<size_t> CheckC() const {
    for (int i1 = 0; i1 < 4; ++i1) {
      for (int i2 = i1 + 1; i2 < 4; ++i2) {
        if (auto bad = CheckCPair(i1, i2)) return bad;
      }
    }
    return std::nullopt;
  }

  std::optional<size_t> CheckCPair(int i1, int i2) const {
    // Per excluded position first: enough when each term is invariant.
    bool all_invariant = true;
    for (int e = 0; e < 3 && all_invariant; ++e) {
      for (const PolyClass& c : polys[i2].classes) {
        if (c.weight[2 + e] == 0) continue;
        if (FirstShiftFailure(
                [&](uint64_t d) {
                  return ShiftInvariant(c.c_lines[e], p(), 2, d);
                },
                field, messages)) {
          all_invariant = false;
          break;
        }
      }
    }
    if (all_invariant) return std::nullopt;

    // Exact: weight of each excluded position from the other two
    // polynomials, then the joint (points, candidates) law.
    std::vector<int> others;
    for (int q = 0; q < 4; ++q) {
      if (q != i1 && q != i2) others.push_back(q);
    }
    std::map<std::array<u128, 3>, bool> weights;
    for (const PolyClass& ca : polys[others[0]].classes) {
      for (const PolyClass& cb : polys[others[1]].classes) {
        std::array<u128, 3> w{};
        for (int e = 0; e < 3; ++e) {
          for (int ea = 0; ea < 3; ++ea) {
            for (int eb = 0; eb < 3; ++eb) {
              std::array<int, 4> ex{};
              ex[i1] = ex[i2] = e;
              ex[others[0]] = ea;
              ex[others[1]] = eb;
              if (LowestPair(ex) != std::make_pair(i1, i2)) continue;
              w[e] += u128{ca.weight[2 + ea]} * cb.weight[2 + eb];
            }
          }
        }
        if (w[0] || w[1] || w[2]) weights[w] = true;
      }
    }
    const uint64_t p2 = p() * p(), p3 = p2 * p();
    for (const auto& [w, unused] : weights) {
      for (const PolyClass& c1 : polys[i1].classes) {
        for (const PolyClass& c2 : polys[i2].classes) {
          std::vector<u128> table(p3 * p2, 0);
          bool any = false;
          for (int e = 0; e < 3; ++e) {
            if (w[e] == 0 || c1.weight[2 + e] == 0 || c2.weight[2 + e] == 0) {
              continue;
            }
            any = true;
            for (uint64_t zb = 0; zb < p3; ++zb) {
              const uint64_t f1 = c1.c_points[e][zb];
              if (f1 == 0) continue;
              for (uint64_t zc = 0; zc < p2; ++zc) {
                table[zb * p2 + zc] += w[e] * f1 * c2.c_lines[e][zc];
              }
            }
          }
          if (!any) continue;
          auto bad = FirstShiftFailure(
              [&](uint64_t d) {
                // Only the two candidate coordinates carry m.
                for (uint64_t zb = 0; zb < p3; ++zb) {
                  for (uint64_t zc = 0; zc < p2; ++zc) {
                    uint64_t a = (zc / p() + d) % p();
                    uint64_t b = (zc % p() + d) % p();
                    if (table[zb * p2 + zc] != table[zb * p2 + a * p() + b]) {
                      return false;
                    }
                  }
                }
                return true;
              },
              field, messages);
          if (bad) return bad;
        }
      }
    }
    return std::nullopt;
  }
};

std::vector<uint64_t> AllMessages(const Field& field) {
  std::vector<uint64_t> all(field.modulus());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

}  // namespace

PrivacyReport VerifyTwoWayPrivacyFactored(const TwoWayProtocol& protocol,
                                          const Field& field,
                                          const PrivacyOptions& options) {
  PrivacyReport report;
  if (protocol.leaves().size() != 1) {
    report.refused = true;
    report.refusal = "factored engine handles single-leaf plans only";
    return report;
  }
  if (field.modulus() > 16 || field.modulus() < protocol.min_modulus()) {
    report.refused = true;
    report.refusal = absl::StrCat("factored engine needs 5 <= p <= 16, got ",
                                  field.modulus());
    return report;
  }
  const TwoWayLeaf& leaf = protocol.leaves()[0];
  const AdversaryStructure a = protocol.structure().WithMode(
      options.mode.value_or(protocol.structure().mode()));
  const std::vector<BatteryEntry> battery =
      options.battery.empty() ? DefaultBattery(a.mode(), true)
                              : options.battery;
  const std::vector<uint64_t> messages =
      options.messages.empty() ? AllMessages(field) : options.messages;
  std::vector<size_t> pairs = options.pairs;
  if (pairs.empty()) {
    for (size_t c = 0; c < a.size(); ++c) pairs.push_back(c);
  }

  const uint64_t p = field.modulus();
  std::vector<int> point_class(p * p * p * p);
  for (uint64_t idx = 0; idx < point_class.size(); ++idx) {
    const std::array<uint64_t, 4> q = {idx / (p * p * p), (idx / (p * p)) % p,
                                       (idx / p) % p, idx % p};
    point_class[idx] =
        ClassIndex(ClassifyPoints(field, std::span<const uint64_t, 4>(q)));
  }
  const PhaseLayout& r1 = protocol.phase(0);
  const PhaseLayout& r2 = protocol.phase(1);

  for (size_t c : pairs) {
    for (const BatteryEntry& entry : battery) {
      PrivacyVerdict verdict{c, entry.name, true, std::nullopt, 0,
                             "factored"};
      auto model = [&](int wire) {
        return ModelSlot(wire, a.pair(c), a.mode(), entry);
      };
      // Round 2 only matters if the payload is visible.
      bool revealed = false;
      for (size_t s : leaf.payload_slots[0]) {
        absl::StatusOr<SlotModel> m = model(r2.slots[s].wire);
        if (!m.ok()) {
          report.refused = true;
          report.refusal = m.status().ToString();
          return report;
        }
        revealed = revealed || m->hears_sent ||
                   (m->sees_delivered && (m->rule == SlotRule::kKeep ||
                                          m->rule == SlotRule::kAddOne));
      }
      std::array<PolyModel, 4> polys;
      for (int i = 0; i < 4; ++i) {
        std::array<PointChannel, 4> channels;
        for (int x = 0; x < 4; ++x) {
          std::array<SlotModel, 3> slots;
          for (int k = 0; k < 3; ++k) {
            const size_t s =
                x < 3 ? leaf.share_slots[i][x][k] : leaf.p4_slots[i][k];
            absl::StatusOr<SlotModel> m = model(r1.slots[s].wire);
            if (!m.ok()) {
              report.refused = true;
              report.refusal = m.status().ToString();
              return report;
            }
            slots[k] = *m;
          }
          // Draw order per polynomial: c0, c1, then r1, r2 per point.
          const size_t base = 8 * static_cast<size_t>(i);
          channels[x] =
              x < 3 ? BuildChannel(
                          field, slots, true,
                          Range(field, options.receiver_pins, base + 2 + 2 * x),
                          Range(field, options.receiver_pins, base + 3 + 2 * x))
                    : BuildChannel(field, slots, false, {}, {});
        }
        const size_t base = 8 * static_cast<size_t>(i);
        polys[i] = BuildPoly(field, channels,
                             Range(field, options.receiver_pins, base),
                             Range(field, options.receiver_pins, base + 1),
                             point_class);
        verdict.distinct_views += polys[i].classes.size();
      }
      if (revealed) {
        Checker checker{field, messages, polys};
        std::optional<size_t> bad = checker.CheckA();
        if (!bad) bad = checker.CheckB();
        if (!bad) bad = checker.CheckC();
        if (bad) {
          verdict.equal = false;
          verdict.differing = std::make_pair(messages[0], messages[*bad]);
        }
      }
      ++report.executions;
      report.verdicts.push_back(std::move(verdict));
    }
  }
  return report;
}

}  // namespace smt
