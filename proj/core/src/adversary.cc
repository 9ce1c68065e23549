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

#include "smt/adversary.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace smt {

WireSet::WireSet(int n, uint32_t mask) : n_(n), mask_(mask) {
  if (n < 0 || n > kMaxWires) {
    throw std::invalid_argument(absl::StrCat("wire count out of range: ", n));
  }
  if ((mask & ~All(n).mask_) != 0) {
    throw std::invalid_argument("wire mask exceeds wire count");
  }
}

WireSet WireSet::All(int n) {
  WireSet s;
  s.n_ = n;
  s.mask_ = n >= 32 ? 0xffffffffu : ((uint32_t{1} << n) - 1);
  return s;
}

absl::StatusOr<WireSet> WireSet::FromOneBased(int n,
                                              std::span<const int> wires) {
  if (n < 0 || n > kMaxWires) {
    return absl::InvalidArgumentError(
        absl::StrCat("wire count ", n, " outside [0, ", kMaxWires, "]"));
  }
  uint32_t mask = 0;
  for (int w : wires) {
    if (w < 1 || w > n) {
      return absl::InvalidArgumentError(
          absl::StrCat("wire ", w, " outside 1..", n));
    }
    mask |= uint32_t{1} << (w - 1);
  }
  return WireSet(n, mask);
}

int WireSet::size() const { return std::popcount(mask_); }

void WireSet::CheckCompatible(const WireSet& o) const {
  if (n_ != o.n_) {
    throw std::invalid_argument(
        absl::StrCat("wire sets over ", n_, " and ", o.n_, " wires"));
  }
}

WireSet WireSet::operator|(const WireSet& o) const {
  CheckCompatible(o);
  return WireSet(n_, mask_ | o.mask_);
}
WireSet WireSet::operator&(const WireSet& o) const {
  CheckCompatible(o);
  return WireSet(n_, mask_ & o.mask_);
}
WireSet WireSet::operator-(const WireSet& o) const {
  CheckCompatible(o);
  return WireSet(n_, mask_ & ~o.mask_);
}
WireSet WireSet::Complement() const { return All(n_) - *this; }
bool WireSet::IsSubsetOf(const WireSet& o) const {
  CheckCompatible(o);
  return (mask_ & ~o.mask_) == 0;
}

int WireSet::LowestOutside() const {
  uint32_t free = Complement().mask_;
  return free == 0 ? -1 : std::countr_zero(free);
}

std::vector<int> WireSet::ZeroBased() const {
  std::vector<int> out;
  for (int w = 0; w < n_; ++w) {
    if (Contains(w)) out.push_back(w);
  }
  return out;
}

std::vector<int> WireSet::OneBased() const {
  std::vector<int> out = ZeroBased();
  for (int& w : out) ++w;
  return out;
}

std::string WireSet::ToString() const {
  return absl::StrCat("{", absl::StrJoin(OneBased(), ","), "}");
}

std::string_view ModeName(ObliviousnessMode mode) {
  switch (mode) {
    case ObliviousnessMode::kOblivious:
      return "oblivious";
    case ObliviousnessMode::kCompletelyOblivious:
      return "completely_oblivious";
    case ObliviousnessMode::kNonOblivious:
      return "non_oblivious";
  }
  return "unknown";
}

absl::StatusOr<ObliviousnessMode> ParseMode(std::string_view name) {
  for (ObliviousnessMode m :
       {ObliviousnessMode::kOblivious, ObliviousnessMode::kCompletelyOblivious,
        ObliviousnessMode::kNonOblivious}) {
    if (ModeName(m) == name) return m;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown mode \"", std::string(name), "\""));
}

absl::StatusOr<AdversaryStructure> AdversaryStructure::Create(
    int n, std::vector<AdversaryPair> pairs, ObliviousnessMode mode) {
  if (n < 1 || n > kMaxWires) {
    return absl::InvalidArgumentError(
        absl::StrCat("wire count ", n, " outside [1, ", kMaxWires, "]"));
  }
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].disrupt.n() != n || pairs[i].listen.n() != n) {
      return absl::InvalidArgumentError(
          absl::StrCat("pair ", i + 1, " is not over ", n, " wires"));
    }
  }
  AdversaryStructure s;
  s.n_ = n;
  s.pairs_ = std::move(pairs);
  s.mode_ = mode;
  return s;
}

AdversaryStructure AdversaryStructure::WithMode(ObliviousnessMode mode) const {
  AdversaryStructure s = *this;
  s.mode_ = mode;
  return s;
}

AdversaryStructure AdversaryStructure::Without(size_t index) const {
  AdversaryStructure s = *this;
  s.pairs_.erase(s.pairs_.begin() + static_cast<std::ptrdiff_t>(index));
  return s;
}

AdversaryStructure AdversaryStructure::PaddedTo(size_t count) const {
  AdversaryStructure s = *this;
  while (s.pairs_.size() < count) {
    s.pairs_.push_back({WireSet::Empty(n_), WireSet::Empty(n_)});
  }
  return s;
}

bool Covers(std::span<const WireSet> sets, int n) {
  uint32_t mask = 0;
  for (const WireSet& s : sets) mask |= s.mask();
  return mask == WireSet::All(n).mask();
}

std::vector<WireSet> Subsets(int n, int k) {
  std::vector<WireSet> out;
  if (k < 0 || k > n) return out;
  // Gosper's hack visits masks in increasing numeric order; re-sort by the
  // sorted member list so {1,2} < {1,3} < {2,3}.
  if (k == 0) {
    out.push_back(WireSet::Empty(n));
    return out;
  }
  for (uint64_t m = (uint64_t{1} << k) - 1; m < (uint64_t{1} << n);) {
    out.emplace_back(n, static_cast<uint32_t>(m));
    uint64_t c = m & (~m + 1);
    uint64_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  std::sort(out.begin(), out.end(), [](const WireSet& a, const WireSet& b) {
    return a.ZeroBased() < b.ZeroBased();
  });
  return out;
}

absl::StatusOr<AdversaryStructure> ThresholdStructure(int n, int k) {
  if (n < 1 || n > kMaxEnumerationWires) {
    return absl::InvalidArgumentError(absl::StrCat(
        "wire count ", n, " outside [1, ", kMaxEnumerationWires, "]"));
  }
  if (k < 0 || k > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("threshold ", k, " outside [0, ", n, "]"));
  }
  std::vector<AdversaryPair> pairs;
  for (const WireSet& s : Subsets(n, k)) pairs.push_back({s, s});
  return AdversaryStructure::Create(n, std::move(pairs));
}

absl::StatusOr<AdversaryStructure> DlStructure(int n, int d, int l) {
  if (n < 1 || n > kMaxEnumerationWires) {
    return absl::InvalidArgumentError(absl::StrCat(
        "wire count ", n, " outside [1, ", kMaxEnumerationWires, "]"));
  }
  if (d < 0 || d > n || l < 0 || l > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("sizes d=", d, ", l=", l, " outside [0, ", n, "]"));
  }
  std::vector<AdversaryPair> pairs;
  const std::vector<WireSet> ls = Subsets(n, l);
  for (const WireSet& ds : Subsets(n, d)) {
    for (const WireSet& lset : ls) pairs.push_back({ds, lset});
  }
  return AdversaryStructure::Create(n, std::move(pairs));
}

absl::StatusOr<AdversaryStructure> GeneralStructure(
    int n, std::span<const WireSet> sets) {
  std::vector<AdversaryPair> pairs;
  for (const WireSet& s : sets) pairs.push_back({s, s});
  return AdversaryStructure::Create(n, std::move(pairs));
}

AdversaryStructure Strengthen(const AdversaryStructure& structure) {
  std::vector<AdversaryPair> pairs;
  pairs.reserve(structure.size());
  for (const AdversaryPair& p : structure.pairs()) {
    pairs.push_back({p.disrupt, p.listen | p.disrupt});
  }
  return *AdversaryStructure::Create(structure.n(), std::move(pairs),
                                     ObliviousnessMode::kCompletelyOblivious);
}

}  // namespace smt
