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

#ifndef SMT_ADVERSARY_H_
#define SMT_ADVERSARY_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace smt {

inline constexpr int kMaxWires = 32;
// Constructors that enumerate subsets refuse anything wider.
inline constexpr int kMaxEnumerationWires = 16;

// Subset of the wires {0, .., n-1}. Wire numbers are 0-based in code and
// 1-based in every external format.
class WireSet {
 public:
  WireSet() = default;
  // Precondition: mask has no bits at or above n.
  WireSet(int n, uint32_t mask);

  static WireSet Empty(int n) { return WireSet(n, 0); }
  static WireSet All(int n);
  static absl::StatusOr<WireSet> FromOneBased(int n,
                                              std::span<const int> wires);

  int n() const { return n_; }
  uint32_t mask() const { return mask_; }
  bool Contains(int wire) const { return (mask_ >> wire) & 1u; }
  int size() const;
  bool empty() const { return mask_ == 0; }
  bool IsFull() const { return mask_ == All(n_).mask_; }

  // Set algebra; both operands must share n (std::invalid_argument).
  WireSet operator|(const WireSet& o) const;
  WireSet operator&(const WireSet& o) const;
  WireSet operator-(const WireSet& o) const;
  WireSet Complement() const;
  bool IsSubsetOf(const WireSet& o) const;

  // Lowest wire outside the set, or -1 when the set is full.
  int LowestOutside() const;

  std::vector<int> ZeroBased() const;
  std::vector<int> OneBased() const;
  std::string ToString() const;  // "{1,2,4}"

  friend bool operator==(const WireSet&, const WireSet&) = default;
  friend auto operator<=>(const WireSet&, const WireSet&) = default;

 private:
  void CheckCompatible(const WireSet& o) const;

  int n_ = 0;
  uint32_t mask_ = 0;
};

// The adversary may disrupt every wire of `disrupt` while listening to every
// wire of `listen`. The two sets may overlap.
struct AdversaryPair {
  WireSet disrupt;
  WireSet listen;

  friend bool operator==(const AdversaryPair&, const AdversaryPair&) = default;
};

enum class ObliviousnessMode {
  // Cannot hear the original value on a disrupted wire it does not listen
  // to, but does hear the value it puts there.
  kOblivious,
  // Additionally cannot hear the replacement on such a wire.
  kCompletelyOblivious,
  // Hears everything on disrupted wires; handled by Strengthen().
  kNonOblivious,
};

std::string_view ModeName(ObliviousnessMode mode);
absl::StatusOr<ObliviousnessMode> ParseMode(std::string_view name);

class AdversaryStructure {
 public:
  AdversaryStructure() = default;
  static absl::StatusOr<AdversaryStructure> Create(
      int n, std::vector<AdversaryPair> pairs,
      ObliviousnessMode mode = ObliviousnessMode::kOblivious);

  int n() const { return n_; }
  const std::vector<AdversaryPair>& pairs() const { return pairs_; }
  const AdversaryPair& pair(size_t i) const { return pairs_[i]; }
  size_t size() const { return pairs_.size(); }
  ObliviousnessMode mode() const { return mode_; }

  AdversaryStructure WithMode(ObliviousnessMode mode) const;
  // Copy with pair `index` removed, order of the rest preserved.
  AdversaryStructure Without(size_t index) const;
  // Copy padded with (empty, empty) pairs up to `count` pairs.
  AdversaryStructure PaddedTo(size_t count) const;

  friend bool operator==(const AdversaryStructure&,
                         const AdversaryStructure&) = default;

 private:
  int n_ = 0;
  std::vector<AdversaryPair> pairs_;
  ObliviousnessMode mode_ = ObliviousnessMode::kOblivious;
};

// True iff the union of `sets` is all n wires.
bool Covers(std::span<const WireSet> sets, int n);

// Every k-subset as a pair with D = L.
absl::StatusOr<AdversaryStructure> ThresholdStructure(int n, int k);
// Every (D, L) with |D| = d and |L| = l, D-major lexicographic order.
absl::StatusOr<AdversaryStructure> DlStructure(int n, int d, int l);
// One pair with D = L per set.
absl::StatusOr<AdversaryStructure> GeneralStructure(
    int n, std::span<const WireSet> sets);

// (D, L) -> (D, L u D) for every pair; the result is completely oblivious
// since nothing disrupted goes unheard.
AdversaryStructure Strengthen(const AdversaryStructure& structure);

// All k-subsets of n wires in lexicographic order of their sorted members.
std::vector<WireSet> Subsets(int n, int k);

}  // namespace smt

#endif  // SMT_ADVERSARY_H_
