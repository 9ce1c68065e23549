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

#include "smt/rng.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace smt {

std::string PathString(std::span<const uint8_t> path) {
  std::vector<int> parts(path.begin(), path.end());
  return absl::StrJoin(parts, ".");
}

uint64_t SplitMix64Mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t SplitMix64::Next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return SplitMix64Mix(state_);
}

uint64_t SplitMix64::Uniform(uint64_t bound) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t v;
  do {
    v = Next();
  } while (v >= limit);
  return v % bound;
}

uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SplitMix64 DeriveStream(uint64_t seed, std::span<const uint8_t> path,
                        std::string_view label) {
  const std::string key = absl::StrCat(PathString(path), "|", std::string(label));
  return SplitMix64(SplitMix64Mix(seed ^ Fnv1a64(key)));
}

uint64_t SeededTape::Draw(const Field& field, std::span<const uint8_t> path,
                          std::string_view label) {
  const std::string key = absl::StrCat(PathString(path), "|", std::string(label));
  auto it = streams_.find(key);
  if (it == streams_.end()) {
    it = streams_.emplace(key, DeriveStream(seed_, path, label)).first;
  }
  return it->second.Uniform(field.modulus());
}

uint64_t FixedTape::Draw(const Field& field, std::span<const uint8_t>,
                         std::string_view) {
  if (next_ >= values_.size()) {
    ++overrun_;
    return 0;
  }
  return field.Reduce(values_[next_++]);
}

uint64_t RecordingTape::Draw(const Field& field, std::span<const uint8_t> path,
                             std::string_view label) {
  uint64_t v = inner_.Draw(field, path, label);
  entries_.push_back({absl::StrCat(PathString(path), "|", std::string(label)), v});
  return v;
}

}  // namespace smt
