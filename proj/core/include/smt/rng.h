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

#ifndef SMT_RNG_H_
#define SMT_RNG_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smt/field.h"

namespace smt {

// Branch indices from the root of a recursive protocol to one sub-protocol.
using ProtocolPath = std::vector<uint8_t>;

std::string PathString(std::span<const uint8_t> path);  // "", "2", "2.1"

// SplitMix64. Every named stream starts from
//   SplitMix64Mix(seed ^ Fnv1a64("<path>|<label>"))
// so adding draws to one sub-protocol never shifts another's values.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t state) : state_(state) {}
  uint64_t Next();
  // Uniform in [0, bound) by rejection; bound > 0.
  uint64_t Uniform(uint64_t bound);

 private:
  uint64_t state_;
};

uint64_t Fnv1a64(std::string_view bytes);
uint64_t SplitMix64Mix(uint64_t z);
SplitMix64 DeriveStream(uint64_t seed, std::span<const uint8_t> path,
                        std::string_view label);

// Source of a party's random choices. Protocols name each draw by the
// sub-protocol path and a label; implementations decide where values come
// from.
class RandomTape {
 public:
  virtual ~RandomTape() = default;
  virtual uint64_t Draw(const Field& field, std::span<const uint8_t> path,
                        std::string_view label) = 0;
};

// Independent SplitMix64 stream per (path, label).
class SeededTape : public RandomTape {
 public:
  explicit SeededTape(uint64_t seed) : seed_(seed) {}
  uint64_t Draw(const Field& field, std::span<const uint8_t> path,
                std::string_view label) override;

 private:
  uint64_t seed_;
  std::map<std::string, SplitMix64> streams_;
};

// Replays fixed values in draw order. Draws past the end return 0 and are
// counted in overrun().
class FixedTape : public RandomTape {
 public:
  explicit FixedTape(std::vector<uint64_t> values)
      : values_(std::move(values)) {}
  uint64_t Draw(const Field& field, std::span<const uint8_t> path,
                std::string_view label) override;
  size_t consumed() const { return next_; }
  size_t overrun() const { return overrun_; }

 private:
  std::vector<uint64_t> values_;
  size_t next_ = 0;
  size_t overrun_ = 0;
};

// Forwards to another tape and records every draw with its stream key.
class RecordingTape : public RandomTape {
 public:
  struct Entry {
    std::string key;  // "<path>|<label>"
    uint64_t value;
  };
  explicit RecordingTape(RandomTape& inner) : inner_(inner) {}
  uint64_t Draw(const Field& field, std::span<const uint8_t> path,
                std::string_view label) override;
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  RandomTape& inner_;
  std::vector<Entry> entries_;
};

}  // namespace smt

#endif  // SMT_RNG_H_
