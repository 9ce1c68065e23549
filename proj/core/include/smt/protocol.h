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

#ifndef SMT_PROTOCOL_H_
#define SMT_PROTOCOL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "smt/adversary.h"
#include "smt/field.h"
#include "smt/rng.h"
#include "smt/transport.h"

namespace smt {

struct ExecutionOutcome {
  std::optional<uint64_t> decoded;  // empty on a decode failure
  std::string failure;              // why decoding failed
  Transcript transcript;
  int rounds = 0;
};

// Carries one phase from its sender to its recipient.
class PhaseChannel {
 public:
  virtual ~PhaseChannel() = default;
  virtual absl::StatusOr<std::vector<uint64_t>> Exchange(
      int round, const PhaseLayout& layout,
      std::span<const uint64_t> sent) = 0;
};

// Delivers everything unchanged.
class PerfectChannel : public PhaseChannel {
 public:
  absl::StatusOr<std::vector<uint64_t>> Exchange(
      int, const PhaseLayout&, std::span<const uint64_t> sent) override {
    return std::vector<uint64_t>(sent.begin(), sent.end());
  }
};

// A planned protocol with a fixed phase shape.
class Protocol {
 public:
  virtual ~Protocol() = default;

  virtual const AdversaryStructure& structure() const = 0;
  virtual int phase_count() const = 0;
  virtual const PhaseLayout& phase(int index) const = 0;  // 0-based
  virtual std::string name() const = 0;
  // Smallest modulus the protocol's evaluation points need.
  virtual uint64_t min_modulus() const { return 2; }

  // Runs both parties over `channel`. Errors are harness faults (channel
  // failures); decode failures land in the outcome. The outcome's
  // transcript is left empty.
  virtual absl::StatusOr<ExecutionOutcome> Execute(
      const Field& field, uint64_t m, RandomTape& sender_tape,
      RandomTape& receiver_tape, PhaseChannel& channel) const = 0;

  // Execute() against `adversary` (nullptr: none), recording the
  // transcript. Fails on a modulus below min_modulus().
  absl::StatusOr<ExecutionOutcome> Run(const Field& field, uint64_t m,
                                       RandomTape& sender_tape,
                                       RandomTape& receiver_tape,
                                       Adversary* adversary) const;
};

}  // namespace smt

#endif  // SMT_PROTOCOL_H_
