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

#include "smt/protocol.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace smt {
namespace {

class AdversaryChannel : public PhaseChannel {
 public:
  AdversaryChannel(const Field& field, Adversary* adversary,
                   Transcript& transcript)
      : field_(field), adversary_(adversary), transcript_(transcript) {}

  absl::StatusOr<std::vector<uint64_t>> Exchange(
      int round, const PhaseLayout& layout,
      std::span<const uint64_t> sent) override {
    return ExchangeRound(field_, round, layout, sent, adversary_, transcript_);
  }

 private:
  const Field& field_;
  Adversary* adversary_;
  Transcript& transcript_;
};

}  // namespace

absl::StatusOr<ExecutionOutcome> Protocol::Run(const Field& field, uint64_t m,
                                               RandomTape& sender_tape,
                                               RandomTape& receiver_tape,
                                               Adversary* adversary) const {
  if (field.modulus() < min_modulus()) {
    return absl::InvalidArgumentError(
        absl::StrCat(name(), " needs a modulus of at least ", min_modulus(),
                     ", got ", field.modulus()));
  }
  Transcript transcript;
  AdversaryChannel channel(field, adversary, transcript);
  absl::StatusOr<ExecutionOutcome> out =
      Execute(field, m, sender_tape, receiver_tape, channel);
  if (!out.ok()) return out.status();
  out->transcript = std::move(transcript);
  return out;
}

}  // namespace smt
