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

#ifndef SMT_TWOWAY_PRIVACY_H_
#define SMT_TWOWAY_PRIVACY_H_

#include "smt/field.h"
#include "smt/twoway.h"
#include "smt/verification.h"

namespace smt {

// Exact privacy check for a single-leaf two-way protocol, noise rules
// included.
//
// The round-1 view splits into independent parts, one per polynomial and
// evaluation point. Views whose joint law with the received value is
// proportional are merged, so the round-2 payload only has to be checked
// against a few hundred view classes instead of every receiver tape.
// `options.receiver_pins` restricts the receiver's draws exactly as tape
// enumeration does, which lets the two engines be compared.
PrivacyReport VerifyTwoWayPrivacyFactored(const TwoWayProtocol& protocol,
                                          const Field& field,
                                          const PrivacyOptions& options);

}  // namespace smt

#endif  // SMT_TWOWAY_PRIVACY_H_
