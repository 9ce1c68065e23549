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

#ifndef SMT_TOOLS_SMTCTL_H_
#define SMT_TOOLS_SMTCTL_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace smt::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kBadInput = 1;  // malformed or vacuous input
inline constexpr int kInfeasible = 2;
inline constexpr int kVerificationFailed = 3;
inline constexpr int kBudgetRefused = 4;
inline constexpr int kSearchExhausted = 5;

// Runs smtctl with `args` (without the program name). JSON results go to
// `out`, diagnostics to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace smt::cli

#endif  // SMT_TOOLS_SMTCTL_H_
