// Copyright 2026 The sqcqp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SQCQP_CLI_H_
#define SQCQP_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace sqcqp::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitConditional = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitFullRank = 4;
inline constexpr int kExitDualDivergence = 5;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitDataError = 65;
inline constexpr int kExitNoInput = 66;
inline constexpr int kExitCantCreate = 73;

// Runs one command line; args excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace sqcqp::cli

#endif  // SQCQP_CLI_H_
