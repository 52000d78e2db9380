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

// JSON problem files.
//
//   {
//     "version": 1,
//     "n": 2,
//     "objective":   {"a": 1, "b": [-2, 0], "c": 4},
//     "constraints": [{"a": 1, "b": [0, 0], "c": -1}],
//     "candidate":   {"x": [1, 0], "gamma": [1]}          (optional)
//   }
//
// In matrix mode ("matrix_mode": true, or an objective carrying "A") every
// quadratic has an n x n symmetric "A" instead of "a" and the constraint list
// may be empty. "candidate" may carry "gamma0" for a Fritz-John check.

#ifndef SQCQP_PROBLEM_IO_H_
#define SQCQP_PROBLEM_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"
#include "sqcqp/kkt.h"
#include "sqcqp/model.h"

namespace sqcqp {

struct CandidateBlock {
  Vector x;
  Multipliers multipliers;
};

struct ProblemFile {
  std::variant<Problem, GeneralProblem> problem;
  std::optional<CandidateBlock> candidate;

  bool matrix_mode() const {
    return std::holds_alternative<GeneralProblem>(problem);
  }
};

// Throws Error(kParse) with line and column for malformed JSON, and
// Error(kValidation) listing every violated invariant otherwise.
ProblemFile ParseProblem(std::string_view text);

nlohmann::ordered_json ProblemToJson(
    const Problem& p, const std::optional<CandidateBlock>& candidate = {});

// Deterministic JSON text with every floating-point number printed with 17
// significant digits. Non-finite numbers become null.
std::string DumpJson(const nlohmann::ordered_json& j, int indent = 2);

// "%.17g".
std::string FormatDouble(double v);

nlohmann::ordered_json VectorToJson(const Vector& v);

}  // namespace sqcqp

#endif  // SQCQP_PROBLEM_IO_H_
