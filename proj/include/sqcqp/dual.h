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

// Lagrangian dual of a scalar problem. For gamma >= 0 the Lagrangian is the
// scalar quadratic (a, b, c) = Aggregate(p, gamma), so its infimum over x is
// available in closed form:
//
//   a > 0          ->  c - ||b||^2 / a, attained at -b / a
//   a = 0, b = 0   ->  c, attained everywhere
//   otherwise      ->  -infinity.
//
// Solve maximizes this concave function of gamma and recovers a primal point
// that is then certified by CheckKkt.

#ifndef SQCQP_DUAL_H_
#define SQCQP_DUAL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sqcqp/kkt.h"
#include "sqcqp/model.h"
#include "sqcqp/search.h"

namespace sqcqp {

enum class DualStatus { kAttained, kUnboundedBelow, kFlatAttained };

std::string_view DualStatusName(DualStatus status);

struct DualEvaluation {
  // -infinity iff status is kUnboundedBelow.
  double value = 0.0;
  // x(gamma) = -b / a when attained; the zero vector for kFlatAttained.
  std::optional<Vector> minimizer;
  DualStatus status = DualStatus::kUnboundedBelow;
};

DualEvaluation DualValue(const Problem& p, const Multipliers& gamma);

struct SolveConfig {
  double gap_tolerance = 1e-6;
  int restarts = 10;
  int iterations = 5000;
  // Step at iteration t is initial_step / sqrt(t) along the normalized
  // supergradient.
  double initial_step = 1.0;
  uint64_t seed = 0;
  Tolerances tolerances;
  // Slater search and primal fallback; its box defaults to [-10, 10]^n.
  SearchConfig search;
};

enum class SolveStatus { kCertified, kNoConvergence, kDualDivergence };

std::string_view SolveStatusName(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::kNoConvergence;
  Multipliers multipliers;
  Vector x;
  // J(x) at the returned point.
  double value = 0.0;
  double dual_value = 0.0;
  DualStatus dual_status = DualStatus::kUnboundedBelow;
  double duality_gap = 0.0;
  CheckReport report;
  Certificate certificate;
  // Restart that produced the best ascent iterate.
  int best_restart = -1;
  std::string message;
};

// A certified result has certificate.verdict GloballyOptimal or
// ConditionallyOptimal and a duality gap within cfg.gap_tolerance.
SolveResult Solve(const Problem& p, const SolveConfig& cfg = {});

// A point with max_k f_k(x) < 0, if the search finds one. Absence is not a
// proof that none exists.
std::optional<Vector> FindSlaterPoint(const Problem& p,
                                      const SearchConfig& cfg = {});

}  // namespace sqcqp

#endif  // SQCQP_DUAL_H_
