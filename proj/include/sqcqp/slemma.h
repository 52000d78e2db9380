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

// The alternative for a family of scalar quadratics f_0..f_m:
// exactly one of
//   (i)  some x has f_k(x) < 0 for every k, or
//   (ii) some gamma >= 0, gamma != 0, has sum_k gamma_k f_k(x) >= 0 for all x
// holds whenever the generalized image set is convex. Both sides are searched
// for and every returned artifact is verified.

#ifndef SQCQP_SLEMMA_H_
#define SQCQP_SLEMMA_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "sqcqp/model.h"
#include "sqcqp/search.h"

namespace sqcqp {

// min_x sum_k gamma_k f_k(x): c - ||b||^2 / a for a > 0, c when a = 0 and
// b = 0, and -infinity otherwise, where (a, b, c) = sum_k gamma_k (a_k, b_k,
// c_k). No validation of gamma.
double NonnegativityMargin(std::span<const ScalarQuadratic> fs,
                           const Vector& gamma);

// Exact test of sum_k gamma_k f_k >= 0 on all of R^n. Throws
// kNegativeMultiplier, kAllZeroMultipliers or kDimension on bad gamma.
bool NonnegativityCertificate(std::span<const ScalarQuadratic> fs,
                              const Vector& gamma);

std::optional<Vector> FindStrictPoint(std::span<const ScalarQuadratic> fs,
                                      const SearchConfig& cfg = {});

struct MultiplierSearchResult {
  // Best weights on the unit simplex and their margin.
  Vector best;
  double best_margin = 0.0;
  bool certified = false;
  int64_t evaluations = 0;
};

// Maximizes NonnegativityMargin over the unit simplex: exhaustive grid, then
// pairwise mass-transfer refinement, plus an exact solve for weights that
// cancel both the curvature and the linear term.
MultiplierSearchResult MaximizeMargin(std::span<const ScalarQuadratic> fs,
                                      const SearchConfig& cfg = {});

std::optional<Vector> SearchMultiplier(std::span<const ScalarQuadratic> fs,
                                       const SearchConfig& cfg = {});

enum class AlternativeOutcome { kStrictPointFound, kMultiplierFound, kUndecided };

std::string_view AlternativeOutcomeName(AlternativeOutcome outcome);

struct AlternativeVerdict {
  AlternativeOutcome outcome = AlternativeOutcome::kUndecided;
  std::optional<Vector> strict_point;
  // Weights over all functionals of the family, normalized to sum to 1.
  std::optional<Vector> multiplier;
  double best_max_value = 0.0;
  double best_margin = 0.0;
  int64_t strict_evaluations = 0;
  int64_t multiplier_evaluations = 0;
  // Rank of {b_k} and whether it is below n. Exclusivity is only guaranteed
  // when it is.
  int rank = 0;
  bool rank_condition = false;
};

// Throws Error(kInternalContradiction) if both a verified strict point and a
// verified multiplier turn up.
AlternativeVerdict Alternative(std::span<const ScalarQuadratic> fs,
                               const SearchConfig& cfg = {});

}  // namespace sqcqp

#endif  // SQCQP_SLEMMA_H_
