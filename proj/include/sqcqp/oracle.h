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

// Brute-force ground truth for small instances. Nothing here is used by the
// solver; it exists to check it.

#ifndef SQCQP_ORACLE_H_
#define SQCQP_ORACLE_H_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sqcqp/model.h"

namespace sqcqp {

inline constexpr int64_t kMaxGridPoints = 100'000'000;
// Grid points with max_k f_k <= this count as feasible.
inline constexpr double kGridFeasibilitySlack = 1e-9;

struct GridSpec {
  std::vector<std::pair<double, double>> box;
  int points_per_axis = 2;

  static GridSpec Cube(int n, double half_width, int points_per_axis);
  int64_t TotalPoints() const;
};

struct GridMinimum {
  bool feasible = false;
  Vector x;
  double value = 0.0;
  // Best grid point before refinement.
  Vector grid_x;
  double grid_value = 0.0;
};

// Smallest objective over feasible grid points, then refined by coordinate
// descent with 20 step halvings. Infeasible moves are pulled back towards
// the most strictly feasible grid point by bisection. Throws
// Error(kGridTooLarge) above kMaxGridPoints.
GridMinimum GridMinimize(const Problem& p, const GridSpec& g);

// The grid point with the most negative value of q, if below -1e-12.
std::optional<Vector> GridRefuteNonneg(const ScalarQuadratic& q,
                                       const GridSpec& g);

}  // namespace sqcqp

#endif  // SQCQP_ORACLE_H_
