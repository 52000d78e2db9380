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

#include "sqcqp/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sqcqp/errors.h"

namespace sqcqp {
namespace {

void ValidateGrid(const GridSpec& g, int n) {
  if (static_cast<int>(g.box.size()) != n) {
    throw Error(ErrorCode::kDimension, "grid box has " +
                                           std::to_string(g.box.size()) +
                                           " intervals, expected " +
                                           std::to_string(n));
  }
  if (g.points_per_axis < 2) {
    throw Error(ErrorCode::kValidation, "grid needs at least 2 points per axis");
  }
  for (const auto& [lo, hi] : g.box) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi)) {
      throw Error(ErrorCode::kValidation, "grid interval is invalid");
    }
  }
  if (g.TotalPoints() > kMaxGridPoints) {
    throw Error(ErrorCode::kGridTooLarge,
                std::to_string(g.points_per_axis) + "^" + std::to_string(n) +
                    " grid points exceed the limit of " +
                    std::to_string(kMaxGridPoints));
  }
}

// Visits grid points in lexicographic order of their index tuple (last axis
// fastest).
template <typename Visit>
void ForEachGridPoint(const GridSpec& g, Visit&& visit) {
  const int n = static_cast<int>(g.box.size());
  const int pts = g.points_per_axis;
  std::vector<int> idx(n, 0);
  Vector x(n);
  auto coord = [&](int axis, int i) {
    const auto& [lo, hi] = g.box[axis];
    return lo + (hi - lo) * static_cast<double>(i) / (pts - 1);
  };
  for (int j = 0; j < n; ++j) x[j] = coord(j, 0);
  while (true) {
    visit(x);
    int axis = n - 1;
    while (axis >= 0 && ++idx[axis] == pts) {
      idx[axis] = 0;
      x[axis] = coord(axis, 0);
      --axis;
    }
    if (axis < 0) return;
    x[axis] = coord(axis, idx[axis]);
  }
}

double MaxConstraint(const Problem& p, const Vector& x) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& f : p.constraints()) worst = std::max(worst, Eval(f, x));
  return worst;
}

bool Feasible(const Problem& p, const Vector& x) {
  return MaxConstraint(p, x) <= kGridFeasibilitySlack;
}

// Furthest feasible point on the segment from a feasible point to target.
Vector PullBack(const Problem& p, const Vector& anchor, const Vector& target) {
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (Feasible(p, anchor + mid * (target - anchor))) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return anchor + lo * (target - anchor);
}

// Gauss-Newton steps on the most violated constraint. Returns nullopt when
// feasibility is not restored.
std::optional<Vector> Restore(const Problem& p, Vector x) {
  for (int it = 0; it < 8; ++it) {
    int worst = -1;
    double worst_value = kGridFeasibilitySlack;
    for (int k = 0; k < p.m(); ++k) {
      const double v = Eval(p.constraint(k), x);
      if (v > worst_value) {
        worst_value = v;
        worst = k;
      }
    }
    if (worst < 0) return x;
    const Vector g = Grad(p.constraint(worst), x);
    const double g2 = g.squaredNorm();
    if (g2 == 0.0) return std::nullopt;
    x -= (worst_value / g2) * g;
  }
  if (Feasible(p, x)) return x;
  return std::nullopt;
}

}  // namespace

GridSpec GridSpec::Cube(int n, double half_width, int points_per_axis) {
  GridSpec g;
  g.box.assign(n, {-half_width, half_width});
  g.points_per_axis = points_per_axis;
  return g;
}

int64_t GridSpec::TotalPoints() const {
  int64_t total = 1;
  for (size_t i = 0; i < box.size(); ++i) {
    total *= points_per_axis;
    if (total > kMaxGridPoints) return kMaxGridPoints + 1;
  }
  return total;
}

GridMinimum GridMinimize(const Problem& p, const GridSpec& g) {
  const int n = p.n();
  ValidateGrid(g, n);
  GridMinimum out;
  ForEachGridPoint(g, [&](const Vector& x) {
    if (!Feasible(p, x)) return;
    const double v = Eval(p.objective(), x);
    if (!out.feasible || v < out.grid_value) {
      out.feasible = true;
      out.grid_value = v;
      out.grid_x = x;
    }
  });
  if (!out.feasible) return out;

  Vector x = out.grid_x;
  double value = out.grid_value;
  double step = 0.0;
  for (const auto& [lo, hi] : g.box) {
    step = std::max(step, (hi - lo) / (g.points_per_axis - 1));
  }
  for (int halving = 0; halving < 20; ++halving) {
    bool improved = true;
    for (int sweep = 0; sweep < 100 && improved; ++sweep) {
      improved = false;
      for (int i = 0; i < n; ++i) {
        for (double sign : {1.0, -1.0}) {
          Vector trial = x;
          trial[i] += sign * step;
          std::vector<Vector> candidates;
          if (Feasible(p, trial)) {
            candidates.push_back(trial);
          } else {
            if (auto restored = Restore(p, trial)) {
              candidates.push_back(std::move(*restored));
            }
            candidates.push_back(PullBack(p, x, trial));
          }
          for (auto& cand : candidates) {
            const double v = Eval(p.objective(), cand);
            if (v < value && Feasible(p, cand)) {
              x = std::move(cand);
              value = v;
              improved = true;
              break;
            }
          }
        }
      }
    }
    step *= 0.5;
  }
  out.x = x;
  out.value = value;
  return out;
}

std::optional<Vector> GridRefuteNonneg(const ScalarQuadratic& q,
                                       const GridSpec& g) {
  ValidateGrid(g, q.dim());
  std::optional<Vector> best;
  double best_value = -1e-12;
  ForEachGridPoint(g, [&](const Vector& x) {
    const double v = Eval(q, x);
    if (v < best_value) {
      best_value = v;
      best = x;
    }
  });
  return best;
}

}  // namespace sqcqp
