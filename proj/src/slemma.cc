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

#include "sqcqp/slemma.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "Eigen/QR"
#include "sqcqp/errors.h"
#include "sqcqp/gis.h"

namespace sqcqp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int DefaultResolution(int d) {
  if (d <= 3) return 200;
  if (d == 4) return 60;
  if (d == 5) return 24;
  if (d <= 7) return 12;
  return 4;
}

// Calls visit(gamma) for every point of the simplex grid with the given
// resolution, in lexicographic order of the integer weights.
template <typename Visit>
void ForEachSimplexPoint(int d, int resolution, Visit&& visit) {
  std::vector<int> counts(d, 0);
  Vector gamma(d);
  // Recursive assignment of the remaining mass.
  auto rec = [&](auto&& self, int i, int remaining) -> void {
    if (i == d - 1) {
      counts[i] = remaining;
      for (int j = 0; j < d; ++j) {
        gamma[j] = static_cast<double>(counts[j]) / resolution;
      }
      visit(gamma);
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      counts[i] = c;
      self(self, i + 1, remaining - c);
    }
  };
  rec(rec, 0, resolution);
}

// Pairwise mass transfer with a halving step.
void Refine(std::span<const ScalarQuadratic> fs, Vector& gamma, double& margin,
            double step, int64_t& evaluations) {
  const int d = static_cast<int>(gamma.size());
  while (step > 1e-13) {
    bool improved = false;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (i == j || gamma[i] <= 0.0) continue;
        const double move = std::min(step, gamma[i]);
        Vector trial = gamma;
        trial[i] -= move;
        trial[j] += move;
        const double m = NonnegativityMargin(fs, trial);
        ++evaluations;
        if (m > margin) {
          gamma = std::move(trial);
          margin = m;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
}

// Weights with sum gamma_k (a_k, b_k) = 0 and sum gamma_k = 1 make the
// combination constant. Such points have measure zero on the simplex, so they
// are solved for directly on every support.
void FlatCandidates(std::span<const ScalarQuadratic> fs, int n,
                    MultiplierSearchResult& result) {
  const int d = static_cast<int>(fs.size());
  if (d > 12) return;
  for (uint32_t mask = 1; mask < (1u << d); ++mask) {
    std::vector<int> support;
    for (int k = 0; k < d; ++k) {
      if (mask & (1u << k)) support.push_back(k);
    }
    const int s = static_cast<int>(support.size());
    Matrix system(n + 2, s);
    Vector rhs = Vector::Zero(n + 2);
    rhs[n + 1] = 1.0;
    for (int j = 0; j < s; ++j) {
      const ScalarQuadratic& f = fs[support[j]];
      system(0, j) = f.a;
      system.block(1, j, n, 1) = f.b;
      system(n + 1, j) = 1.0;
    }
    const Vector sol = system.completeOrthogonalDecomposition().solve(rhs);
    const double scale = 1.0 + system.cwiseAbs().maxCoeff();
    if ((system * sol - rhs).lpNorm<Eigen::Infinity>() > 1e-12 * scale) continue;
    if (sol.minCoeff() < -1e-14) continue;
    Vector gamma = Vector::Zero(d);
    for (int j = 0; j < s; ++j) gamma[support[j]] = std::max(sol[j], 0.0);
    gamma /= gamma.sum();
    const double m = NonnegativityMargin(fs, gamma);
    ++result.evaluations;
    if (m > result.best_margin) {
      result.best_margin = m;
      result.best = gamma;
    }
  }
}

int FamilyDim(std::span<const ScalarQuadratic> fs) {
  if (fs.empty()) throw Error(ErrorCode::kDimension, "empty family");
  const int n = fs.front().dim();
  for (const auto& f : fs) {
    if (f.dim() != n) {
      throw Error(ErrorCode::kDimension, "functionals differ in dimension");
    }
  }
  return n;
}

}  // namespace

double NonnegativityMargin(std::span<const ScalarQuadratic> fs,
                           const Vector& gamma) {
  // Cancellation to within rounding of the summands counts as exact zero.
  constexpr double kSnap = 1e-13;
  double a = 0.0;
  double c = 0.0;
  double a_scale = 0.0;
  double b_scale = 0.0;
  Vector b = Vector::Zero(fs.front().dim());
  for (size_t k = 0; k < fs.size(); ++k) {
    const double g = gamma[static_cast<int>(k)];
    if (g == 0.0) continue;
    a += g * fs[k].a;
    b += g * fs[k].b;
    c += g * fs[k].c;
    a_scale += std::abs(g * fs[k].a);
    b_scale += g * fs[k].b.lpNorm<Eigen::Infinity>();
  }
  if (std::abs(a) <= kSnap * a_scale) a = 0.0;
  const bool b_zero = b.lpNorm<Eigen::Infinity>() <= kSnap * b_scale;
  if (a > 0.0) return c - b.squaredNorm() / a;
  if (a == 0.0 && b_zero) return c;
  return -kInf;
}

bool NonnegativityCertificate(std::span<const ScalarQuadratic> fs,
                              const Vector& gamma) {
  FamilyDim(fs);
  if (gamma.size() != static_cast<int>(fs.size())) {
    throw Error(ErrorCode::kDimension,
                "expected " + std::to_string(fs.size()) + " weights, got " +
                    std::to_string(gamma.size()));
  }
  for (int k = 0; k < gamma.size(); ++k) {
    if (gamma[k] < 0.0) {
      throw Error(ErrorCode::kNegativeMultiplier,
                  "weight " + std::to_string(k) + " is negative");
    }
  }
  if (gamma.maxCoeff() == 0.0) {
    throw Error(ErrorCode::kAllZeroMultipliers, "all weights are zero");
  }
  return NonnegativityMargin(fs, gamma) >= 0.0;
}

std::optional<Vector> FindStrictPoint(std::span<const ScalarQuadratic> fs,
                                      const SearchConfig& cfg) {
  const int n = FamilyDim(fs);
  const auto functionals = MakeFunctionals(fs);
  return FindStrictPointOf(functionals, n, cfg);
}

MultiplierSearchResult MaximizeMargin(std::span<const ScalarQuadratic> fs,
                                      const SearchConfig& cfg) {
  const int n = FamilyDim(fs);
  const int d = static_cast<int>(fs.size());
  const int resolution =
      cfg.simplex_resolution > 0 ? cfg.simplex_resolution : DefaultResolution(d);

  MultiplierSearchResult result;
  result.best = Vector::Unit(d, 0);
  result.best_margin = -kInf;

  // Keep the few best grid points as refinement seeds.
  constexpr int kSeeds = 4;
  std::vector<std::pair<double, Vector>> seeds;
  ForEachSimplexPoint(d, resolution, [&](const Vector& gamma) {
    const double m = NonnegativityMargin(fs, gamma);
    ++result.evaluations;
    if (m == -kInf) return;
    if (static_cast<int>(seeds.size()) < kSeeds || m > seeds.back().first) {
      auto pos = std::upper_bound(
          seeds.begin(), seeds.end(), m,
          [](double v, const auto& entry) { return v > entry.first; });
      seeds.insert(pos, {m, gamma});
      if (static_cast<int>(seeds.size()) > kSeeds) seeds.pop_back();
    }
  });

  for (auto& [margin, gamma] : seeds) {
    Refine(fs, gamma, margin, 1.0 / resolution, result.evaluations);
    if (margin > result.best_margin) {
      result.best_margin = margin;
      result.best = gamma;
    }
  }
  FlatCandidates(fs, n, result);
  result.certified = result.best_margin >= 0.0 &&
                     NonnegativityCertificate(fs, result.best);
  return result;
}

std::optional<Vector> SearchMultiplier(std::span<const ScalarQuadratic> fs,
                                       const SearchConfig& cfg) {
  MultiplierSearchResult r = MaximizeMargin(fs, cfg);
  if (!r.certified) return std::nullopt;
  return r.best;
}

std::string_view AlternativeOutcomeName(AlternativeOutcome outcome) {
  switch (outcome) {
    case AlternativeOutcome::kStrictPointFound:
      return "StrictPointFound";
    case AlternativeOutcome::kMultiplierFound:
      return "MultiplierFound";
    case AlternativeOutcome::kUndecided:
      return "Undecided";
  }
  return "Undecided";
}

AlternativeVerdict Alternative(std::span<const ScalarQuadratic> fs,
                               const SearchConfig& cfg) {
  const int n = FamilyDim(fs);
  AlternativeVerdict verdict;
  std::vector<Vector> bs;
  for (const auto& f : fs) bs.push_back(f.b);
  verdict.rank = LinearRank(bs, n);
  verdict.rank_condition = verdict.rank < n;

  const auto functionals = MakeFunctionals(fs);
  const MaxSearchResult strict = MinimizeMax(functionals, n, cfg);
  verdict.best_max_value = strict.best_value;
  verdict.strict_evaluations = strict.evaluations;

  const MultiplierSearchResult mult = MaximizeMargin(fs, cfg);
  verdict.best_margin = mult.best_margin;
  verdict.multiplier_evaluations = mult.evaluations;

  if (strict.strict && mult.certified) {
    throw Error(ErrorCode::kInternalContradiction,
                "both a strict point (max f_k = " +
                    std::to_string(strict.best_value) +
                    ") and a nonnegative combination (margin " +
                    std::to_string(mult.best_margin) + ") were verified");
  }
  if (strict.strict) {
    verdict.outcome = AlternativeOutcome::kStrictPointFound;
    verdict.strict_point = strict.best_point;
  } else if (mult.certified) {
    verdict.outcome = AlternativeOutcome::kMultiplierFound;
    verdict.multiplier = mult.best;
  }
  return verdict;
}

}  // namespace sqcqp
