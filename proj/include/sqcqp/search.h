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

// Global search for a point where a finite family of smooth functionals is
// strictly negative. This engine backs both the Slater point search of the
// dual solver and the strict point search of the alternative.

#ifndef SQCQP_SEARCH_H_
#define SQCQP_SEARCH_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sqcqp/model.h"

namespace sqcqp {

struct SearchConfig {
  // Sampling box [-box, box]^n.
  double box = 10.0;
  // Number of low-discrepancy samples.
  int samples = 2048;
  // Local descents, started from the best samples.
  int starts = 8;
  // Descent iterations per smoothing level.
  int descent_iterations = 200;
  uint64_t seed = 0;
  // A point is accepted as strict when max_k f_k(x) < -strict_margin.
  double strict_margin = 1e-12;
  // Simplex grid resolution for multiplier search; 0 picks a default from the
  // number of functionals.
  int simplex_resolution = 0;
};

// Returns f(x) and, when grad is non-null, writes the gradient into it.
using Functional = std::function<double(const Vector& x, Vector* grad)>;

Functional MakeFunctional(const ScalarQuadratic& q);

struct MaxSearchResult {
  Vector best_point;
  // max_k f_k(best_point); -infinity for an empty family.
  double best_value = 0.0;
  bool strict = false;
  int64_t evaluations = 0;
};

// Minimizes phi(x) = max_k f_k(x) by Halton sampling followed by descent on a
// log-sum-exp smoothing of phi with a decreasing temperature. Stops as soon
// as a strict point is found.
MaxSearchResult MinimizeMax(std::span<const Functional> fs, int n,
                            const SearchConfig& cfg);

// Convenience wrapper: a verified strict point or nothing.
std::optional<Vector> FindStrictPointOf(std::span<const Functional> fs, int n,
                                        const SearchConfig& cfg);

std::vector<Functional> MakeFunctionals(std::span<const ScalarQuadratic> qs);

// Radical-inverse Halton point `index` in [0,1)^dim with a Cranley-Patterson
// shift drawn from `seed`.
class HaltonSequence {
 public:
  HaltonSequence(int dim, uint64_t seed);
  Vector Point(int64_t index) const;

 private:
  std::vector<int> bases_;
  std::vector<double> shift_;
};

}  // namespace sqcqp

#endif  // SQCQP_SEARCH_H_
