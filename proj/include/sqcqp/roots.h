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

#ifndef SQCQP_ROOTS_H_
#define SQCQP_ROOTS_H_

#include <cmath>
#include <optional>
#include <utility>

namespace sqcqp {

struct QuadraticRoots {
  // |first| >= |second|.
  double first = 0.0;
  double second = 0.0;
  // Reduced discriminant half_b^2 - a c.
  double discriminant = 0.0;
};

// Real roots of a t^2 + 2 half_b t + c = 0 with a != 0, or nothing when the
// discriminant is negative. The larger-magnitude root is formed without
// cancellation and the other one from the product of roots c / a. A zero
// half_b is treated as negative so that the symmetric case returns the
// positive root first.
inline std::optional<QuadraticRoots> SolveQuadratic(double a, double half_b,
                                                    double c) {
  const double disc = half_b * half_b - a * c;
  if (disc < 0.0) return std::nullopt;
  const double sign = half_b > 0.0 ? 1.0 : -1.0;
  const double q = -(half_b + sign * std::sqrt(disc));
  QuadraticRoots r;
  r.discriminant = disc;
  if (q == 0.0) return r;  // half_b = c = 0: double root at zero.
  r.first = q / a;
  r.second = c / q;
  if (std::abs(r.second) > std::abs(r.first)) std::swap(r.first, r.second);
  return r;
}

}  // namespace sqcqp

#endif  // SQCQP_ROOTS_H_
