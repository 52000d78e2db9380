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

// Generalized image set of a scalar family f_0..f_m:
//
//   Omega = {(f_0(x), ..., f_m(x)) : x in R^n} + int R_+^{m+1}.
//
// Omega is convex whenever the vectors b_k span a proper subspace of R^n.
// ConvexityWitness makes that constructive: given x_v, x_w and lambda it
// returns a point x~ whose image equals the convex combination of the images
// of x_v and x_w. x~ lies on the sphere
//   ||x||^2 = lambda ||x_v||^2 + (1 - lambda) ||x_w||^2
// and differs from lambda x_v + (1 - lambda) x_w by a multiple alpha of a
// unit vector orthogonal to every b_k.

#ifndef SQCQP_GIS_H_
#define SQCQP_GIS_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sqcqp/model.h"

namespace sqcqp {

// Relative singular-value cutoff used to decide linear independence.
inline constexpr double kRankThreshold = 1e-10;

// Numerical rank of {b_k}.
int LinearRank(std::span<const Vector> bs, int n);

// A unit vector orthogonal to every b_k. Throws Error(kFullRank) when the
// b_k span R^n. For an all-zero list the result is e_1. The sign is fixed so
// that the largest-magnitude entry is positive.
Vector KernelVector(std::span<const Vector> bs, int n);

struct SphereAlpha {
  // Larger magnitude first.
  std::pair<double, double> roots;
  double discriminant = 0.0;
};

// Roots of
//   alpha^2 ||y||^2 + 2 alpha <y, lambda x_v + (1 - lambda) x_w>
//     - lambda (1 - lambda) ||x_v - x_w||^2 = 0
// and its reduced discriminant. Throws Error(kDegenerateInput) for
// x_v == x_w, y == 0 or lambda outside (0, 1).
SphereAlpha SolveSphereAlpha(const Vector& y, const Vector& x_v,
                             const Vector& x_w, double lambda);

struct WitnessResult {
  Vector x_tilde;
  std::pair<double, double> alpha_roots{0.0, 0.0};
  double chosen_alpha = 0.0;
  double discriminant = 0.0;
  Vector kernel_vector;
  // slacks[k] = lambda f_k(x_v) + (1 - lambda) f_k(x_w) - f_k(x_tilde).
  std::vector<double> slacks;
  int rank = 0;
};

WitnessResult ConvexityWitness(std::span<const ScalarQuadratic> fs,
                               const Vector& x_v, const Vector& x_w,
                               double lambda);

// Residuals of the three witness invariants for an arbitrary candidate.
struct WitnessCheck {
  double min_slack = 0.0;
  double max_abs_slack = 0.0;
  // | ||x~||^2 - (lambda ||x_v||^2 + (1 - lambda) ||x_w||^2) |.
  double sphere_error = 0.0;
  // max_k |<b_k, x~ - (lambda x_v + (1 - lambda) x_w)>|.
  double kernel_error = 0.0;
};

WitnessCheck CheckWitness(std::span<const ScalarQuadratic> fs,
                          const Vector& x_v, const Vector& x_w, double lambda,
                          const Vector& x_tilde);

struct SampleConfig {
  int count = 1000;
  // Samples are uniform in [-box, box]^n.
  double box = 1.0;
  // Positive jitter drawn from (1e-12, shift] per coordinate; 0 disables it.
  double shift = 0.0;
  uint64_t seed = 0;
};

// Image points (f_0(x), ..., f_m(x)) for uniform samples x, each optionally
// pushed into the open positive orthant by the jitter.
std::vector<Vector> SampleImage(std::span<const ScalarQuadratic> fs,
                                const SampleConfig& cfg);

}  // namespace sqcqp

#endif  // SQCQP_GIS_H_
