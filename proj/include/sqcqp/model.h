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

// Core types for quadratically constrained problems whose quadratic terms are
// scalar multiples of the squared norm:
//
//   minimize    J(x)   = a_J ||x||^2 + 2 <b_J, x> + c_J
//   subject to  f_k(x) = a_k ||x||^2 + 2 <b_k, x> + c_k <= 0,  k = 1..m.
//
// Note the factor 2 on every linear term; all modules rely on it.

#ifndef SQCQP_MODEL_H_
#define SQCQP_MODEL_H_

#include <optional>
#include <string_view>
#include <vector>

#include "Eigen/Core"

namespace sqcqp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// f(x) = a ||x||^2 + 2 <b, x> + c.
struct ScalarQuadratic {
  double a = 0.0;
  Vector b;
  double c = 0.0;

  int dim() const { return static_cast<int>(b.size()); }
};

// An objective plus m >= 1 constraints, all sharing dimension n. The
// constructor validates; a constructed Problem always satisfies its
// invariants.
class Problem {
 public:
  Problem(ScalarQuadratic objective, std::vector<ScalarQuadratic> constraints);

  int n() const { return objective_.dim(); }
  int m() const { return static_cast<int>(constraints_.size()); }
  const ScalarQuadratic& objective() const { return objective_; }
  const std::vector<ScalarQuadratic>& constraints() const {
    return constraints_;
  }
  const ScalarQuadratic& constraint(int k) const { return constraints_[k]; }

 private:
  ScalarQuadratic objective_;
  std::vector<ScalarQuadratic> constraints_;
};

// Nonnegative multipliers, one per constraint. gamma0 is present only in
// Fritz-John form, where it weights the objective.
struct Multipliers {
  Vector gamma;
  std::optional<double> gamma0;
};

struct Tolerances {
  double stationarity = 1e-8;
  double complementarity = 1e-8;
  double feasibility = 1e-8;
  // Aggregated curvature may dip this far below zero.
  double curvature = 1e-10;
};

enum class Verdict {
  kGloballyOptimal,
  kConditionallyOptimal,
  kFritzJohnOnly,
  kRejected,
};

std::string_view VerdictName(Verdict verdict);

struct Certificate {
  Vector point;
  Multipliers multipliers;
  double stationarity_residual = 0.0;
  double complementarity_residual = 0.0;
  double feasibility_residual = 0.0;
  double aggregated_curvature = 0.0;
  Verdict verdict = Verdict::kRejected;
  Tolerances tolerances;
};

// Throws Error(kNonFiniteEntry) when any coefficient is NaN or infinite.
void ValidateFinite(const ScalarQuadratic& q, std::string_view what);

double Eval(const ScalarQuadratic& q, const Vector& x);

// 2 a x + 2 b.
Vector Grad(const ScalarQuadratic& q, const Vector& x);

// Lagrangian coefficients (gamma0 a_J + sum gamma_k a_k, ...), with gamma0
// taken as 1 when absent.
ScalarQuadratic Aggregate(const Problem& p, const Multipliers& m);

// J - optimal_value; only c changes.
ScalarQuadratic ShiftObjective(const Problem& p, double optimal_value);

// The family (J, f_1, ..., f_m).
std::vector<ScalarQuadratic> AllFunctionals(const Problem& p);

// Validates that gamma has the expected length and no negative entries.
void ValidateMultipliers(const Multipliers& m, int expected_count);

}  // namespace sqcqp

#endif  // SQCQP_MODEL_H_
