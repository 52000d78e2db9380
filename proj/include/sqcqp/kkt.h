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

// Certificate checking for candidate global minimizers.
//
// For the scalar class the three conditions
//   (i)   grad of J + sum gamma_k f_k vanishes at x*,
//   (ii)  gamma_k f_k(x*) = 0 for every k,
//   (iii) a_J + sum gamma_k a_k >= 0,
// together with primal feasibility are sufficient for global optimality, and
// necessary once a Slater point exists. Without a Slater point the verdict is
// downgraded to ConditionallyOptimal.

#ifndef SQCQP_KKT_H_
#define SQCQP_KKT_H_

#include <optional>
#include <string>
#include <vector>

#include "sqcqp/model.h"
#include "sqcqp/search.h"

namespace sqcqp {

struct CheckReport {
  // Infinity norm of the Lagrangian gradient at x.
  double stationarity_residual = 0.0;
  // max_k |gamma_k f_k(x)|.
  double complementarity_residual = 0.0;
  // max_k max(f_k(x), 0).
  double feasibility_residual = 0.0;
  // Aggregated curvature, or the smallest eigenvalue of A(gamma) for matrix
  // problems.
  double curvature_margin = 0.0;
  std::optional<Vector> slater_point;
  Verdict verdict = Verdict::kRejected;
  std::string note;
};

struct SlaterOptions {
  // Checked first; used when it is strictly feasible.
  std::optional<Vector> hint;
  // When false and the hint fails, no search is attempted.
  bool search = true;
  SearchConfig search_config;
};

CheckReport CheckKkt(const Problem& p, const Vector& x, const Multipliers& m,
                     const Tolerances& tol = {},
                     const SlaterOptions& slater = {});

// gamma0 must be present. Satisfied with gamma0 = 0 yields FritzJohnOnly;
// with gamma0 > 0 the multipliers are rescaled and judged as KKT.
CheckReport CheckFritzJohn(const Problem& p, const Vector& x,
                           const Multipliers& m, const Tolerances& tol = {},
                           const SlaterOptions& slater = {});

// <x, A x> + 2 <b, x> + c with A symmetric.
struct GeneralQuadratic {
  Matrix A;
  Vector b;
  double c = 0.0;
};

// Matrix-valued generalization. Constraints may be empty. Matrices are
// symmetrized as (M + M^T) / 2 on construction.
class GeneralProblem {
 public:
  GeneralProblem(GeneralQuadratic objective,
                 std::vector<GeneralQuadratic> constraints);

  int n() const { return static_cast<int>(objective_.b.size()); }
  int m() const { return static_cast<int>(constraints_.size()); }
  const GeneralQuadratic& objective() const { return objective_; }
  const std::vector<GeneralQuadratic>& constraints() const {
    return constraints_;
  }

 private:
  GeneralQuadratic objective_;
  std::vector<GeneralQuadratic> constraints_;
};

// Embeds a scalar problem as a I matrices.
GeneralProblem EmbedAsMatrix(const Problem& p);

double Eval(const GeneralQuadratic& q, const Vector& x);
Vector Grad(const GeneralQuadratic& q, const Vector& x);

// Curvature is tested through the smallest eigenvalue of A_J + sum gamma_k
// A_k. Convexity of the generalized image set is assumed, not verified; the
// note says so.
CheckReport CheckKktGeneral(const GeneralProblem& p, const Vector& x,
                            const Multipliers& m, const Tolerances& tol = {},
                            const SlaterOptions& slater = {});

Certificate MakeCertificate(const Vector& x, const Multipliers& m,
                            const CheckReport& report, const Tolerances& tol);

}  // namespace sqcqp

#endif  // SQCQP_KKT_H_
