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

#include "sqcqp/kkt.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "Eigen/Eigenvalues"
#include "sqcqp/errors.h"

namespace sqcqp {
namespace {

void CheckPointDim(const Vector& x, int n) {
  if (x.size() != n) {
    throw Error(ErrorCode::kDimension, "candidate has length " +
                                           std::to_string(x.size()) +
                                           ", expected " + std::to_string(n));
  }
  if (!x.allFinite()) {
    throw Error(ErrorCode::kNonFiniteEntry, "candidate is not finite");
  }
}

bool ConditionsHold(const CheckReport& r, const Tolerances& tol) {
  return r.stationarity_residual <= tol.stationarity &&
         r.complementarity_residual <= tol.complementarity &&
         r.feasibility_residual <= tol.feasibility &&
         r.curvature_margin >= -tol.curvature;
}

std::optional<Vector> ResolveSlater(std::span<const Functional> constraints,
                                    int n, const SlaterOptions& opts) {
  if (opts.hint) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& f : constraints) worst = std::max(worst, f(*opts.hint, nullptr));
    if (opts.hint->size() == n && worst < 0.0) return opts.hint;
  }
  if (!opts.search) return std::nullopt;
  return FindStrictPointOf(constraints, n, opts.search_config);
}

// Residuals (i)-(iii) for a weighted combination; shared by the KKT and
// Fritz-John checks.
template <typename Quadratic>
CheckReport Residuals(const Quadratic& objective,
                      const std::vector<Quadratic>& constraints,
                      const Vector& x, double w0, const Vector& gamma,
                      Vector& lagrangian_grad) {
  CheckReport r;
  lagrangian_grad = w0 * Grad(objective, x);
  for (size_t k = 0; k < constraints.size(); ++k) {
    const double gk = gamma[static_cast<int>(k)];
    const double fk = Eval(constraints[k], x);
    if (gk != 0.0) lagrangian_grad += gk * Grad(constraints[k], x);
    r.complementarity_residual =
        std::max(r.complementarity_residual, std::abs(gk * fk));
    r.feasibility_residual = std::max(r.feasibility_residual, std::max(fk, 0.0));
  }
  r.stationarity_residual =
      lagrangian_grad.size() == 0 ? 0.0 : lagrangian_grad.lpNorm<Eigen::Infinity>();
  return r;
}

void AssignKktVerdict(CheckReport& r, const Tolerances& tol,
                      std::span<const Functional> constraints, int n,
                      const SlaterOptions& slater) {
  if (!ConditionsHold(r, tol)) {
    r.verdict = Verdict::kRejected;
    r.note = "certificate conditions violated";
    return;
  }
  r.slater_point = ResolveSlater(constraints, n, slater);
  if (r.slater_point) {
    r.verdict = Verdict::kGloballyOptimal;
  } else {
    r.verdict = Verdict::kConditionallyOptimal;
    r.note = "no Slater point supplied or found; sufficiency is conditional";
  }
}

Matrix Symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

void ValidateGeneral(const GeneralQuadratic& q, int n, const std::string& what) {
  if (q.A.rows() != n || q.A.cols() != n || q.b.size() != n) {
    throw Error(ErrorCode::kDimension, what + " does not match dimension " +
                                           std::to_string(n));
  }
  if (!q.A.allFinite() || !q.b.allFinite() || !std::isfinite(q.c)) {
    throw Error(ErrorCode::kNonFiniteEntry, what + " has a non-finite entry");
  }
}

}  // namespace

CheckReport CheckKkt(const Problem& p, const Vector& x, const Multipliers& m,
                     const Tolerances& tol, const SlaterOptions& slater) {
  if (m.gamma0) {
    throw Error(ErrorCode::kValidation,
                "KKT check takes multipliers without gamma0");
  }
  ValidateMultipliers(m, p.m());
  CheckPointDim(x, p.n());
  Vector g;
  CheckReport r = Residuals(p.objective(), p.constraints(), x, 1.0, m.gamma, g);
  r.curvature_margin = Aggregate(p, m).a;
  const auto fs = MakeFunctionals(p.constraints());
  AssignKktVerdict(r, tol, fs, p.n(), slater);
  return r;
}

CheckReport CheckFritzJohn(const Problem& p, const Vector& x,
                           const Multipliers& m, const Tolerances& tol,
                           const SlaterOptions& slater) {
  if (!m.gamma0) {
    throw Error(ErrorCode::kValidation, "Fritz-John check requires gamma0");
  }
  ValidateMultipliers(m, p.m());
  if (*m.gamma0 == 0.0 && (m.gamma.size() == 0 || m.gamma.maxCoeff() == 0.0)) {
    throw Error(ErrorCode::kAllZeroMultipliers,
                "(gamma0, gamma) must not be all zero");
  }
  CheckPointDim(x, p.n());
  Vector g;
  CheckReport r =
      Residuals(p.objective(), p.constraints(), x, *m.gamma0, m.gamma, g);
  r.curvature_margin = Aggregate(p, m).a;
  if (!ConditionsHold(r, tol)) {
    r.verdict = Verdict::kRejected;
    r.note = "Fritz-John conditions violated";
    return r;
  }
  if (*m.gamma0 == 0.0) {
    r.verdict = Verdict::kFritzJohnOnly;
    r.note = "satisfied with gamma0 = 0; no information about the objective";
    return r;
  }
  // gamma0 > 0: rescale to KKT form.
  const Multipliers kkt{m.gamma / *m.gamma0, std::nullopt};
  const CheckReport normalized = CheckKkt(p, x, kkt, tol, slater);
  r.verdict = normalized.verdict;
  r.slater_point = normalized.slater_point;
  r.note = normalized.note;
  return r;
}

GeneralProblem::GeneralProblem(GeneralQuadratic objective,
                               std::vector<GeneralQuadratic> constraints)
    : objective_(std::move(objective)), constraints_(std::move(constraints)) {
  const int dim = n();
  if (dim < 1) {
    throw Error(ErrorCode::kDimension, "problem dimension must be positive");
  }
  ValidateGeneral(objective_, dim, "objective");
  objective_.A = Symmetrize(objective_.A);
  for (size_t k = 0; k < constraints_.size(); ++k) {
    ValidateGeneral(constraints_[k], dim, "constraint " + std::to_string(k));
    constraints_[k].A = Symmetrize(constraints_[k].A);
  }
}

GeneralProblem EmbedAsMatrix(const Problem& p) {
  const int n = p.n();
  auto embed = [n](const ScalarQuadratic& q) {
    return GeneralQuadratic{q.a * Matrix::Identity(n, n), q.b, q.c};
  };
  std::vector<GeneralQuadratic> cs;
  for (const auto& f : p.constraints()) cs.push_back(embed(f));
  return GeneralProblem(embed(p.objective()), std::move(cs));
}

double Eval(const GeneralQuadratic& q, const Vector& x) {
  if (x.size() != q.b.size()) {
    throw Error(ErrorCode::kDimension, "point does not match dimension");
  }
  return x.dot(q.A * x) + 2.0 * q.b.dot(x) + q.c;
}

Vector Grad(const GeneralQuadratic& q, const Vector& x) {
  if (x.size() != q.b.size()) {
    throw Error(ErrorCode::kDimension, "point does not match dimension");
  }
  return 2.0 * (q.A * x) + 2.0 * q.b;
}

CheckReport CheckKktGeneral(const GeneralProblem& p, const Vector& x,
                            const Multipliers& m, const Tolerances& tol,
                            const SlaterOptions& slater) {
  if (m.gamma0) {
    throw Error(ErrorCode::kValidation,
                "KKT check takes multipliers without gamma0");
  }
  ValidateMultipliers(m, p.m());
  CheckPointDim(x, p.n());
  Vector g;
  CheckReport r = Residuals(p.objective(), p.constraints(), x, 1.0, m.gamma, g);
  Matrix aggregated = p.objective().A;
  for (int k = 0; k < p.m(); ++k) {
    aggregated += m.gamma[k] * p.constraints()[k].A;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(aggregated,
                                            Eigen::EigenvaluesOnly);
  r.curvature_margin = eig.eigenvalues().minCoeff();

  std::vector<Functional> fs;
  for (const auto& q : p.constraints()) {
    fs.push_back([q](const Vector& y, Vector* grad) {
      if (grad != nullptr) *grad = Grad(q, y);
      return Eval(q, y);
    });
  }
  AssignKktVerdict(r, tol, fs, p.n(), slater);
  const std::string assumed =
      "convexity of the generalized image set assumed, not verified";
  r.note = r.note.empty() ? assumed : r.note + "; " + assumed;
  return r;
}

Certificate MakeCertificate(const Vector& x, const Multipliers& m,
                            const CheckReport& report, const Tolerances& tol) {
  Certificate c;
  c.point = x;
  c.multipliers = m;
  c.stationarity_residual = report.stationarity_residual;
  c.complementarity_residual = report.complementarity_residual;
  c.feasibility_residual = report.feasibility_residual;
  c.aggregated_curvature = report.curvature_margin;
  c.verdict = report.verdict;
  c.tolerances = tol;
  return c;
}

}  // namespace sqcqp
