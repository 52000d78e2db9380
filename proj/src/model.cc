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

#include "sqcqp/model.h"

#include <cmath>
#include <string>
#include <utility>

#include "sqcqp/errors.h"

namespace sqcqp {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension:
      return "DimensionError";
    case ErrorCode::kNegativeMultiplier:
      return "NegativeMultiplier";
    case ErrorCode::kAllZeroMultipliers:
      return "AllZeroMultipliers";
    case ErrorCode::kNonFiniteEntry:
      return "NonFiniteEntry";
    case ErrorCode::kFullRank:
      return "FullRank";
    case ErrorCode::kDegenerateInput:
      return "DegenerateInput";
    case ErrorCode::kInternalContradiction:
      return "InternalContradiction";
    case ErrorCode::kGridTooLarge:
      return "GridTooLarge";
    case ErrorCode::kParse:
      return "ParseError";
    case ErrorCode::kValidation:
      return "ValidationError";
  }
  return "Error";
}

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kGloballyOptimal:
      return "GloballyOptimal";
    case Verdict::kConditionallyOptimal:
      return "ConditionallyOptimal";
    case Verdict::kFritzJohnOnly:
      return "FritzJohnOnly";
    case Verdict::kRejected:
      return "Rejected";
  }
  return "Rejected";
}

void ValidateFinite(const ScalarQuadratic& q, std::string_view what) {
  if (!std::isfinite(q.a) || !std::isfinite(q.c) || !q.b.allFinite()) {
    throw Error(ErrorCode::kNonFiniteEntry,
                std::string(what) + " has a non-finite coefficient");
  }
}

Problem::Problem(ScalarQuadratic objective,
                 std::vector<ScalarQuadratic> constraints)
    : objective_(std::move(objective)), constraints_(std::move(constraints)) {
  if (objective_.dim() < 1) {
    throw Error(ErrorCode::kDimension, "problem dimension must be positive");
  }
  if (constraints_.empty()) {
    throw Error(ErrorCode::kValidation, "problem needs at least one constraint");
  }
  ValidateFinite(objective_, "objective");
  for (int k = 0; k < m(); ++k) {
    if (constraints_[k].dim() != n()) {
      throw Error(ErrorCode::kDimension,
                  "constraint " + std::to_string(k) + " has b of length " +
                      std::to_string(constraints_[k].dim()) + ", expected " +
                      std::to_string(n()));
    }
    ValidateFinite(constraints_[k], "constraint " + std::to_string(k));
  }
}

double Eval(const ScalarQuadratic& q, const Vector& x) {
  if (x.size() != q.b.size()) {
    throw Error(ErrorCode::kDimension, "point has length " +
                                           std::to_string(x.size()) +
                                           ", expected " +
                                           std::to_string(q.b.size()));
  }
  return q.a * x.squaredNorm() + 2.0 * q.b.dot(x) + q.c;
}

Vector Grad(const ScalarQuadratic& q, const Vector& x) {
  if (x.size() != q.b.size()) {
    throw Error(ErrorCode::kDimension, "point has length " +
                                           std::to_string(x.size()) +
                                           ", expected " +
                                           std::to_string(q.b.size()));
  }
  return 2.0 * q.a * x + 2.0 * q.b;
}

void ValidateMultipliers(const Multipliers& m, int expected_count) {
  if (m.gamma.size() != expected_count) {
    throw Error(ErrorCode::kDimension,
                "expected " + std::to_string(expected_count) +
                    " multipliers, got " + std::to_string(m.gamma.size()));
  }
  if (!m.gamma.allFinite() || (m.gamma0 && !std::isfinite(*m.gamma0))) {
    throw Error(ErrorCode::kNonFiniteEntry, "multiplier is not finite");
  }
  for (int k = 0; k < m.gamma.size(); ++k) {
    if (m.gamma[k] < 0.0) {
      throw Error(ErrorCode::kNegativeMultiplier,
                  "gamma[" + std::to_string(k) + "] is negative");
    }
  }
  if (m.gamma0 && *m.gamma0 < 0.0) {
    throw Error(ErrorCode::kNegativeMultiplier, "gamma0 is negative");
  }
}

ScalarQuadratic Aggregate(const Problem& p, const Multipliers& m) {
  ValidateMultipliers(m, p.m());
  const double w0 = m.gamma0.value_or(1.0);
  ScalarQuadratic out{w0 * p.objective().a, w0 * p.objective().b,
                      w0 * p.objective().c};
  for (int k = 0; k < p.m(); ++k) {
    const ScalarQuadratic& f = p.constraint(k);
    out.a += m.gamma[k] * f.a;
    out.b += m.gamma[k] * f.b;
    out.c += m.gamma[k] * f.c;
  }
  return out;
}

ScalarQuadratic ShiftObjective(const Problem& p, double optimal_value) {
  ScalarQuadratic out = p.objective();
  out.c -= optimal_value;
  return out;
}

std::vector<ScalarQuadratic> AllFunctionals(const Problem& p) {
  std::vector<ScalarQuadratic> fs;
  fs.reserve(p.m() + 1);
  fs.push_back(p.objective());
  for (const auto& f : p.constraints()) fs.push_back(f);
  return fs;
}

}  // namespace sqcqp
