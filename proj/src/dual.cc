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

#include "sqcqp/dual.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "Eigen/QR"
#include "sqcqp/errors.h"
#include "sqcqp/roots.h"
#include "sqcqp/slemma.h"

namespace sqcqp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Cancellation to within rounding of the summands counts as exact zero.
constexpr double kSnap = 1e-13;
// Exhaustive support enumeration up to this many constraints.
constexpr int kMaxEnumeratedConstraints = 10;

struct Aggregated {
  ScalarQuadratic q;
  bool a_zero = false;
  bool b_zero = false;
};

Aggregated AggregateRaw(const Problem& p, const Vector& gamma) {
  Aggregated out;
  out.q = p.objective();
  double a_scale = std::abs(out.q.a);
  double b_scale = out.q.b.lpNorm<Eigen::Infinity>();
  for (int k = 0; k < p.m(); ++k) {
    if (gamma[k] == 0.0) continue;
    const ScalarQuadratic& f = p.constraint(k);
    out.q.a += gamma[k] * f.a;
    out.q.b += gamma[k] * f.b;
    out.q.c += gamma[k] * f.c;
    a_scale += std::abs(gamma[k] * f.a);
    b_scale += gamma[k] * f.b.lpNorm<Eigen::Infinity>();
  }
  out.a_zero = std::abs(out.q.a) <= kSnap * a_scale;
  out.b_zero = out.q.b.lpNorm<Eigen::Infinity>() <= kSnap * b_scale;
  if (out.a_zero) out.q.a = 0.0;
  return out;
}

DualEvaluation EvaluateDual(const Problem& p, const Vector& gamma) {
  const Aggregated agg = AggregateRaw(p, gamma);
  DualEvaluation e;
  if (!agg.a_zero && agg.q.a > 0.0) {
    e.status = DualStatus::kAttained;
    e.value = agg.q.c - agg.q.b.squaredNorm() / agg.q.a;
    e.minimizer = Vector(-agg.q.b / agg.q.a);
  } else if (agg.a_zero && agg.b_zero) {
    e.status = DualStatus::kFlatAttained;
    e.value = agg.q.c;
    e.minimizer = Vector::Zero(p.n());
  } else {
    e.status = DualStatus::kUnboundedBelow;
    e.value = -kInf;
  }
  return e;
}

Vector ConstraintValues(const Problem& p, const Vector& x) {
  Vector v(p.m());
  for (int k = 0; k < p.m(); ++k) v[k] = Eval(p.constraint(k), x);
  return v;
}

// Ascent direction: a supergradient where the dual is finite, otherwise a
// direction back into the domain {a(gamma) >= 0, b(gamma) = 0 if a = 0}.
Vector AscentDirection(const Problem& p, const Vector& gamma,
                       const DualEvaluation& e) {
  const int m = p.m();
  if (e.status == DualStatus::kAttained) {
    return ConstraintValues(p, *e.minimizer);
  }
  if (e.status == DualStatus::kFlatAttained) {
    return ConstraintValues(p, Vector::Zero(p.n()));
  }
  const Aggregated agg = AggregateRaw(p, gamma);
  Vector curvature(m);
  for (int k = 0; k < m; ++k) curvature[k] = p.constraint(k).a;
  const bool can_raise = curvature.maxCoeff() > 0.0;
  if (agg.q.a < 0.0 || (can_raise && !agg.b_zero)) return curvature;
  // a = 0 with b != 0 and no constraint adds curvature: shrink ||b(gamma)||.
  Vector dir(m);
  for (int k = 0; k < m; ++k) dir[k] = -p.constraint(k).b.dot(agg.q.b);
  return dir;
}

struct AscentResult {
  Vector gamma;
  double value = -kInf;
  int restart = -1;
};

AscentResult SupergradientAscent(const Problem& p, const SolveConfig& cfg) {
  const int m = p.m();
  AscentResult best;
  best.gamma = Vector::Zero(m);
  for (int r = 0; r < std::max(cfg.restarts, 1); ++r) {
    std::seed_seq seq{static_cast<uint32_t>(cfg.seed),
                      static_cast<uint32_t>(cfg.seed >> 32),
                      static_cast<uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> start(0.0, 2.0);
    Vector gamma = Vector::Zero(m);
    if (r > 0) {
      for (int k = 0; k < m; ++k) gamma[k] = start(rng);
    }
    for (int t = 1; t <= cfg.iterations; ++t) {
      const DualEvaluation e = EvaluateDual(p, gamma);
      if (e.value > best.value) {
        best.value = e.value;
        best.gamma = gamma;
        best.restart = r;
      }
      Vector dir = AscentDirection(p, gamma, e);
      const double norm = dir.norm();
      if (norm == 0.0 || !std::isfinite(norm)) break;
      gamma += (cfg.initial_step / std::sqrt(static_cast<double>(t)) / norm) *
               dir;
      gamma = gamma.cwiseMax(0.0);
    }
  }
  return best;
}

double ResidualScale(const Problem& p, const Vector& x) {
  double scale = 1.0;
  const double x2 = x.squaredNorm();
  for (const auto& f : p.constraints()) {
    scale = std::max(scale, std::abs(f.a) * x2 + 2.0 * std::abs(f.b.dot(x)) +
                                std::abs(f.c));
  }
  return scale;
}

// Solves f_k(x(gamma)) = 0 for k in the support by damped Newton, with
// gamma_k = 0 off the support. The Jacobian of f_k(x(gamma)) in gamma_j is
//   -2 <a_k x + b_k, a_j x + b_j> / a(gamma).
std::optional<Vector> NewtonOnSupport(const Problem& p,
                                      const std::vector<int>& support,
                                      Vector gamma) {
  const int s = static_cast<int>(support.size());
  auto residual = [&](const Vector& g, Vector& x, Vector& r) {
    const Aggregated agg = AggregateRaw(p, g);
    if (agg.a_zero || agg.q.a <= 0.0) return false;
    x = -agg.q.b / agg.q.a;
    r.resize(s);
    for (int i = 0; i < s; ++i) r[i] = Eval(p.constraint(support[i]), x);
    return true;
  };
  Vector x;
  Vector r;
  if (!residual(gamma, x, r)) return std::nullopt;
  for (int it = 0; it < 100 && s > 0; ++it) {
    const double rnorm = r.lpNorm<Eigen::Infinity>();
    if (rnorm <= 1e-15 * ResidualScale(p, x)) break;
    const double a = AggregateRaw(p, gamma).q.a;
    Matrix jac(s, s);
    for (int i = 0; i < s; ++i) {
      const ScalarQuadratic& fi = p.constraint(support[i]);
      const Vector gi = fi.a * x + fi.b;
      for (int j = 0; j < s; ++j) {
        const ScalarQuadratic& fj = p.constraint(support[j]);
        jac(i, j) = -2.0 * gi.dot(fj.a * x + fj.b) / a;
      }
    }
    const Vector delta = jac.completeOrthogonalDecomposition().solve(-r);
    if (!delta.allFinite()) break;
    bool accepted = false;
    for (double t = 1.0; t > 1e-12; t *= 0.5) {
      Vector trial = gamma;
      for (int i = 0; i < s; ++i) trial[support[i]] += t * delta[i];
      Vector xt;
      Vector rt;
      if (residual(trial, xt, rt) &&
          rt.lpNorm<Eigen::Infinity>() < (1.0 - 1e-4 * t) * rnorm) {
        gamma = std::move(trial);
        x = std::move(xt);
        r = std::move(rt);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return gamma;
}

bool PrimalAcceptable(const Problem& p, const Vector& gamma, const Vector& x,
                      const Tolerances& tol) {
  for (int k = 0; k < p.m(); ++k) {
    const double fk = Eval(p.constraint(k), x);
    if (fk > 0.1 * tol.feasibility) return false;
    if (std::abs(gamma[k] * fk) > 0.1 * tol.complementarity) return false;
  }
  return true;
}

// Gauss-Newton with Levenberg damping on
//   r(x) = [f_k(x) for gamma_k > 0; max(f_k(x), 0) otherwise].
std::optional<Vector> PolishOntoActiveSet(const Problem& p, const Vector& gamma,
                                          Vector x, const Tolerances& tol) {
  const int m = p.m();
  auto residual = [&](const Vector& y) {
    Vector r(m);
    for (int k = 0; k < m; ++k) {
      const double fk = Eval(p.constraint(k), y);
      r[k] = gamma[k] > 0.0 ? fk : std::max(fk, 0.0);
    }
    return r;
  };
  double mu = 1e-3;
  Vector r = residual(x);
  for (int it = 0; it < 200; ++it) {
    if (PrimalAcceptable(p, gamma, x, tol)) return x;
    Matrix jac = Matrix::Zero(m, p.n());
    for (int k = 0; k < m; ++k) {
      if (gamma[k] > 0.0 || r[k] > 0.0) {
        jac.row(k) = Grad(p.constraint(k), x).transpose();
      }
    }
    const Matrix normal =
        jac.transpose() * jac + mu * Matrix::Identity(p.n(), p.n());
    const Vector step = normal.ldlt().solve(-jac.transpose() * r);
    const Vector trial = x + step;
    const Vector rt = residual(trial);
    if (rt.squaredNorm() < r.squaredNorm()) {
      x = trial;
      r = rt;
      mu = std::max(mu * 0.3, 1e-15);
    } else {
      mu *= 10.0;
      if (mu > 1e15) break;
    }
  }
  if (PrimalAcceptable(p, gamma, x, tol)) return x;
  return std::nullopt;
}

// When a(gamma) = 0 and b(gamma) = 0 every x minimizes the Lagrangian; a
// primal optimum is any feasible x with f_k(x) = 0 wherever gamma_k > 0.
// Rays from a strictly feasible base point are cut against the first active
// constraint, then polished onto the whole active set.
std::optional<Vector> RecoverFlatPrimal(const Problem& p, const Vector& gamma,
                                        const std::optional<Vector>& slater,
                                        const SolveConfig& cfg) {
  const int n = p.n();
  std::vector<int> active;
  for (int k = 0; k < p.m(); ++k) {
    if (gamma[k] > 0.0) active.push_back(k);
  }
  const Vector base = slater.value_or(Vector::Zero(n));
  if (active.empty()) {
    if (PrimalAcceptable(p, gamma, base, cfg.tolerances)) return base;
    return PolishOntoActiveSet(p, gamma, base, cfg.tolerances);
  }

  std::mt19937_64 rng(cfg.seed ^ 0x5bd1e995ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  const ScalarQuadratic& first = p.constraint(active.front());
  const double f_base = Eval(first, base);
  for (int trial = 0; trial < 256; ++trial) {
    Vector d(n);
    for (int j = 0; j < n; ++j) d[j] = normal(rng);
    if (d.norm() == 0.0) continue;
    d.normalize();
    // f(base + t d) = A t^2 + 2 B t + C.
    const double qa = first.a;
    const double qb = first.a * base.dot(d) + first.b.dot(d);
    double t = -1.0;
    if (qa != 0.0) {
      const auto roots = SolveQuadratic(qa, qb, f_base);
      if (!roots) continue;
      for (double root : {roots->first, roots->second}) {
        if (root > 0.0 && (t < 0.0 || root < t)) t = root;
      }
    } else if (qb != 0.0) {
      t = -f_base / (2.0 * qb);
    }
    if (t <= 0.0) continue;
    const Vector x = base + t * d;
    if (PrimalAcceptable(p, gamma, x, cfg.tolerances)) return x;
    if (auto polished = PolishOntoActiveSet(p, gamma, x, cfg.tolerances)) {
      return polished;
    }
  }
  return std::nullopt;
}

struct Candidate {
  Vector gamma;
  Vector x;
  DualEvaluation dual;
};

std::vector<std::vector<int>> CandidateSupports(const Problem& p,
                                                const Vector& ascent_gamma) {
  const int m = p.m();
  std::vector<std::vector<int>> supports;
  if (m <= kMaxEnumeratedConstraints) {
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
      std::vector<int> s;
      for (int k = 0; k < m; ++k) {
        if (mask & (1u << k)) s.push_back(k);
      }
      supports.push_back(std::move(s));
    }
    return supports;
  }
  std::vector<int> s;
  for (int k = 0; k < m; ++k) {
    if (ascent_gamma[k] > 1e-8) s.push_back(k);
  }
  supports.push_back(s);
  supports.push_back({});
  return supports;
}

void InteriorCandidates(const Problem& p, const std::vector<int>& support,
                        const Vector& ascent_gamma, const SolveConfig& cfg,
                        std::vector<Candidate>& out) {
  const int m = p.m();
  std::vector<Vector> starts;
  Vector from_ascent = Vector::Zero(m);
  Vector ones = Vector::Zero(m);
  for (int k : support) {
    from_ascent[k] = std::max(ascent_gamma[k], 1e-3);
    ones[k] = 1.0;
  }
  starts.push_back(from_ascent);
  starts.push_back(ones);
  for (const Vector& start : starts) {
    auto gamma = NewtonOnSupport(p, support, start);
    if (!gamma) continue;
    if (gamma->minCoeff() < 0.0) continue;
    const DualEvaluation e = EvaluateDual(p, *gamma);
    if (e.status != DualStatus::kAttained) continue;
    if (!PrimalAcceptable(p, *gamma, *e.minimizer, cfg.tolerances)) continue;
    out.push_back({*gamma, *e.minimizer, e});
    return;
  }
}

void FlatCandidates(const Problem& p, const std::vector<int>& support,
                    const std::optional<Vector>& slater, const SolveConfig& cfg,
                    std::vector<Candidate>& out) {
  const int n = p.n();
  const int s = static_cast<int>(support.size());
  Vector gamma = Vector::Zero(p.m());
  if (s > 0) {
    // sum_{k in S} gamma_k (a_k, b_k) = -(a_J, b_J).
    Matrix system(n + 1, s);
    Vector rhs(n + 1);
    rhs[0] = -p.objective().a;
    rhs.tail(n) = -p.objective().b;
    for (int j = 0; j < s; ++j) {
      system(0, j) = p.constraint(support[j]).a;
      system.block(1, j, n, 1) = p.constraint(support[j]).b;
    }
    const Vector sol = system.completeOrthogonalDecomposition().solve(rhs);
    const double scale = 1.0 + std::max(system.cwiseAbs().maxCoeff(),
                                        rhs.cwiseAbs().maxCoeff());
    if (!sol.allFinite()) return;
    if ((system * sol - rhs).lpNorm<Eigen::Infinity>() > 1e-12 * scale) return;
    if (sol.minCoeff() < -1e-12) return;
    for (int j = 0; j < s; ++j) gamma[support[j]] = std::max(sol[j], 0.0);
  }
  const DualEvaluation e = EvaluateDual(p, gamma);
  if (e.status != DualStatus::kFlatAttained) return;
  auto x = RecoverFlatPrimal(p, gamma, slater, cfg);
  if (!x) return;
  out.push_back({gamma, *x, e});
}

}  // namespace

std::string_view DualStatusName(DualStatus status) {
  switch (status) {
    case DualStatus::kAttained:
      return "Attained";
    case DualStatus::kUnboundedBelow:
      return "UnboundedBelow";
    case DualStatus::kFlatAttained:
      return "FlatAttained";
  }
  return "UnboundedBelow";
}

std::string_view SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kCertified:
      return "Certified";
    case SolveStatus::kNoConvergence:
      return "NoConvergence";
    case SolveStatus::kDualDivergence:
      return "DualDivergence";
  }
  return "NoConvergence";
}

DualEvaluation DualValue(const Problem& p, const Multipliers& gamma) {
  if (gamma.gamma0) {
    throw Error(ErrorCode::kValidation, "dual value takes no gamma0");
  }
  ValidateMultipliers(gamma, p.m());
  return EvaluateDual(p, gamma.gamma);
}

std::optional<Vector> FindSlaterPoint(const Problem& p,
                                      const SearchConfig& cfg) {
  const auto fs = MakeFunctionals(p.constraints());
  return FindStrictPointOf(fs, p.n(), cfg);
}

SolveResult Solve(const Problem& p, const SolveConfig& cfg) {
  const int m = p.m();
  SolveResult result;
  result.multipliers.gamma = Vector::Zero(m);
  result.x = Vector::Zero(p.n());

  bool domain_nonempty = p.objective().a >= 0.0;
  for (const auto& f : p.constraints()) domain_nonempty |= f.a > 0.0;
  if (!domain_nonempty) {
    result.status = SolveStatus::kDualDivergence;
    result.message =
        "no gamma >= 0 gives nonnegative aggregated curvature; the dual is "
        "-infinity everywhere";
    return result;
  }

  // A combination of constraints that is positive everywhere proves the
  // feasible set empty; the dual then grows without bound along it.
  const MultiplierSearchResult probe = MaximizeMargin(p.constraints(), cfg.search);
  if (probe.best_margin > 1e-12) {
    result.status = SolveStatus::kDualDivergence;
    result.multipliers.gamma = probe.best;
    result.message =
        "dual appears unbounded above: a nonnegative combination of the "
        "constraints is bounded below by " +
        std::to_string(probe.best_margin) + " > 0, so no point is feasible";
    return result;
  }

  const std::optional<Vector> slater = FindSlaterPoint(p, cfg.search);
  const AscentResult ascent = SupergradientAscent(p, cfg);
  result.best_restart = ascent.restart;

  std::vector<Candidate> candidates;
  for (const auto& support : CandidateSupports(p, ascent.gamma)) {
    InteriorCandidates(p, support, ascent.gamma, cfg, candidates);
    FlatCandidates(p, support, slater, cfg, candidates);
  }
  // The raw ascent iterate, in case it is already exact.
  {
    const DualEvaluation e = EvaluateDual(p, ascent.gamma);
    if (e.status == DualStatus::kAttained &&
        PrimalAcceptable(p, ascent.gamma, *e.minimizer, cfg.tolerances)) {
      candidates.push_back({ascent.gamma, *e.minimizer, e});
    }
  }

  SlaterOptions slater_opts;
  slater_opts.hint = slater;
  slater_opts.search = false;

  std::optional<size_t> chosen;
  CheckReport chosen_report;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& cand = candidates[i];
    const double gap = Eval(p.objective(), cand.x) - cand.dual.value;
    if (std::abs(gap) > cfg.gap_tolerance) continue;
    CheckReport report = CheckKkt(p, cand.x, Multipliers{cand.gamma, std::nullopt},
                                  cfg.tolerances, slater_opts);
    if (report.verdict == Verdict::kRejected) continue;
    if (!chosen || cand.dual.value > candidates[*chosen].dual.value) {
      chosen = i;
      chosen_report = std::move(report);
    }
  }

  if (!chosen) {
    result.status = SolveStatus::kNoConvergence;
    result.multipliers.gamma = ascent.gamma;
    const DualEvaluation e = EvaluateDual(p, ascent.gamma);
    result.dual_value = e.value;
    result.dual_status = e.status;
    if (e.minimizer) result.x = *e.minimizer;
    result.value = Eval(p.objective(), result.x);
    result.duality_gap = result.value - result.dual_value;
    result.report = CheckKkt(p, result.x, result.multipliers, cfg.tolerances,
                             slater_opts);
    result.certificate = MakeCertificate(result.x, result.multipliers,
                                         result.report, cfg.tolerances);
    result.message =
        "no multiplier passed the certificate within the iteration budget; "
        "reporting the best ascent iterate";
    return result;
  }

  const Candidate& best = candidates[*chosen];
  result.status = SolveStatus::kCertified;
  result.multipliers.gamma = best.gamma;
  result.x = best.x;
  result.value = Eval(p.objective(), best.x);
  result.dual_value = best.dual.value;
  result.dual_status = best.dual.status;
  result.duality_gap = result.value - result.dual_value;
  result.report = chosen_report;
  result.certificate = MakeCertificate(result.x, result.multipliers,
                                       result.report, cfg.tolerances);
  return result;
}

}  // namespace sqcqp
