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

#include "sqcqp/gis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "Eigen/SVD"
#include "sqcqp/errors.h"
#include "sqcqp/roots.h"

namespace sqcqp {
namespace {

Matrix StackRows(std::span<const Vector> bs, int n) {
  Matrix rows(static_cast<int>(bs.size()), n);
  for (size_t k = 0; k < bs.size(); ++k) {
    if (bs[k].size() != n) {
      throw Error(ErrorCode::kDimension,
                  "b_" + std::to_string(k) + " has length " +
                      std::to_string(bs[k].size()) + ", expected " +
                      std::to_string(n));
    }
    rows.row(static_cast<int>(k)) = bs[k].transpose();
  }
  return rows;
}

int RankFromSingularValues(const Vector& sv) {
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  const double cutoff = kRankThreshold * sv[0];
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff) ++rank;
  }
  return rank;
}

int CommonDim(std::span<const ScalarQuadratic> fs) {
  if (fs.empty()) throw Error(ErrorCode::kDimension, "empty family");
  const int n = fs.front().dim();
  for (size_t k = 0; k < fs.size(); ++k) {
    if (fs[k].dim() != n) {
      throw Error(ErrorCode::kDimension,
                  "f_" + std::to_string(k) + " has dimension " +
                      std::to_string(fs[k].dim()) + ", expected " +
                      std::to_string(n));
    }
  }
  return n;
}

std::vector<Vector> LinearTerms(std::span<const ScalarQuadratic> fs) {
  std::vector<Vector> bs;
  bs.reserve(fs.size());
  for (const auto& f : fs) bs.push_back(f.b);
  return bs;
}

uint64_t SplitMix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

int LinearRank(std::span<const Vector> bs, int n) {
  if (bs.empty()) return 0;
  const Matrix rows = StackRows(bs, n);
  Eigen::JacobiSVD<Matrix> svd(rows);
  return RankFromSingularValues(svd.singularValues());
}

Vector KernelVector(std::span<const Vector> bs, int n) {
  if (n < 1) throw Error(ErrorCode::kDimension, "dimension must be positive");
  if (bs.empty()) return Vector::Unit(n, 0);
  const Matrix rows = StackRows(bs, n);
  Eigen::JacobiSVD<Matrix> svd(rows, Eigen::ComputeFullV);
  const int rank = RankFromSingularValues(svd.singularValues());
  if (rank == 0) return Vector::Unit(n, 0);
  if (rank >= n) {
    throw Error(ErrorCode::kFullRank,
                "the linear terms span R^" + std::to_string(n) +
                    "; no direction orthogonal to all of them exists");
  }
  // Columns rank..n-1 of V span the orthogonal complement of the row space.
  Vector y = svd.matrixV().col(rank);
  y.normalize();
  Eigen::Index largest = 0;
  y.cwiseAbs().maxCoeff(&largest);
  if (y[largest] < 0.0) y = -y;
  return y;
}

SphereAlpha SolveSphereAlpha(const Vector& y, const Vector& x_v,
                             const Vector& x_w, double lambda) {
  if (y.size() != x_v.size() || x_v.size() != x_w.size()) {
    throw Error(ErrorCode::kDimension, "vectors differ in length");
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorCode::kDegenerateInput, "lambda must lie in (0, 1)");
  }
  const double y2 = y.squaredNorm();
  const double gap2 = (x_v - x_w).squaredNorm();
  if (y2 == 0.0) throw Error(ErrorCode::kDegenerateInput, "y_v is zero");
  if (gap2 == 0.0) throw Error(ErrorCode::kDegenerateInput, "x_v equals x_w");

  const Vector mid = lambda * x_v + (1.0 - lambda) * x_w;
  const double half_b = y.dot(mid);
  const double c = -lambda * (1.0 - lambda) * gap2;
  // c < 0 < y2, so the discriminant is positive; the two roots have opposite
  // signs.
  const auto roots = SolveQuadratic(y2, half_b, c);
  SphereAlpha out;
  out.discriminant = half_b * half_b + lambda * (1.0 - lambda) * y2 * gap2;
  if (roots) out.roots = {roots->first, roots->second};
  return out;
}

WitnessCheck CheckWitness(std::span<const ScalarQuadratic> fs,
                          const Vector& x_v, const Vector& x_w, double lambda,
                          const Vector& x_tilde) {
  WitnessCheck check;
  const Vector mid = lambda * x_v + (1.0 - lambda) * x_w;
  const double radius2 =
      lambda * x_v.squaredNorm() + (1.0 - lambda) * x_w.squaredNorm();
  check.sphere_error = std::abs(x_tilde.squaredNorm() - radius2);
  check.min_slack = std::numeric_limits<double>::infinity();
  const Vector offset = x_tilde - mid;
  for (const auto& f : fs) {
    const double slack = lambda * Eval(f, x_v) + (1.0 - lambda) * Eval(f, x_w) -
                         Eval(f, x_tilde);
    check.min_slack = std::min(check.min_slack, slack);
    check.max_abs_slack = std::max(check.max_abs_slack, std::abs(slack));
    check.kernel_error = std::max(check.kernel_error, std::abs(f.b.dot(offset)));
  }
  return check;
}

WitnessResult ConvexityWitness(std::span<const ScalarQuadratic> fs,
                               const Vector& x_v, const Vector& x_w,
                               double lambda) {
  const int n = CommonDim(fs);
  if (x_v.size() != n || x_w.size() != n) {
    throw Error(ErrorCode::kDimension, "x_v and x_w must have length " +
                                           std::to_string(n));
  }
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorCode::kDegenerateInput, "lambda must lie in (0, 1)");
  }
  const std::vector<Vector> bs = LinearTerms(fs);

  WitnessResult result;
  result.rank = LinearRank(bs, n);
  if (x_v == x_w) {
    result.x_tilde = x_v;
    result.kernel_vector =
        result.rank < n ? KernelVector(bs, n) : Vector::Zero(n);
    result.slacks.assign(fs.size(), 0.0);
    return result;
  }

  result.kernel_vector = KernelVector(bs, n);
  const SphereAlpha alpha =
      SolveSphereAlpha(result.kernel_vector, x_v, x_w, lambda);
  result.alpha_roots = alpha.roots;
  result.discriminant = alpha.discriminant;
  result.chosen_alpha = alpha.roots.first;
  result.x_tilde = result.chosen_alpha * result.kernel_vector + lambda * x_v +
                   (1.0 - lambda) * x_w;
  result.slacks.reserve(fs.size());
  for (const auto& f : fs) {
    result.slacks.push_back(lambda * Eval(f, x_v) +
                            (1.0 - lambda) * Eval(f, x_w) -
                            Eval(f, result.x_tilde));
  }
  return result;
}

std::vector<Vector> SampleImage(std::span<const ScalarQuadratic> fs,
                                const SampleConfig& cfg) {
  const int n = CommonDim(fs);
  if (cfg.count <= 0) {
    throw Error(ErrorCode::kValidation, "sample count must be positive");
  }
  if (!(cfg.box > 0.0) || !std::isfinite(cfg.box) || !(cfg.shift >= 0.0)) {
    throw Error(ErrorCode::kValidation, "invalid sampling box or shift");
  }
  constexpr double kJitterFloor = 1e-12;
  const int dim = static_cast<int>(fs.size());
  std::vector<Vector> cloud;
  cloud.reserve(cfg.count);
  for (int i = 0; i < cfg.count; ++i) {
    // Each index owns its stream so the cloud can be split across workers.
    std::mt19937_64 rng(SplitMix64(cfg.seed ^ SplitMix64(static_cast<uint64_t>(i))));
    std::uniform_real_distribution<double> coord(-cfg.box, cfg.box);
    Vector x(n);
    for (int j = 0; j < n; ++j) x[j] = coord(rng);
    Vector image(dim);
    for (int k = 0; k < dim; ++k) image[k] = Eval(fs[k], x);
    if (cfg.shift > 0.0) {
      const double lo = std::min(kJitterFloor, cfg.shift);
      std::uniform_real_distribution<double> jitter(lo, cfg.shift);
      for (int k = 0; k < dim; ++k) {
        double u = jitter(rng);
        // The orthant is open: never add exactly the lower bound.
        if (u <= lo) u = cfg.shift;
        image[k] += u;
      }
    }
    cloud.push_back(std::move(image));
  }
  return cloud;
}

}  // namespace sqcqp
