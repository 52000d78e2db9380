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

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "sqcqp/errors.h"
#include "sqcqp/gis.h"
#include "test_util.h"

namespace sqcqp {
namespace {

using testing::Quad;
using testing::Vec;

ErrorCode CodeOfKernel(std::vector<Vector> bs, int n) {
  try {
    KernelVector(bs, n);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternalContradiction;
}

TEST(KernelVectorTest, CoordinateKernel) {
  const std::vector<Vector> bs = {Vec({1, 0, 0}), Vec({0, 1, 0})};
  const Vector y = KernelVector(bs, 3);
  EXPECT_NEAR(std::abs(y[2]), 1.0, 1e-15);
  EXPECT_NEAR(y.head(2).norm(), 0.0, 1e-15);
  EXPECT_EQ(LinearRank(bs, 3), 2);
}

TEST(KernelVectorTest, RankOneSpan) {
  const std::vector<Vector> bs = {Vec({1, 1, 0}), Vec({2, 2, 0})};
  EXPECT_EQ(LinearRank(bs, 3), 1);
  const Vector y = KernelVector(bs, 3);
  EXPECT_NEAR(y.norm(), 1.0, 1e-14);
  EXPECT_NEAR(Vec({1, 1, 0}).dot(y), 0.0, 1e-14);
}

TEST(KernelVectorTest, FullRank) {
  EXPECT_EQ(CodeOfKernel({Vec({1, 0}), Vec({0, 1})}, 2), ErrorCode::kFullRank);
}

TEST(KernelVectorTest, ZeroFamilyAndDimensionMismatch) {
  const Vector y = KernelVector(std::vector<Vector>{Vec({0, 0})}, 2);
  EXPECT_NEAR(y.norm(), 1.0, 1e-15);
  EXPECT_EQ(CodeOfKernel({Vec({1, 0, 0})}, 2), ErrorCode::kDimension);
}

TEST(KernelVectorTest, RandomOrthogonality) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int k = 1 + static_cast<int>(rng() % (n - 1));
    const Matrix basis = testing::RandomSubspace(rng, n, k);
    std::vector<Vector> bs;
    for (int i = 0; i < 4; ++i) bs.push_back(basis * testing::Gaussian(rng, k));
    const Vector y = KernelVector(bs, n);
    EXPECT_NEAR(y.norm(), 1.0, 1e-12);
    for (const auto& b : bs) EXPECT_NEAR(b.dot(y), 0.0, 1e-10 * b.norm());
  }
}

TEST(SolveSphereAlphaTest, Examples) {
  const SphereAlpha s1 =
      SolveSphereAlpha(Vec({0, 0, 1}), Vec({1, 0, 0}), Vec({0, 1, 0}), 0.5);
  EXPECT_NEAR(s1.roots.first, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s1.roots.second, -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s1.discriminant, 0.5, 1e-15);

  const SphereAlpha s2 =
      SolveSphereAlpha(Vec({0, 1}), Vec({1, 0}), Vec({-1, 0}), 0.5);
  EXPECT_DOUBLE_EQ(s2.roots.first, 1.0);
  EXPECT_DOUBLE_EQ(s2.roots.second, -1.0);
  EXPECT_DOUBLE_EQ(s2.discriminant, 1.0);
}

TEST(SolveSphereAlphaTest, SymmetricRootsWhenMidpointOrthogonal) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector y = Vec({0, 0, testing::Uniform(rng, 0.5, 2)});
    const Vector xv = Vec({testing::Uniform(rng, -1, 1),
                           testing::Uniform(rng, -1, 1), 0});
    const Vector xw = Vec({testing::Uniform(rng, -1, 1),
                           testing::Uniform(rng, -1, 1), 0});
    const double lambda = testing::Uniform(rng, 0.05, 0.95);
    const SphereAlpha s = SolveSphereAlpha(y, xv, xw, lambda);
    const double expected =
        std::sqrt(lambda * (1 - lambda)) * (xv - xw).norm() / y.norm();
    EXPECT_NEAR(std::abs(s.roots.first), expected, 1e-12);
    EXPECT_NEAR(s.roots.first, -s.roots.second, 1e-12);
  }
}

TEST(SolveSphereAlphaTest, DegenerateInputs) {
  EXPECT_THROW(SolveSphereAlpha(Vec({0, 1}), Vec({1, 0}), Vec({1, 0}), 0.5),
               Error);
  EXPECT_THROW(SolveSphereAlpha(Vec({0, 0}), Vec({1, 0}), Vec({0, 0}), 0.5),
               Error);
  EXPECT_THROW(SolveSphereAlpha(Vec({0, 1}), Vec({1, 0}), Vec({0, 0}), 1.0),
               Error);
}

TEST(ConvexityWitnessTest, HandComputedExample) {
  const std::vector<ScalarQuadratic> fs = {Quad(1, Vec({1, 0, 0}), 0),
                                           Quad(-1, Vec({0, 1, 0}), 2)};
  const WitnessResult w =
      ConvexityWitness(fs, Vec({1, 0, 0}), Vec({0, 1, 0}), 0.5);
  EXPECT_NEAR(w.x_tilde[0], 0.5, 1e-15);
  EXPECT_NEAR(w.x_tilde[1], 0.5, 1e-15);
  EXPECT_NEAR(w.x_tilde[2], 1.0 / std::sqrt(2.0), 1e-15);
  for (double s : w.slacks) EXPECT_NEAR(s, 0.0, 1e-12);
  EXPECT_EQ(w.rank, 2);
}

TEST(ConvexityWitnessTest, CoincidentPoints) {
  const std::vector<ScalarQuadratic> fs = {Quad(1, Vec({1, 0}), 0)};
  const WitnessResult w = ConvexityWitness(fs, Vec({0.3, -2}), Vec({0.3, -2}),
                                           0.25);
  EXPECT_EQ(w.x_tilde, Vec({0.3, -2}));
  EXPECT_EQ(w.chosen_alpha, 0.0);
  for (double s : w.slacks) EXPECT_EQ(s, 0.0);
}

TEST(ConvexityWitnessTest, FullRankPropagates) {
  const std::vector<ScalarQuadratic> fs = {Quad(1, Vec({1, 0}), 0),
                                           Quad(1, Vec({0, 1}), 0)};
  try {
    ConvexityWitness(fs, Vec({1, 0}), Vec({0, 1}), 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFullRank);
  }
}

TEST(ConvexityWitnessTest, RandomInvariantsBothRoots) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int count = 1 + static_cast<int>(rng() % 4);
    const auto fs = testing::MakeRankDeficientFamily(rng, n, count);
    const Vector xv = testing::Gaussian(rng, n);
    const Vector xw = testing::Gaussian(rng, n);
    const double lambda = testing::Uniform(rng, 0.01, 0.99);
    const WitnessResult w = ConvexityWitness(fs, xv, xw, lambda);
    EXPECT_GE(w.discriminant, 0.0);
    const double scale = 1.0 + xv.squaredNorm() + xw.squaredNorm();
    for (double alpha : {w.alpha_roots.first, w.alpha_roots.second}) {
      const Vector x = alpha * w.kernel_vector + lambda * xv + (1 - lambda) * xw;
      const WitnessCheck c = CheckWitness(fs, xv, xw, lambda, x);
      EXPECT_LE(c.max_abs_slack, 1e-9 * scale);
      EXPECT_LE(c.sphere_error, 1e-9 * scale);
      EXPECT_LE(c.kernel_error, 1e-9 * scale);
    }
  }
}

TEST(ConvexityWitnessTest, ChosenRootHasLargerMagnitude) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto fs = testing::MakeRankDeficientFamily(rng, 4, 3);
    const WitnessResult w = ConvexityWitness(fs, testing::Gaussian(rng, 4),
                                             testing::Gaussian(rng, 4), 0.3);
    EXPECT_EQ(w.chosen_alpha, w.alpha_roots.first);
    EXPECT_GE(std::abs(w.alpha_roots.first), std::abs(w.alpha_roots.second));
  }
}

TEST(SampleImageTest, AntisymmetricPair) {
  const std::vector<ScalarQuadratic> fs = {Quad(1, Vec({0, 0}), 0),
                                           Quad(-1, Vec({0, 0}), 0)};
  SampleConfig cfg;
  cfg.count = 3;
  const auto cloud = SampleImage(fs, cfg);
  ASSERT_EQ(cloud.size(), 3u);
  for (const auto& p : cloud) {
    EXPECT_EQ(p[0] + p[1], 0.0);
    EXPECT_GE(p[0], 0.0);
    EXPECT_LE(p[0], 2.0);
  }
}

TEST(SampleImageTest, RangeBound) {
  const std::vector<ScalarQuadratic> fs = {Quad(1, Vec({0, 0, 0}), -1)};
  SampleConfig cfg;
  cfg.count = 500;
  cfg.box = 2.0;
  for (const auto& p : SampleImage(fs, cfg)) {
    EXPECT_GE(p[0], -1.0);
    EXPECT_LE(p[0], 3 * 4.0 - 1.0);
  }
}

TEST(SampleImageTest, JitterIsPositiveAndBounded) {
  const std::vector<ScalarQuadratic> fs = {Quad(1, Vec({0.5, 0}), 0),
                                           Quad(0, Vec({1, 1}), -1)};
  SampleConfig plain, jittered;
  plain.count = jittered.count = 200;
  plain.seed = jittered.seed = 9;
  jittered.shift = 0.1;
  const auto a = SampleImage(fs, plain);
  const auto b = SampleImage(fs, jittered);
  for (size_t i = 0; i < a.size(); ++i) {
    const Vector d = b[i] - a[i];
    EXPECT_GT(d.minCoeff(), 0.0);
    EXPECT_LE(d.maxCoeff(), 0.1 + 1e-12);
  }
}

TEST(SampleImageTest, Deterministic) {
  std::mt19937_64 rng(2);
  const auto fs = testing::MakeRankDeficientFamily(rng, 3, 3);
  SampleConfig cfg;
  cfg.seed = 5;
  cfg.shift = 0.5;
  EXPECT_EQ(SampleImage(fs, cfg), SampleImage(fs, cfg));
  SampleConfig other = cfg;
  other.seed = 6;
  EXPECT_NE(SampleImage(fs, cfg), SampleImage(fs, other));
}

// Midpoints of image points are dominated by the image of the witness, which
// the cloud contains up to the sampled jitter.
TEST(SampleImageTest, MidpointsDominatedByWitnessImage) {
  std::mt19937_64 rng(6);
  const auto fs = testing::MakeRankDeficientFamily(rng, 3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector xv = testing::Gaussian(rng, 3);
    const Vector xw = testing::Gaussian(rng, 3);
    const WitnessResult w = ConvexityWitness(fs, xv, xw, 0.5);
    for (size_t k = 0; k < fs.size(); ++k) {
      const double mid = 0.5 * Eval(fs[k], xv) + 0.5 * Eval(fs[k], xw);
      EXPECT_LE(Eval(fs[k], w.x_tilde), mid + 1e-9);
    }
  }
}

}  // namespace
}  // namespace sqcqp
