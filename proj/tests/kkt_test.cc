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
#include "sqcqp/kkt.h"
#include "sqcqp/oracle.h"
#include "test_util.h"

namespace sqcqp {
namespace {

using testing::Quad;
using testing::Vec;

TEST(CheckKktTest, TrustRegionOptimum) {
  const CheckReport r = CheckKkt(testing::TrustRegionFixture(), Vec({1, 0}),
                                 {Vec({1}), std::nullopt});
  EXPECT_EQ(r.stationarity_residual, 0.0);
  EXPECT_EQ(r.complementarity_residual, 0.0);
  EXPECT_EQ(r.feasibility_residual, 0.0);
  EXPECT_EQ(r.curvature_margin, 2.0);
  EXPECT_EQ(r.verdict, Verdict::kGloballyOptimal);
  ASSERT_TRUE(r.slater_point.has_value());
  EXPECT_LT(r.slater_point->squaredNorm(), 1.0);
}

TEST(CheckKktTest, NonconvexSphereFlatLagrangian) {
  const Problem p = testing::NonconvexSphereFixture();
  const CheckReport r = CheckKkt(p, Vec({0, 1}), {Vec({1}), std::nullopt});
  EXPECT_EQ(r.stationarity_residual, 0.0);
  EXPECT_EQ(r.complementarity_residual, 0.0);
  EXPECT_EQ(r.curvature_margin, 0.0);
  EXPECT_EQ(r.verdict, Verdict::kGloballyOptimal);
  // Every unit vector attains -1; a grid never beats it.
  const GridMinimum g = GridMinimize(p, GridSpec::Cube(2, 2.0, 201));
  EXPECT_GE(g.value, -1.0 - 1e-9);
}

TEST(CheckKktTest, WrongMultiplierRejected) {
  const CheckReport r = CheckKkt(testing::TrustRegionFixture(), Vec({1, 0}),
                                 {Vec({0}), std::nullopt});
  EXPECT_EQ(r.stationarity_residual, 2.0);
  EXPECT_EQ(r.verdict, Verdict::kRejected);
}

TEST(CheckKktTest, InfeasiblePointReportsFeasibility) {
  const CheckReport r = CheckKkt(testing::TrustRegionFixture(), Vec({2, 0}),
                                 {Vec({0}), std::nullopt});
  EXPECT_EQ(r.stationarity_residual, 0.0);
  EXPECT_EQ(r.feasibility_residual, 3.0);
  EXPECT_EQ(r.verdict, Verdict::kRejected);
}

TEST(CheckKktTest, NoSlaterPointDowngrades) {
  // ||x||^2 <= 0 has only the origin; J = ||x||^2 is optimal there with gamma 0.
  const Problem p(Quad(1, Vec({0, 0}), 0), {Quad(1, Vec({0, 0}), 0)});
  const CheckReport r = CheckKkt(p, Vec({0, 0}), {Vec({0}), std::nullopt});
  EXPECT_EQ(r.verdict, Verdict::kConditionallyOptimal);
  EXPECT_FALSE(r.slater_point.has_value());
  EXPECT_FALSE(r.note.empty());
}

TEST(CheckKktTest, SlaterHintIsUsedWithoutSearch) {
  SlaterOptions opts;
  opts.hint = Vec({0.1, 0.1});
  opts.search = false;
  const CheckReport r = CheckKkt(testing::TrustRegionFixture(), Vec({1, 0}),
                                 {Vec({1}), std::nullopt}, {}, opts);
  EXPECT_EQ(r.verdict, Verdict::kGloballyOptimal);
  EXPECT_EQ(*r.slater_point, Vec({0.1, 0.1}));

  opts.hint = Vec({3, 0});
  const CheckReport bad = CheckKkt(testing::TrustRegionFixture(), Vec({1, 0}),
                                   {Vec({1}), std::nullopt}, {}, opts);
  EXPECT_EQ(bad.verdict, Verdict::kConditionallyOptimal);
}

TEST(CheckKktTest, Errors) {
  const Problem p = testing::TrustRegionFixture();
  EXPECT_THROW(CheckKkt(p, Vec({1, 0, 0}), {Vec({1}), std::nullopt}), Error);
  EXPECT_THROW(CheckKkt(p, Vec({1, 0}), {Vec({1, 1}), std::nullopt}), Error);
  EXPECT_THROW(CheckKkt(p, Vec({1, 0}), {Vec({1}), 1.0}), Error);
}

TEST(CheckKktTest, ComplementarityExactlyZero) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testing::MakeSolvableInstance(rng);
    const Vector x = testing::Gaussian(rng, inst.problem.n());
    const CheckReport r = CheckKkt(inst.problem, x,
                                   {Vector::Zero(inst.problem.m()), std::nullopt},
                                   {}, {.hint = inst.slater});
    EXPECT_EQ(r.complementarity_residual, 0.0);
  }
  // f_1(x) = 0 analytically at a point on the unit circle.
  const CheckReport r = CheckKkt(testing::TrustRegionFixture(), Vec({0, 1}),
                                 {Vec({3}), std::nullopt});
  EXPECT_EQ(r.complementarity_residual, 0.0);
}

TEST(CheckFritzJohnTest, TrustRegionWithUnitObjectiveWeight) {
  const CheckReport r = CheckFritzJohn(testing::TrustRegionFixture(),
                                       Vec({1, 0}), {Vec({1}), 1.0});
  EXPECT_EQ(r.stationarity_residual, 0.0);
  EXPECT_EQ(r.verdict, Verdict::kGloballyOptimal);
}

TEST(CheckFritzJohnTest, ConstraintOnlyCertificate) {
  const Problem p(Quad(1, Vec({1, 0}), 0), {Quad(1, Vec({0, 0}), 0)});
  const CheckReport r = CheckFritzJohn(p, Vec({0, 0}), {Vec({1}), 0.0});
  EXPECT_EQ(r.stationarity_residual, 0.0);
  EXPECT_EQ(r.complementarity_residual, 0.0);
  EXPECT_EQ(r.curvature_margin, 1.0);
  EXPECT_EQ(r.verdict, Verdict::kFritzJohnOnly);
}

TEST(CheckFritzJohnTest, AllZeroMultipliers) {
  try {
    CheckFritzJohn(testing::TrustRegionFixture(), Vec({1, 0}),
                   {Vec({0}), 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAllZeroMultipliers);
  }
  EXPECT_THROW(CheckFritzJohn(testing::TrustRegionFixture(), Vec({1, 0}),
                              {Vec({1}), std::nullopt}),
               Error);
}

TEST(CheckFritzJohnTest, ScaledMultipliersAgreeWithKkt) {
  const CheckReport r = CheckFritzJohn(testing::TrustRegionFixture(),
                                       Vec({1, 0}), {Vec({2.5}), 2.5});
  EXPECT_EQ(r.verdict, Verdict::kGloballyOptimal);
}

TEST(CheckKktGeneralTest, IndefiniteHessianRejected) {
  Matrix a(2, 2);
  a << 1, 0, 0, -1;
  const GeneralProblem p({a, Vec({0, 0}), 0}, {});
  const CheckReport r = CheckKktGeneral(p, Vec({0, 0}), {Vector(0), std::nullopt});
  EXPECT_EQ(r.stationarity_residual, 0.0);
  EXPECT_EQ(r.curvature_margin, -1.0);
  EXPECT_EQ(r.verdict, Verdict::kRejected);
}

TEST(CheckKktGeneralTest, InteriorConvexMinimum) {
  const GeneralProblem p({Matrix::Identity(2, 2), Vec({0, 0}), 0},
                         {{Matrix::Identity(2, 2), Vec({0, 0}), -1}});
  const CheckReport r = CheckKktGeneral(p, Vec({0, 0}), {Vec({0}), std::nullopt});
  EXPECT_EQ(r.verdict, Verdict::kGloballyOptimal);
  EXPECT_EQ(r.curvature_margin, 1.0);
  EXPECT_NE(r.note.find("assumed"), std::string::npos);
}

TEST(CheckKktGeneralTest, SymmetrizesInput) {
  Matrix a(2, 2);
  a << 1, 2, 0, 1;  // (A + A^T) / 2 = [[1, 1], [1, 1]], eigenvalues 0 and 2.
  const GeneralProblem p({a, Vec({0, 0}), 0}, {});
  EXPECT_EQ(p.objective().A(0, 1), 1.0);
  const CheckReport r = CheckKktGeneral(p, Vec({0, 0}), {Vector(0), std::nullopt});
  EXPECT_NEAR(r.curvature_margin, 0.0, 1e-15);
}

TEST(CheckKktGeneralTest, Validation) {
  EXPECT_THROW(GeneralProblem({Matrix::Identity(3, 3), Vec({0, 0}), 0}, {}),
               Error);
  Matrix nan = Matrix::Identity(2, 2);
  nan(0, 0) = NAN;
  try {
    GeneralProblem({nan, Vec({0, 0}), 0}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFiniteEntry);
  }
}

TEST(CheckKktGeneralTest, AgreesWithScalarEmbedding) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = testing::MakeSolvableInstance(rng);
    const Problem& p = inst.problem;
    Vector gamma(p.m());
    for (int k = 0; k < p.m(); ++k) gamma[k] = testing::Uniform(rng, 0, 2);
    const Vector x = testing::Gaussian(rng, p.n());
    const Multipliers m{gamma, std::nullopt};
    const SlaterOptions opts{.hint = inst.slater, .search = false};
    const CheckReport s = CheckKkt(p, x, m, {}, opts);
    const CheckReport g = CheckKktGeneral(EmbedAsMatrix(p), x, m, {}, opts);
    EXPECT_NEAR(s.stationarity_residual, g.stationarity_residual, 1e-12);
    EXPECT_NEAR(s.complementarity_residual, g.complementarity_residual, 1e-12);
    EXPECT_NEAR(s.feasibility_residual, g.feasibility_residual, 1e-12);
    EXPECT_NEAR(s.curvature_margin, g.curvature_margin, 1e-12);
  }
}

// Builds a problem for which (x*, gamma) satisfies the conditions by
// construction: constraints from the random generator, x* on the boundary of
// the ball constraint, and an objective chosen to make x* stationary with
// nonnegative aggregated curvature.
struct PlantedOptimum {
  Problem problem;
  Vector x;
  Vector gamma;
  Vector slater;
  double box;
};

PlantedOptimum PlantOptimum(std::mt19937_64& rng) {
  for (;;) {
    const auto inst = testing::MakeSolvableInstance(rng);
    const Problem& base = inst.problem;
    const int n = base.n(), m = base.m();
    const ScalarQuadratic& ball = base.constraint(0);
    const Vector center = -ball.b;
    const double radius = std::sqrt(center.squaredNorm() - ball.c);
    const Vector x = center + radius * testing::Gaussian(rng, n).normalized();
    Vector gamma = Vector::Zero(m);
    gamma[0] = testing::Uniform(rng, 0.1, 2.0);
    if (m == 2 && Eval(base.constraint(1), x) > 0.0) continue;
    double curvature_rest = gamma[0];
    Vector linear_rest = gamma[0] * ball.b;
    const double a_j = testing::Uniform(rng, 0.0, 1.0) - curvature_rest;
    const double total = a_j + curvature_rest;
    ScalarQuadratic objective{a_j, -total * x - linear_rest,
                              testing::Uniform(rng, -1, 1)};
    return {Problem(objective, base.constraints()), x, gamma, inst.slater,
            inst.box};
  }
}

TEST(CheckKktTest, SoundAgainstGridOracle) {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 50; ++trial) {
    const PlantedOptimum po = PlantOptimum(rng);
    const CheckReport r =
        CheckKkt(po.problem, po.x, {po.gamma, std::nullopt}, {},
                 {.hint = po.slater});
    ASSERT_EQ(r.verdict, Verdict::kGloballyOptimal)
        << "trial " << trial << " stat " << r.stationarity_residual;
    const int points = po.problem.n() == 2 ? 201 : 41;
    const GridMinimum g =
        GridMinimize(po.problem, GridSpec::Cube(po.problem.n(), po.box, points));
    ASSERT_TRUE(g.feasible);
    EXPECT_GE(g.value, Eval(po.problem.objective(), po.x) - 1e-4)
        << "trial " << trial;
  }
}

TEST(MakeCertificateTest, CopiesReport) {
  const Tolerances tol;
  const CheckReport r = CheckKkt(testing::TrustRegionFixture(), Vec({1, 0}),
                                 {Vec({1}), std::nullopt}, tol);
  const Certificate c = MakeCertificate(Vec({1, 0}), {Vec({1}), std::nullopt},
                                        r, tol);
  EXPECT_EQ(c.verdict, r.verdict);
  EXPECT_EQ(c.aggregated_curvature, 2.0);
  EXPECT_EQ(c.point, Vec({1, 0}));
}

}  // namespace
}  // namespace sqcqp
