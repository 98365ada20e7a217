#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace fitzmono;

TEST(CauchySchwarz, KnownValues) {
  const Vector x = Eigen::Vector2d(1, 0), y = Eigen::Vector2d(0, 1);
  EXPECT_NEAR(eval_cs(2, x, y), 0.5, 1e-15);
  const Vector a = Eigen::Vector3d(1, -2, 0.5);
  for (int n : {2, 3, 10}) EXPECT_NEAR(eval_cs(n, a, 2.5 * a), a.dot(2.5 * a), 1e-12);
  EXPECT_EQ(eval_cs(kInfiniteOrder, a, Eigen::Vector3d(0, 1, 1)), a.norm() * std::sqrt(2.0));
  EXPECT_EQ(eval_cs(3, Vector::Zero(3), a), 0.0);
}

TEST(CauchySchwarz, SecondTermFormulaAndMonotoneInN) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 2000; ++t) {
    const Vector x = gen::normal(rng, 3), y = gen::normal(rng, 3);
    EXPECT_NEAR(eval_cs(2, x, y), 0.5 * x.dot(y) + 0.5 * x.norm() * y.norm(), 1e-12 * pair_scale(x, y));
    double prev = eval_cs(2, x, y);
    EXPECT_GE(prev, x.dot(y) - 1e-12 * pair_scale(x, y));
    for (int n = 3; n <= 12; ++n) {
      const double cur = eval_cs(n, x, y);
      EXPECT_GE(cur, prev - 1e-12 * pair_scale(x, y));
      prev = cur;
    }
    EXPECT_LE(prev, eval_cs(kInfiniteOrder, x, y));
  }
}

TEST(Validate, SeparablePasses) {
  const auto b = make_separable_bipotential(QuadraticPotential(SymMatrix::identity(3)));
  const auto r = validate_axioms(b, {}, 500, 1);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.convex_joint.passed);
}

TEST(Validate, FitzpatrickJointlyConvex) {
  std::mt19937_64 rng(62);
  const LinearLaw law = gen::random_strict_law(rng, 3, 3);
  const auto r = validate_axioms(make_fitzpatrick_bipotential(build_kernels(law, 3), 3), {}, 500, 2);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.convex_joint.passed);
}

TEST(Validate, CauchySchwarzIsBipotential) {
  for (int n : {2, 5, kInfiniteOrder}) {
    const auto r = validate_axioms(make_cauchy_schwarz_bipotential(n, 3), {}, 500, 3);
    EXPECT_TRUE(r.passed()) << n;
  }
}

TEST(Validate, DetectsLowerBoundViolation) {
  const Bipotential bad{"dot-1", 2, [](const Vector& x, const Vector& y) { return x.dot(y) - 1.0; }};
  const auto r = validate_axioms(bad, {}, 50, 4);
  EXPECT_FALSE(r.lower_bound.passed);
  EXPECT_FALSE(r.passed());
  EXPECT_NEAR(r.lower_bound.worst_margin, -1.0, 1e-12);
  EXPECT_TRUE(r.lower_bound.counterexample);
}

TEST(Validate, DetectsNonConvexity) {
  const Bipotential bad{"concave", 2,
                        [](const Vector& x, const Vector& y) { return x.norm() * y.norm() + 5 - x.squaredNorm(); }};
  EXPECT_FALSE(validate_axioms(bad, {}, 200, 5).convex_x.passed);
}

TEST(Validate, HandlesInfiniteValues) {
  const auto k = build_kernels(LinearLaw(Eigen::Vector2d(1, 0).asDiagonal().toDenseMatrix()), 2);
  const auto r = validate_axioms(make_fitzpatrick_bipotential(k, 2), {}, 300, 6);
  EXPECT_TRUE(r.passed());
}
