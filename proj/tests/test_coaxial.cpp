#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"

using namespace fitzmono;
using namespace fitzmono::coaxial;

namespace {

const SymTensor3 kDiagH({1, -1, 0, 0, 0, 0});

Eigen::Matrix4d random_orthogonal4(std::mt19937_64& rng) {
  return Eigen::HouseholderQR<Matrix>(gen::normal_matrix(rng, 4, 4)).householderQ() * Matrix::Identity(4, 4);
}

}  // namespace

TEST(SymTensor3, TraceAndDeviator) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) EXPECT_NEAR(gen::random_tensor(rng).dev().trace(), 0.0, 1e-14);
  const SymTensor3 x({1, 2, 3, 4, 5, 6});
  EXPECT_NEAR((SymTensor3::from_mandel(x.mandel()).mandel() - x.mandel()).norm(), 0.0, 1e-15);
  EXPECT_NEAR(dot(x, x), (x.matrix() * x.matrix()).trace(), 1e-12);
}

TEST(CoaxialLaw, RejectsTrace) {
  EXPECT_THROW(CoaxialLaw(1, 1, SymTensor3({1, 1, 0, 0, 0, 0})), Error);
}

TEST(CoaxialLaw, Apply) {
  const SymTensor3 e = SymTensor3::identity();
  const auto hooke = CoaxialLaw::hooke(2, 1);
  EXPECT_NEAR((hooke.apply(e).mandel() - 8.0 * e.mandel()).norm(), 0.0, 1e-14);

  const CoaxialLaw law(1, 1, kDiagH);
  const SymTensor3 y = law.apply(e);
  EXPECT_NEAR((y.mandel() - 5.0 * e.mandel()).norm(), 0.0, 1e-14);
  EXPECT_NEAR(dot(e, y), 15.0, 1e-13);

  const SymTensor3 diag({0.3, -2, 1.1, 0, 0, 0});
  const SymTensor3 yd = law.apply(diag);
  EXPECT_EQ(yd.entries()[3], 0.0);
  EXPECT_EQ(yd.entries()[4], 0.0);
  EXPECT_EQ(yd.entries()[5], 0.0);
}

TEST(CoaxialLaw, MandelMatrixMatchesApply) {
  std::mt19937_64 rng(42);
  const CoaxialLaw law(0.7, 1.3, gen::random_deviator(rng));
  for (int t = 0; t < 20; ++t) {
    const SymTensor3 x = gen::random_tensor(rng);
    EXPECT_NEAR((law.mandel_matrix() * x.mandel() - law.apply(x).mandel()).norm(), 0.0, 1e-12);
  }
}

TEST(CoaxialBasis, OrthonormalAndBlockForm) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 50; ++t) {
    const CoaxialLaw law(std::uniform_real_distribution<double>(-0.5, 2)(rng), 1.0 + t * 0.01,
                         gen::random_deviator(rng));
    const CoaxialBasis b(law.h());
    EXPECT_LE((b.matrix().transpose() * b.matrix() - Mat6::Identity()).norm(), 1e-12);
    EXPECT_LE((representation(law, b) - block_representation(law)).norm(), 1e-10);
  }
}

TEST(CoaxialBasis, HookeBasis) {
  const CoaxialBasis b(SymTensor3{});
  EXPECT_LE((b.matrix().transpose() * b.matrix() - Mat6::Identity()).norm(), 1e-12);
}

TEST(MonotoneCheck, KnownValues) {
  const auto c = monotone_check(CoaxialLaw(1, 1, kDiagH));
  EXPECT_TRUE(c.monotone);
  ASSERT_TRUE(c.theta);
  EXPECT_NEAR(std::sin(*c.theta), std::sqrt(3.0 / 20.0), 1e-14);
  EXPECT_NEAR(*c.theta, 0.39770, 1e-5);

  // tr(h^2) = 40/3: equality in the bound, theta = pi/2.
  const double a = std::sqrt(20.0 / 3.0);
  const auto edge = monotone_check(CoaxialLaw(1, 1, SymTensor3({a, -a, 0, 0, 0, 0})));
  EXPECT_TRUE(edge.monotone);
  ASSERT_TRUE(edge.theta);
  EXPECT_NEAR(*edge.theta, std::numbers::pi / 2, 1e-6);

  const double b = a * (1 + 1e-6);
  EXPECT_FALSE(monotone_check(CoaxialLaw(1, 1, SymTensor3({b, -b, 0, 0, 0, 0}))).monotone);
  EXPECT_FALSE(monotone_check(CoaxialLaw::hooke(1, -1)).monotone);
}

TEST(MonotoneCheck, AgreesWithSymmetricPart) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(-1, 3);
  for (int t = 0; t < 300; ++t) {
    const CoaxialLaw law(u(rng), u(rng), u(rng) * gen::random_deviator(rng));
    const bool generic = law.as_linear().is_monotone();
    const auto c = monotone_check(law);
    const double margin = std::abs(law.h_norm() * law.h_norm() - 8.0 / 3.0 * law.mu() * (3 * law.lambda() + 2 * law.mu()));
    if (margin > 1e-6 && std::abs(law.mu()) > 1e-6) EXPECT_EQ(c.monotone, generic);
  }
}

TEST(MaxOrderCoaxial, KnownValues) {
  EXPECT_EQ(max_order_coaxial(CoaxialLaw::hooke(2, 1)).kind, OrderKind::Cyclic);
  const auto o = max_order_coaxial(CoaxialLaw(1, 1, kDiagH));
  EXPECT_EQ(o.kind, OrderKind::Finite);
  EXPECT_EQ(o.n, 7);
  EXPECT_THROW(max_order_coaxial(CoaxialLaw::hooke(1, -1)), Error);

  std::mt19937_64 rng(45);
  EXPECT_EQ(max_order_coaxial(gen::coaxial_with_angle(rng, std::numbers::pi / 4)).n, 4);
}

TEST(MaxOrderCoaxial, OracleConfirms) {
  const LinearLaw law = CoaxialLaw(1, 1, kDiagH).as_linear();
  EXPECT_TRUE(oracle::falsify_n_monotone(law, 8, 2000, 1).witness);
  EXPECT_FALSE(oracle::falsify_n_monotone(law, 7, 500, 1).witness);
}

TEST(MaxOrderCoaxial, FiniteForEveryNonzeroH) {
  std::mt19937_64 rng(46);
  for (double scale : {1e-3, 1e-1, 1.0}) {
    const CoaxialLaw law(1, 1, scale * gen::random_deviator(rng));
    EXPECT_EQ(max_order_coaxial(law).kind, OrderKind::Finite);
  }
}

TEST(Gamma, Values) {
  const double t = std::numbers::pi / 6;
  EXPECT_NEAR(gamma_closed(2, t), 2.0, 1e-15);
  EXPECT_NEAR(gamma_closed(3, t), 4.0 / 3.0, 1e-14);
  const auto g = gamma_recurrence(3, t);
  EXPECT_NEAR(g[1], 4.0 / 3.0, 1e-14);
  for (int k = 2; k <= 8; ++k) EXPECT_NEAR(gamma_closed(k, 1e-9), k / (k - 1.0), 1e-8);
}

TEST(Gamma, RecurrenceAndChebyshev) {
  for (double t : {std::numbers::pi / 7, std::numbers::pi / 5, 0.3}) {
    const auto g = gamma_recurrence(10, t);
    const int kmax = std::min(10, order_from_angle(t));
    for (int k = 2; k <= kmax; ++k) {
      if (std::abs(std::sin((k - 1) * t)) < 1e-9) continue;
      EXPECT_NEAR(g[k - 2], gamma_closed(k, t), 1e-12) << k;
      const double c = std::cos(t);
      EXPECT_NEAR(c * gamma_closed(k, t), chebyshev_u(k - 1, c) / chebyshev_u(k - 2, c), 1e-12) << k;
    }
  }
}

TEST(CoaxialKernels, ThetaZeroLimit) {
  const auto law = CoaxialLaw::hooke(1, 1);
  const auto k = coaxial_kernels(law, 5);
  for (int i = 2; i <= 5; ++i) {
    const Mat2 block = k.kernel_matrix(i).bottomRightCorner<2, 2>();
    Mat2 expected;
    expected << 2, 0, 0, 5;
    EXPECT_LE((block - 0.5 * i / (i - 1.0) * expected).norm(), 1e-12);
  }
}

TEST(CoaxialKernels, ExceedAndBoundary) {
  std::mt19937_64 rng(47);
  const auto law = gen::coaxial_with_angle(rng, std::numbers::pi / 6);
  const auto k = coaxial_kernels(law, 6);
  EXPECT_EQ(k.step(6).status, KernelStatus::PSDSingular);
  EXPECT_THROW(coaxial_kernels(law, 7), Error);
}

TEST(EvalFCoaxial, GraphPoint) {
  const CoaxialLaw law(1, 1, kDiagH);
  const auto k = coaxial_kernels(law, 5);
  std::mt19937_64 rng(48);
  const SymTensor3 x = gen::random_tensor(rng);
  const SymTensor3 y = law.apply(x);
  EXPECT_NEAR(eval_F_coaxial(k, 5, x, y), dot(x, y), 1e-10 * std::max(1.0, x.norm() * y.norm()));
}

TEST(EvalFCoaxial, HookeMatchesSymmetric) {
  const auto law = CoaxialLaw::hooke(2, 1);
  const auto k = coaxial_kernels(law, 4);
  const SymMatrix s(Matrix(law.mandel_matrix()));
  std::mt19937_64 rng(49);
  for (int t = 0; t < 50; ++t) {
    const SymTensor3 x = gen::random_tensor(rng), y = gen::random_tensor(rng);
    EXPECT_NEAR(eval_F_coaxial(k, 4, x, y), eval_F_symmetric(s, 4, x.mandel(), y.mandel()),
                1e-10 * pair_scale(x.mandel(), y.mandel()));
  }
}

TEST(EvalFCoaxial, MatchesGenericAtPiOverSix) {
  std::mt19937_64 rng(50);
  const auto law = gen::coaxial_with_angle(rng, std::numbers::pi / 6);
  const auto ck = coaxial_kernels(law, 3);
  const auto gk = build_kernels(law.as_linear(), 3);
  for (int t = 0; t < 100; ++t) {
    const SymTensor3 x = gen::random_tensor(rng), y = gen::random_tensor(rng);
    EXPECT_NEAR(eval_F_coaxial(ck, 3, x, y), eval_F(gk, 3, x.mandel(), y.mandel()),
                1e-10 * pair_scale(x.mandel(), y.mandel()));
  }
}

TEST(EvalFCoaxial, BasisIndependent) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    const auto law = gen::coaxial_with_angle(rng, 0.2 + 0.02 * t);
    const int n = std::min(5, order_from_angle(0.2 + 0.02 * t));
    const auto k1 = coaxial_kernels(law, n, CoaxialBasis(law.h(), random_orthogonal4(rng)));
    const auto k2 = coaxial_kernels(law, n, CoaxialBasis(law.h(), random_orthogonal4(rng)));
    const SymTensor3 x = gen::random_tensor(rng), y = gen::random_tensor(rng);
    EXPECT_NEAR(eval_F_coaxial(k1, n, x, y), eval_F_coaxial(k2, n, x, y), 1e-10 * pair_scale(x.mandel(), y.mandel()));
  }
}
