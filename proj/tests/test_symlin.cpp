#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace fitzmono;

TEST(Classify, Identity) {
  const auto d = classify(SymMatrix::identity(2));
  EXPECT_EQ(d.kind, DefinitenessKind::PositiveDefinite);
  EXPECT_DOUBLE_EQ(d.min_eigenvalue, 1.0);
  EXPECT_DOUBLE_EQ(d.max_eigenvalue, 1.0);
}

TEST(Classify, SemidefiniteAndIndefinite) {
  EXPECT_EQ(classify(SymMatrix(Eigen::Vector2d(1, 0).asDiagonal().toDenseMatrix())).kind,
            DefinitenessKind::PositiveSemidefinite);
  EXPECT_EQ(classify(SymMatrix(Eigen::Vector2d(1, -1).asDiagonal().toDenseMatrix())).kind,
            DefinitenessKind::Indefinite);
}

TEST(Classify, ToleranceScalesWithSpectrum) {
  Matrix m = Eigen::Vector2d(1e6, -1e-5).asDiagonal();
  EXPECT_EQ(classify(SymMatrix(m)).kind, DefinitenessKind::PositiveSemidefinite);
  m(1, 1) = -1e-3;
  EXPECT_EQ(classify(SymMatrix(m)).kind, DefinitenessKind::Indefinite);
}

TEST(SymMatrix, RejectsAsymmetric) {
  Matrix m(2, 2);
  m << 1, 2, 3, 4;
  try {
    SymMatrix s(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonSymmetric);
  }
}

TEST(SqrtPsd, Diagonal) {
  const Matrix r = sqrt_psd(SymMatrix(Eigen::Vector2d(4, 9).asDiagonal().toDenseMatrix())).matrix();
  EXPECT_NEAR((r - Matrix(Eigen::Vector2d(2, 3).asDiagonal())).norm(), 0.0, 1e-14);
  EXPECT_NEAR((sqrt_psd(SymMatrix::identity(3)).matrix() - Matrix::Identity(3, 3)).norm(), 0.0, 1e-14);
}

TEST(SqrtPsd, RejectsIndefinite) {
  EXPECT_THROW(sqrt_psd(SymMatrix(Eigen::Vector2d(1, -1).asDiagonal().toDenseMatrix())), Error);
}

TEST(SqrtPsd, SquaresBackRandom) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index dim = 1 + t % 6;
    const Matrix b = gen::normal_matrix(rng, dim, dim - (t % 2 == 0 && dim > 1 ? 1 : 0));
    const Matrix m = b * b.transpose();  // PSD, rank-deficient every other draw
    const Matrix r = sqrt_psd(SymMatrix(m)).matrix();
    EXPECT_LE((r * r - m).norm(), 1e-10 * std::max(1.0, m.norm()));
  }
}

TEST(Classify, OrthogonalInvariance) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index dim = 2 + t % 5;
    const Matrix b = gen::normal_matrix(rng, dim, dim);
    const Matrix m = 0.5 * (b + b.transpose());
    const Matrix q = Eigen::HouseholderQR<Matrix>(gen::normal_matrix(rng, dim, dim)).householderQ();
    const auto d1 = classify(SymMatrix(m));
    const auto d2 = classify(SymMatrix(q.transpose() * m * q));
    EXPECT_EQ(d1.kind, d2.kind);
    EXPECT_NEAR(d1.min_eigenvalue, d2.min_eigenvalue, 1e-9);
    EXPECT_NEAR(d1.max_eigenvalue, d2.max_eigenvalue, 1e-9);
  }
}

TEST(SolveOrPinv, RangeCases) {
  const SymMatrix m(Eigen::Vector2d(1, 0).asDiagonal().toDenseMatrix());
  auto in = solve_or_pinv(m, Eigen::Vector2d(1, 0));
  EXPECT_TRUE(in.in_range);
  EXPECT_NEAR((in.solution - Eigen::Vector2d(1, 0)).norm(), 0.0, 1e-14);
  EXPECT_FALSE(solve_or_pinv(m, Eigen::Vector2d(0, 1)).in_range);

  const Vector b = Eigen::Vector3d(0.3, -2, 5);
  auto id = solve_or_pinv(SymMatrix::identity(3), b);
  EXPECT_TRUE(id.in_range);
  EXPECT_NEAR((id.solution - b).norm(), 0.0, 1e-14);
}

TEST(InversePd, RejectsSingular) {
  EXPECT_THROW(inverse_pd(SymMatrix(Eigen::Vector2d(1, 0).asDiagonal().toDenseMatrix())), Error);
}

TEST(InvSqrtPd, Property) {
  std::mt19937_64 rng(13);
  const Matrix s = gen::random_spd(rng, 4);
  const Matrix r = inv_sqrt_pd(SymMatrix(s)).matrix();
  EXPECT_LE((r * s * r - Matrix::Identity(4, 4)).norm(), 1e-12);
}
