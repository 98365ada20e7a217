#pragma once

#include <cstdint>
#include <random>

#include "fitzmono/fitzmono.hpp"

namespace fitzmono::gen {

inline Vector normal(std::mt19937_64& rng, Eigen::Index dim) { return oracle::standard_normal(rng, dim); }

inline Matrix normal_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> d;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

/// Random symmetric positive definite matrix with eigenvalues in roughly [0.5, 3].
inline Matrix random_spd(std::mt19937_64& rng, Eigen::Index dim) {
  const Matrix b = normal_matrix(rng, dim, dim);
  Eigen::HouseholderQR<Matrix> qr(b);
  const Matrix q = qr.householderQ();
  std::uniform_real_distribution<double> u(0.5, 3.0);
  Vector ev(dim);
  for (Eigen::Index i = 0; i < dim; ++i) ev(i) = u(rng);
  return q * ev.asDiagonal() * q.transpose();
}

inline Matrix random_skew(std::mt19937_64& rng, Eigen::Index dim) {
  const Matrix b = normal_matrix(rng, dim, dim);
  return 0.5 * (b - b.transpose());
}

/// Random law with H_2..H_n positive definite, min eigenvalue of H_n at least
/// `margin` times that of S. The skew part is shrunk until this holds.
inline LinearLaw random_strict_law(std::mt19937_64& rng, Eigen::Index dim, int n, double margin = 1e-2) {
  const Matrix s = random_spd(rng, dim);
  Matrix w = random_skew(rng, dim);
  const double smin = SymMatrix(s).min_eigenvalue();
  for (;;) {
    const LinearLaw law(s + w);
    const FitzpatrickKernel k = build_kernels(law, n);
    if (k.strict_order() >= n && k.step(n).h->min_eigenvalue() >= margin * smin) return law;
    w *= 0.7;
  }
}

inline coaxial::SymTensor3 random_tensor(std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  return coaxial::SymTensor3({d(rng), d(rng), d(rng), d(rng), d(rng), d(rng)});
}

inline coaxial::SymTensor3 random_deviator(std::mt19937_64& rng) { return random_tensor(rng).dev(); }

/// Random coaxial law with mu, 3 lambda + 2 mu > 0 and theta = target.
inline coaxial::CoaxialLaw coaxial_with_angle(std::mt19937_64& rng, double theta) {
  std::uniform_real_distribution<double> u(0.3, 3.0);
  const double mu = u(rng);
  const double bulk = u(rng);
  const double lambda = (bulk - 2.0 * mu) / 3.0;
  coaxial::SymTensor3 h = random_deviator(rng);
  const double r = std::sin(theta) * std::sqrt(2.0 * mu * bulk);
  h = (2.0 * r / std::sqrt(3.0) / h.norm()) * h;
  return coaxial::CoaxialLaw(lambda, mu, h);
}

}  // namespace fitzmono::gen
