#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "fitzmono/symlin.hpp"

namespace fitzmono {

/// A list of points x_1..x_n read as the closed cycle x_1 -> ... -> x_n -> x_1.
using Cycle = std::vector<Vector>;

/// Linear constitutive law y = A x with its symmetric / skew split.
class LinearLaw {
 public:
  LinearLaw() = default;

  explicit LinearLaw(Matrix a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols() || a_.rows() == 0) {
      throw Error(ErrorKind::DimensionMismatch, "a linear law needs a non-empty square matrix");
    }
    if (!a_.allFinite()) {
      throw Error(ErrorKind::InvalidArgument, "law matrix has non-finite entries");
    }
    s_ = SymMatrix(0.5 * (a_ + a_.transpose()));
    // W = A - S keeps A = S + W exact in floating point.
    w_ = a_ - s_.matrix();
  }

  Eigen::Index dim() const { return a_.rows(); }
  const Matrix& matrix() const { return a_; }
  const SymMatrix& sym() const { return s_; }
  const Matrix& skew() const { return w_; }

  Definiteness sym_definiteness() const { return classify(s_); }

  /// Skew part vanishes relative to the size of A.
  bool is_symmetric() const { return w_.norm() <= tol::symmetry * std::max(1.0, a_.norm()); }

  /// Plain monotonicity: the symmetric part is PSD.
  bool is_monotone() const { return sym_definiteness().is_psd(); }

  Vector apply(const Vector& x) const { return a_ * x; }

 private:
  Matrix a_;
  SymMatrix s_;
  Matrix w_;
};

/// Sum_{i=1..n} <x_{i+1} - x_i, A x_i> over the closed cycle.
///
/// The law is n-monotone iff this is <= 0 for every n-cycle.
inline double cycle_sum(const LinearLaw& law, const Cycle& cycle) {
  if (cycle.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "a cycle needs at least two points");
  }
  for (const auto& x : cycle) {
    if (x.size() != law.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "cycle point has the wrong dimension");
    }
  }
  double sum = 0.0;
  const std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vector& xi = cycle[i];
    const Vector& next = cycle[(i + 1) % n];
    sum += (next - xi).dot(law.apply(xi));
  }
  return sum;
}

/// Homogeneity scale of a cycle: max_i ||x_i|| ||A x_i||.
inline double cycle_scale(const LinearLaw& law, const Cycle& cycle) {
  double scale = 0.0;
  for (const auto& x : cycle) scale = std::max(scale, x.norm() * law.apply(x).norm());
  return scale;
}

/// Symmetric (n-1)d x (n-1)d matrix Q of the n-cycle quadratic form.
///
/// Pinning x_n at the origin and stacking z = (x_1, ..., x_{n-1}) gives
/// cycle_sum = -z^T Q z, with S on the diagonal blocks, -A/2 below and -A^T/2
/// above. The law is n-monotone iff Q is PSD. Eliminating blocks from the end
/// produces the Schur complements S, S - A^T S^{-1} A / 4, ..., i.e. the
/// Fitzpatrick kernels H_2..H_n.
inline Matrix cycle_form(const LinearLaw& law, int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "cycle length must be at least 2");
  const Eigen::Index d = law.dim();
  const Eigen::Index m = n - 1;
  Matrix q = Matrix::Zero(m * d, m * d);
  for (Eigen::Index i = 0; i < m; ++i) {
    q.block(i * d, i * d, d, d) = law.sym().matrix();
    if (i + 1 < m) {
      q.block((i + 1) * d, i * d, d, d) = -0.5 * law.matrix();
      q.block(i * d, (i + 1) * d, d, d) = -0.5 * law.matrix().transpose();
    }
  }
  return q;
}

/// Turns a stacked vector z = (x_1..x_{n-1}) into the cycle (x_1, .., x_{n-1}, 0).
inline Cycle cycle_from_stacked(const Vector& z, Eigen::Index dim) {
  const Eigen::Index m = z.size() / dim;
  Cycle cycle;
  cycle.reserve(static_cast<std::size_t>(m + 1));
  for (Eigen::Index i = 0; i < m; ++i) cycle.push_back(z.segment(i * dim, dim));
  cycle.push_back(Vector::Zero(dim));
  return cycle;
}

}  // namespace fitzmono
