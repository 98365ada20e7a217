#pragma once

// Symmetric dense linear algebra: eigendecomposition, definiteness,
// square roots, inverse and range-aware pseudo-inverse solves. Every derived
// quantity goes through the cached eigendecomposition so that a single
// tolerance regime applies everywhere.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "fitzmono/error.hpp"

namespace fitzmono {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace tol {
/// Relative threshold separating PD / PSD / indefinite spectra.
inline constexpr double pd = 1e-10;
/// Relative symmetry defect accepted by SymMatrix.
inline constexpr double symmetry = 1e-12;
/// Relative residual accepted for range membership in solve_or_pinv.
inline constexpr double range = 1e-8;
}  // namespace tol

/// Dense symmetric matrix with a cached eigendecomposition.
///
/// The input is checked for symmetry within 1e-12 * max(1, ||M||_F) and then
/// symmetrized exactly, so downstream formulas can rely on M == M^T.
class SymMatrix {
 public:
  SymMatrix() = default;

  explicit SymMatrix(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
      throw Error(ErrorKind::DimensionMismatch, "SymMatrix needs a non-empty square matrix");
    }
    const double scale = std::max(1.0, m.norm());
    const double defect = (m - m.transpose()).norm();
    if (defect > tol::symmetry * scale) {
      throw Error(ErrorKind::NonSymmetric,
                  "symmetry defect " + std::to_string(defect) + " exceeds tolerance");
    }
    m_ = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m_);
    values_ = eig.eigenvalues();
    vectors_ = eig.eigenvectors();
  }

  static SymMatrix identity(Eigen::Index n) { return SymMatrix(Matrix::Identity(n, n)); }

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  /// Eigenvalues in ascending order.
  const Vector& eigenvalues() const { return values_; }
  const Matrix& eigenvectors() const { return vectors_; }

  double min_eigenvalue() const { return values_(0); }
  double max_eigenvalue() const { return values_(values_.size() - 1); }
  /// Spectral norm.
  double norm() const { return std::max(std::abs(min_eigenvalue()), std::abs(max_eigenvalue())); }

  /// Q f(Lambda) Q^T for a scalar map f applied to the spectrum.
  template <typename F>
  Matrix spectral_map(F&& f) const {
    Vector mapped = values_.unaryExpr(std::forward<F>(f));
    return vectors_ * mapped.asDiagonal() * vectors_.transpose();
  }

 private:
  Matrix m_;
  Vector values_;
  Matrix vectors_;
};

enum class DefinitenessKind { PositiveDefinite, PositiveSemidefinite, Indefinite };

inline const char* to_string(DefinitenessKind k) {
  switch (k) {
    case DefinitenessKind::PositiveDefinite: return "positive_definite";
    case DefinitenessKind::PositiveSemidefinite: return "positive_semidefinite";
    case DefinitenessKind::Indefinite: return "indefinite";
  }
  return "unknown";
}

struct Definiteness {
  DefinitenessKind kind;
  double min_eigenvalue;
  double max_eigenvalue;

  bool is_pd() const { return kind == DefinitenessKind::PositiveDefinite; }
  bool is_psd() const { return kind != DefinitenessKind::Indefinite; }
};

inline Definiteness classify(const SymMatrix& m) {
  const double lo = m.min_eigenvalue();
  const double hi = m.max_eigenvalue();
  const double slack = tol::pd * std::max(1.0, hi);
  DefinitenessKind kind = DefinitenessKind::Indefinite;
  if (lo > slack) {
    kind = DefinitenessKind::PositiveDefinite;
  } else if (lo >= -slack) {
    kind = DefinitenessKind::PositiveSemidefinite;
  }
  return {kind, lo, hi};
}

/// Eigenvalues below this are treated as zero by the PSD routines.
inline double null_cutoff(const SymMatrix& m) {
  return tol::pd * std::max(1.0, m.max_eigenvalue());
}

/// Positive semidefinite square root.
inline SymMatrix sqrt_psd(const SymMatrix& m) {
  if (!classify(m).is_psd()) {
    throw Error(ErrorKind::NotPSD, "sqrt_psd of an indefinite matrix");
  }
  return SymMatrix(m.spectral_map([](double v) { return std::sqrt(std::max(v, 0.0)); }));
}

inline SymMatrix inverse_pd(const SymMatrix& m) {
  if (!classify(m).is_pd()) {
    throw Error(ErrorKind::NotPD, "inverse of a matrix that is not positive definite");
  }
  return SymMatrix(m.spectral_map([](double v) { return 1.0 / v; }));
}

/// Inverse square root S^{-1/2} of a PD matrix.
inline SymMatrix inv_sqrt_pd(const SymMatrix& m) {
  if (!classify(m).is_pd()) {
    throw Error(ErrorKind::NotPD, "inverse square root of a matrix that is not positive definite");
  }
  return SymMatrix(m.spectral_map([](double v) { return 1.0 / std::sqrt(v); }));
}

/// Moore-Penrose pseudo-inverse; eigenvalues under null_cutoff are dropped.
inline Matrix pinv_psd(const SymMatrix& m) {
  const double cut = null_cutoff(m);
  return m.spectral_map([cut](double v) { return std::abs(v) > cut ? 1.0 / v : 0.0; });
}

struct RangeSolve {
  Vector solution;
  bool in_range = false;
};

/// Minimum-norm least-squares solve of M xi = b.
///
/// Range membership is decided by the residual of the least-squares solution,
/// ||M xi - b|| <= 1e-8 max(1, ||b||); failure is reported, not thrown, and the
/// least-squares solution is still returned.
inline RangeSolve solve_or_pinv(const SymMatrix& m, const Vector& b) {
  if (b.size() != m.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "right-hand side has the wrong length");
  }
  RangeSolve out;
  out.solution = pinv_psd(m) * b;
  const double residual = (m.matrix() * out.solution - b).norm();
  out.in_range = residual <= tol::range * std::max(1.0, b.norm());
  return out;
}

}  // namespace fitzmono
