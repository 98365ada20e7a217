#pragma once

// Fitzpatrick kernels H_k of a linear law and the functions
//   F_{A,n}(x, y) = <x, y> + 1/4 <y - Ax, H_n^{-1} (y - Ax)>
// with H_2 = S and H_{k+1} = S - 1/4 A^T H_k^{-1} A.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fitzmono/linear_law.hpp"

namespace fitzmono {

/// Sentinel order standing for n = infinity.
inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Tolerance scale shared by the F evaluations: max(1, |<x,y>|, ||x|| ||y||).
inline double pair_scale(const Vector& x, const Vector& y) {
  return std::max({1.0, std::abs(x.dot(y)), x.norm() * y.norm()});
}

enum class KernelStatus { PD, PSDSingular, Failed };

inline const char* to_string(KernelStatus s) {
  switch (s) {
    case KernelStatus::PD: return "pd";
    case KernelStatus::PSDSingular: return "psd_singular";
    case KernelStatus::Failed: return "failed";
  }
  return "unknown";
}

struct KernelStep {
  int order = 2;
  KernelStatus status = KernelStatus::Failed;
  /// Empty when the step could not be formed (previous kernel singular).
  std::optional<SymMatrix> h;
  /// H_k^{-1}, present only for PD steps.
  std::optional<SymMatrix> inverse;
};

/// Kernels H_2..H_m of a monotone linear law, truncated at the first step that
/// is not positive definite. That step is kept with its status.
class FitzpatrickKernel {
 public:
  FitzpatrickKernel(LinearLaw law, int requested, std::vector<KernelStep> steps)
      : law_(std::move(law)), requested_(requested), steps_(std::move(steps)) {}

  const LinearLaw& law() const { return law_; }
  int requested_order() const { return requested_; }
  const std::vector<KernelStep>& steps() const { return steps_; }

  /// Highest order for which a kernel step was recorded.
  int order() const { return steps_.back().order; }

  bool has(int k) const { return k >= 2 && k <= order(); }

  const KernelStep& step(int k) const {
    if (!has(k)) {
      throw Error(ErrorKind::OrderExceeded,
                  "kernel H_" + std::to_string(k) + " not built (last order " +
                      std::to_string(order()) + ")");
    }
    return steps_[static_cast<std::size_t>(k - 2)];
  }

  /// Largest k with H_2..H_k all PD; 1 when even H_2 is singular.
  int strict_order() const {
    int k = 1;
    for (const auto& s : steps_) {
      if (s.status != KernelStatus::PD) break;
      k = s.order;
    }
    return k;
  }

  /// Largest k with H_2..H_{k-1} PD and H_k PD or PSD-singular.
  int monotone_order() const {
    int k = 1;
    for (const auto& s : steps_) {
      if (s.status == KernelStatus::Failed) break;
      k = s.order;
      if (s.status != KernelStatus::PD) break;
    }
    return k;
  }

  /// First order whose kernel is not PD, if any.
  std::optional<int> stop_index() const {
    for (const auto& s : steps_) {
      if (s.status != KernelStatus::PD) return s.order;
    }
    return std::nullopt;
  }

 private:
  LinearLaw law_;
  int requested_;
  std::vector<KernelStep> steps_;
};

inline KernelStep make_step(int order, const Matrix& h) {
  KernelStep step;
  step.order = order;
  step.h = SymMatrix(0.5 * (h + h.transpose()));
  const auto def = classify(*step.h);
  if (def.is_pd()) {
    step.status = KernelStatus::PD;
    step.inverse = inverse_pd(*step.h);
  } else if (def.is_psd()) {
    step.status = KernelStatus::PSDSingular;
  } else {
    step.status = KernelStatus::Failed;
  }
  return step;
}

/// Runs H_{k+1} = S - 1/4 A^T H_k^{-1} A from H_2 = S up to order n or the
/// first kernel that is not PD. A singular S is accepted: H_2 is then kept as
/// PSD-singular (the semidefinite F_{A,2}) and nothing further is built.
inline FitzpatrickKernel build_kernels(const LinearLaw& law, int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "kernel order must be at least 2");
  if (!law.sym_definiteness().is_psd()) {
    throw Error(ErrorKind::NotStrictlyMonotone, "symmetric part is indefinite; the law is not monotone");
  }
  const Matrix& a = law.matrix();
  std::vector<KernelStep> steps;
  steps.push_back(make_step(2, law.sym().matrix()));
  for (int k = 2; k < n; ++k) {
    const KernelStep& prev = steps.back();
    if (prev.status == KernelStatus::Failed) break;
    if (prev.status == KernelStatus::PSDSingular) {
      KernelStep dead;
      dead.order = k + 1;
      dead.status = KernelStatus::Failed;
      steps.push_back(std::move(dead));
      break;
    }
    const Matrix next = law.sym().matrix() - 0.25 * a.transpose() * prev.inverse->matrix() * a;
    steps.push_back(make_step(k + 1, next));
  }
  return FitzpatrickKernel(law, n, std::move(steps));
}

/// F_{A,n}(x, y). For a PSD-singular H_n the quadratic term uses the
/// minimum-norm solution of H_n xi = y - Ax, and F is +inf when y - Ax lies
/// outside the range of H_n.
inline double eval_F(const FitzpatrickKernel& kernel, int n, const Vector& x, const Vector& y) {
  const LinearLaw& law = kernel.law();
  if (x.size() != law.dim() || y.size() != law.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "x and y must match the law dimension");
  }
  const KernelStep& step = kernel.step(n);
  const Vector r = y - law.apply(x);
  switch (step.status) {
    case KernelStatus::PD:
      return x.dot(y) + 0.25 * r.dot(step.inverse->matrix() * r);
    case KernelStatus::PSDSingular: {
      const RangeSolve sol = solve_or_pinv(*step.h, r);
      if (!sol.in_range) return kInfinity;
      return x.dot(y) + 0.25 * r.dot(sol.solution);
    }
    case KernelStatus::Failed:
      break;
  }
  throw Error(ErrorKind::KernelFailed,
              "H_" + std::to_string(n) + " is not positive semidefinite; the law is not " +
                  std::to_string(n) + "-monotone");
}

/// Closed form for a symmetric PD law:
/// <x,y> + (1 - 1/n) 1/2 <y - Sx, S^{-1}(y - Sx)>, and phi(x) + phi*(y) at n = inf.
inline double eval_F_symmetric(const SymMatrix& s, int n, const Vector& x, const Vector& y) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "order must be at least 2");
  if (x.size() != s.dim() || y.size() != s.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "x and y must match the matrix dimension");
  }
  const SymMatrix s_inv = inverse_pd(s);
  if (n == kInfiniteOrder) {
    return 0.5 * x.dot(s.matrix() * x) + 0.5 * y.dot(s_inv.matrix() * y);
  }
  const Vector r = y - s.matrix() * x;
  const double weight = 1.0 - 1.0 / static_cast<double>(n);
  return x.dot(y) + weight * 0.5 * r.dot(s_inv.matrix() * r);
}

/// Residual of the recursion identity linking consecutive inverse kernels,
///   K_{n+1} = K_n + (I - K_n A / 2) K_{n+1} (I - A^T K_n / 2),   K_m = H_m^{-1}.
/// Frobenius norm of the difference of the two sides.
inline double check_recursion(const FitzpatrickKernel& kernel, int n) {
  const KernelStep& cur = kernel.step(n);
  const KernelStep& next = kernel.step(n + 1);
  if (cur.status != KernelStatus::PD || next.status != KernelStatus::PD) {
    throw Error(ErrorKind::KernelFailed, "check_recursion needs H_n and H_{n+1} positive definite");
  }
  const Matrix& a = kernel.law().matrix();
  const Matrix& kn = cur.inverse->matrix();
  const Matrix& kn1 = next.inverse->matrix();
  const Matrix id = Matrix::Identity(a.rows(), a.cols());
  const Matrix rhs = kn + (id - 0.5 * kn * a) * kn1 * (id - 0.5 * a.transpose() * kn);
  return (kn1 - rhs).norm();
}

/// phi(x) = 1/2 <x, S x> with S symmetric PD.
class QuadraticPotential {
 public:
  explicit QuadraticPotential(SymMatrix s) : s_(std::move(s)), s_inv_(inverse_pd(s_)) {}

  const SymMatrix& matrix() const { return s_; }

  double value(const Vector& x) const { return 0.5 * x.dot(s_.matrix() * x); }
  /// phi*(y) = 1/2 <y, S^{-1} y>.
  double conjugate(const Vector& y) const { return 0.5 * y.dot(s_inv_.matrix() * y); }

 private:
  SymMatrix s_;
  SymMatrix s_inv_;
};

/// phi(x) + phi*(y), the limit of the Fitzpatrick sequence of y = S x.
inline double separable_bipotential(const QuadraticPotential& phi, const Vector& x, const Vector& y) {
  if (x.size() != phi.matrix().dim() || y.size() != phi.matrix().dim()) {
    throw Error(ErrorKind::DimensionMismatch, "x and y must match the potential dimension");
  }
  return phi.value(x) + phi.conjugate(y);
}

/// F_{A,inf}; defined only for cyclically monotone (symmetric) laws.
inline double eval_F_infinity(const LinearLaw& law, const Vector& x, const Vector& y) {
  if (!law.is_symmetric()) {
    throw Error(ErrorKind::NotCyclic, "F at infinity requires a symmetric law");
  }
  return separable_bipotential(QuadraticPotential(law.sym()), x, y);
}

}  // namespace fitzmono
