#pragma once

// Linear coaxial laws y = [tr(k x)] e + 2 mu x on symmetric 3x3 tensors,
// with k = lambda e + h and h traceless.
//
// Tensors are handled in orthonormal (Mandel) coordinates
//   (x11, x22, x33, sqrt2 x12, sqrt2 x13, sqrt2 x23)
// so that tr(x y) is the plain dot product of coordinate vectors.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "fitzmono/fitzpatrick.hpp"
#include "fitzmono/linear_law.hpp"
#include "fitzmono/monotone.hpp"

namespace fitzmono::coaxial {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat2 = Eigen::Matrix2d;

/// Symmetric 3x3 tensor given by its six independent entries.
class SymTensor3 {
 public:
  SymTensor3() { entries_.fill(0.0); }

  /// Entries in the order x11, x22, x33, x12, x13, x23.
  explicit SymTensor3(const std::array<double, 6>& entries) : entries_(entries) {}

  static SymTensor3 identity() { return SymTensor3({1, 1, 1, 0, 0, 0}); }

  static SymTensor3 from_mandel(const Vec6& v) {
    const double r = 1.0 / std::numbers::sqrt2;
    return SymTensor3({v(0), v(1), v(2), r * v(3), r * v(4), r * v(5)});
  }

  static SymTensor3 from_matrix(const Eigen::Matrix3d& m) {
    return SymTensor3({m(0, 0), m(1, 1), m(2, 2), 0.5 * (m(0, 1) + m(1, 0)), 0.5 * (m(0, 2) + m(2, 0)),
                       0.5 * (m(1, 2) + m(2, 1))});
  }

  const std::array<double, 6>& entries() const { return entries_; }

  Vec6 mandel() const {
    const double r = std::numbers::sqrt2;
    Vec6 v;
    v << entries_[0], entries_[1], entries_[2], r * entries_[3], r * entries_[4], r * entries_[5];
    return v;
  }

  Eigen::Matrix3d matrix() const {
    Eigen::Matrix3d m;
    m << entries_[0], entries_[3], entries_[4],  //
        entries_[3], entries_[1], entries_[5],   //
        entries_[4], entries_[5], entries_[2];
    return m;
  }

  double trace() const { return entries_[0] + entries_[1] + entries_[2]; }

  /// Deviatoric part x - (tr x / 3) e.
  SymTensor3 dev() const {
    const double m = trace() / 3.0;
    return SymTensor3({entries_[0] - m, entries_[1] - m, entries_[2] - m, entries_[3], entries_[4], entries_[5]});
  }

  /// sqrt(tr(x^2)).
  double norm() const { return mandel().norm(); }

  SymTensor3 operator+(const SymTensor3& o) const { return from_mandel(mandel() + o.mandel()); }
  SymTensor3 operator-(const SymTensor3& o) const { return from_mandel(mandel() - o.mandel()); }
  SymTensor3 operator*(double c) const { return from_mandel(c * mandel()); }

 private:
  std::array<double, 6> entries_;
};

inline SymTensor3 operator*(double c, const SymTensor3& t) { return t * c; }

/// Duality product tr(x y).
inline double dot(const SymTensor3& x, const SymTensor3& y) { return x.mandel().dot(y.mandel()); }

/// Linear coaxial law with Lame scalars and the deviator h of k.
class CoaxialLaw {
 public:
  CoaxialLaw(double lambda, double mu, const SymTensor3& h) : lambda_(lambda), mu_(mu), h_(h) {
    if (!std::isfinite(lambda) || !std::isfinite(mu)) {
      throw Error(ErrorKind::InvalidArgument, "Lame coefficients must be finite");
    }
    const double slack = 1e-12 * std::max(1.0, h.norm());
    if (std::abs(h.trace()) > slack) {
      throw Error(ErrorKind::InvalidArgument,
                  "deviator h must be traceless (tr h = " + std::to_string(h.trace()) + ")");
    }
  }

  /// Splits an arbitrary symmetric k into lambda = tr k / 3 and h = dev k.
  static CoaxialLaw from_k(const SymTensor3& k, double mu) { return CoaxialLaw(k.trace() / 3.0, mu, k.dev()); }

  static CoaxialLaw hooke(double lambda, double mu) { return CoaxialLaw(lambda, mu, SymTensor3()); }

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  const SymTensor3& h() const { return h_; }
  SymTensor3 k() const { return lambda_ * SymTensor3::identity() + h_; }
  double h_norm() const { return h_.norm(); }

  /// ||h|| small enough to be treated as Hooke's law.
  bool is_hooke() const {
    return h_norm() <= 1e-12 * std::max({1.0, std::abs(lambda_), std::abs(mu_)});
  }

  /// y = [tr(k x)] e + 2 mu x.
  SymTensor3 apply(const SymTensor3& x) const {
    return dot(k(), x) * SymTensor3::identity() + (2.0 * mu_) * x;
  }

  /// Matrix of the law acting on Mandel coordinates: e k^T + 2 mu I.
  Mat6 mandel_matrix() const {
    return SymTensor3::identity().mandel() * k().mandel().transpose() + 2.0 * mu_ * Mat6::Identity();
  }

  /// The same law as a generic linear law on R^6.
  LinearLaw as_linear() const { return LinearLaw(Matrix(mandel_matrix())); }

  /// 2x2 symmetric block s = [[2mu, r], [r, 3lambda + 2mu]], r = sqrt3/2 ||h||.
  Mat2 s_block() const {
    const double r = skew_coefficient();
    Mat2 s;
    s << 2.0 * mu_, r, r, 3.0 * lambda_ + 2.0 * mu_;
    return s;
  }

  /// r = sqrt3/2 ||h||, the skew coefficient of the 2x2 block.
  double skew_coefficient() const { return 0.5 * std::sqrt(3.0) * h_norm(); }

  /// 2x2 block a = s + r J, J = [[0, -1], [1, 0]].
  Mat2 a_block() const {
    Mat2 j;
    j << 0.0, -1.0, 1.0, 0.0;
    return s_block() + skew_coefficient() * j;
  }

 private:
  double lambda_;
  double mu_;
  SymTensor3 h_;
};

/// Orthonormal basis d_1..d_6 of symmetric tensors (columns, Mandel coords):
/// d_1..d_4 deviators orthogonal to h, d_5 = h / ||h||, d_6 = e / sqrt3.
class CoaxialBasis {
 public:
  /// Deterministic completion by pivoted Gram-Schmidt over a fixed deviator list.
  explicit CoaxialBasis(const SymTensor3& h) : d_(Mat6::Zero()) {
    const double s2 = std::numbers::sqrt2;
    const double s6 = std::sqrt(6.0);
    std::vector<Vec6> candidates;
    Vec6 c;
    c << 1 / s2, -1 / s2, 0, 0, 0, 0;
    candidates.push_back(c);
    c << 1 / s6, 1 / s6, -2 / s6, 0, 0, 0;
    candidates.push_back(c);
    for (int i = 3; i < 6; ++i) candidates.push_back(Vec6::Unit(i));

    Vec6 h5;
    const bool has_h = h.norm() > 0.0;
    if (has_h) {
      h5 = h.mandel() / h.norm();
    } else {
      h5 = candidates.front();
    }
    d_.col(4) = h5;
    d_.col(5) = SymTensor3::identity().mandel() / std::sqrt(3.0);

    std::vector<Vec6> accepted{h5};
    for (int slot = 0; slot < 4; ++slot) {
      double best_norm = -1.0;
      Vec6 best;
      for (const auto& cand : candidates) {
        Vec6 v = cand;
        for (int pass = 0; pass < 2; ++pass) {
          for (const auto& q : accepted) v -= q.dot(v) * q;
        }
        if (v.norm() > best_norm) {
          best_norm = v.norm();
          best = v;
        }
      }
      best /= best_norm;
      d_.col(slot) = best;
      accepted.push_back(best);
    }
  }

  /// Same d_5, d_6 with d_1..d_4 mixed by an orthogonal 4x4 matrix.
  CoaxialBasis(const SymTensor3& h, const Eigen::Matrix4d& mixing) : CoaxialBasis(h) {
    const Eigen::Matrix<double, 6, 4> dev = d_.leftCols<4>();
    d_.leftCols<4>() = dev * mixing;
  }

  const Mat6& matrix() const { return d_; }

  /// Coordinates of a tensor in this basis.
  Vec6 coordinates(const SymTensor3& x) const { return d_.transpose() * x.mandel(); }

 private:
  Mat6 d_;
};

/// Matrix of the law in a coaxial basis (D^T M D).
inline Mat6 representation(const CoaxialLaw& law, const CoaxialBasis& basis) {
  return basis.matrix().transpose() * law.mandel_matrix() * basis.matrix();
}

/// Closed-form block matrix diag(2 mu I_4, a).
inline Mat6 block_representation(const CoaxialLaw& law) {
  Mat6 m = Mat6::Zero();
  m.topLeftCorner<4, 4>() = 2.0 * law.mu() * Eigen::Matrix4d::Identity();
  m.bottomRightCorner<2, 2>() = law.a_block();
  return m;
}

struct MonotoneCheck {
  bool monotone = false;
  std::optional<double> theta;
};

/// mu >= 0, 3 lambda + 2 mu >= 0 and tr(h^2) <= 8/3 mu (3 lambda + 2 mu).
/// theta = arcsin((sqrt3/2) ||h|| / sqrt(2 mu (3 lambda + 2 mu))) when both
/// Lame combinations are positive.
inline MonotoneCheck monotone_check(const CoaxialLaw& law) {
  const double mu = law.mu();
  const double bulk = 3.0 * law.lambda() + 2.0 * mu;
  const double scale = std::max({1.0, std::abs(law.lambda()), std::abs(mu)});
  const double slack = tol::pd * scale;
  const double h2 = law.h_norm() * law.h_norm();
  const double bound = 8.0 / 3.0 * mu * bulk;
  MonotoneCheck out;
  out.monotone = mu >= -slack && bulk >= -slack && h2 <= bound + tol::pd * scale * scale;
  if (out.monotone && mu > slack && bulk > slack) {
    const double ratio = law.skew_coefficient() / std::sqrt(2.0 * mu * bulk);
    out.theta = std::asin(std::min(1.0, ratio));
  }
  return out;
}

/// Maximal order: Cyclic for Hooke's law, else Finite(max{n : n theta <= pi}).
inline MaxOrder max_order_coaxial(const CoaxialLaw& law) {
  const MonotoneCheck check = monotone_check(law);
  if (!check.monotone) throw Error(ErrorKind::NotMonotone, "coaxial law is not monotone");
  MaxOrder out;
  out.certified_by = Certification::ClosedForm;
  if (law.is_hooke()) {
    out.kind = OrderKind::Cyclic;
    return out;
  }
  if (!check.theta) {
    throw Error(ErrorKind::NotMonotone, "degenerate Lame coefficients force h = 0");
  }
  out.kind = OrderKind::Finite;
  out.theta = *check.theta;
  out.n = order_from_angle(*check.theta);
  out.boundary = std::abs(out.n * *check.theta - std::numbers::pi) <= kAngleTol;
  return out;
}

/// gamma_k = sin(k theta) / (sin((k-1) theta) cos theta); k / (k-1) at theta = 0.
inline double gamma_closed(int k, double theta) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "gamma is defined for k >= 2");
  if (theta == 0.0) return static_cast<double>(k) / (k - 1);
  return std::sin(k * theta) / (std::sin((k - 1) * theta) * std::cos(theta));
}

/// gamma_2..gamma_kmax from gamma_{k+1} = 2 - 1 / (cos^2 theta gamma_k), gamma_2 = 2.
/// Index i of the result holds gamma_{i+2}.
inline std::vector<double> gamma_recurrence(int kmax, double theta) {
  std::vector<double> g{2.0};
  const double c2 = std::cos(theta) * std::cos(theta);
  for (int k = 2; k < kmax; ++k) g.push_back(2.0 - 1.0 / (c2 * g.back()));
  return g;
}

/// Chebyshev polynomial of the second kind U_k(X) by its three-term recurrence.
inline double chebyshev_u(int k, double x) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "Chebyshev index must be non-negative");
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 2.0 * x;
  for (int i = 2; i <= k; ++i) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

struct CoaxialKernelStep {
  int order = 2;
  /// Coefficient of I_4 in the deviatoric block: k / (k-1) mu.
  double dev_coefficient = 0.0;
  /// gamma_k; the 2x2 block is gamma_k / 2 * s.
  double gamma = 0.0;
  KernelStatus status = KernelStatus::PD;

  Mat6 matrix(const Mat2& s) const {
    Mat6 h = Mat6::Zero();
    h.topLeftCorner<4, 4>() = dev_coefficient * Eigen::Matrix4d::Identity();
    h.bottomRightCorner<2, 2>() = 0.5 * gamma * s;
    return h;
  }
};

/// Block Fitzpatrick kernels of a strictly monotone coaxial law.
class CoaxialKernel {
 public:
  CoaxialKernel(CoaxialLaw law, CoaxialBasis basis, double theta, std::vector<CoaxialKernelStep> steps)
      : law_(std::move(law)), basis_(std::move(basis)), theta_(theta), steps_(std::move(steps)) {}

  const CoaxialLaw& law() const { return law_; }
  const CoaxialBasis& basis() const { return basis_; }
  double theta() const { return theta_; }
  int order() const { return steps_.back().order; }
  const std::vector<CoaxialKernelStep>& steps() const { return steps_; }

  const CoaxialKernelStep& step(int k) const {
    if (k < 2 || k > order()) {
      throw Error(ErrorKind::OrderExceeded, "coaxial kernel H_" + std::to_string(k) + " not built");
    }
    return steps_[static_cast<std::size_t>(k - 2)];
  }

  /// H_k in basis coordinates.
  Mat6 kernel_matrix(int k) const { return step(k).matrix(law_.s_block()); }

 private:
  CoaxialLaw law_;
  CoaxialBasis basis_;
  double theta_;
  std::vector<CoaxialKernelStep> steps_;
};

/// H_k = diag(k/(k-1) mu I_4, gamma_k / 2 s) for k = 2..n.
///
/// Needs mu > 0, 3 lambda + 2 mu > 0 and theta < pi/2. Throws OrderExceeded when
/// n theta > pi; the boundary n theta == pi gives a PSD-singular last step.
inline CoaxialKernel coaxial_kernels(const CoaxialLaw& law, int n,
                                     std::optional<CoaxialBasis> basis = std::nullopt) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "kernel order must be at least 2");
  const MonotoneCheck check = monotone_check(law);
  if (!check.monotone || !check.theta) {
    throw Error(ErrorKind::NotStrictlyMonotone, "coaxial kernels need mu > 0 and 3 lambda + 2 mu > 0");
  }
  const double theta = law.is_hooke() ? 0.0 : *check.theta;
  if (2.0 * theta >= std::numbers::pi - kAngleTol) {
    throw Error(ErrorKind::NotStrictlyMonotone, "theta = pi/2: the law is not strictly monotone");
  }
  std::vector<CoaxialKernelStep> steps;
  for (int k = 2; k <= n; ++k) {
    const double excess = k * theta - std::numbers::pi;
    if (excess > kAngleTol) {
      throw Error(ErrorKind::OrderExceeded, "order " + std::to_string(k) + " exceeds the maximal order " +
                                                std::to_string(order_from_angle(theta)));
    }
    CoaxialKernelStep step;
    step.order = k;
    step.dev_coefficient = static_cast<double>(k) / (k - 1) * law.mu();
    if (excess >= -kAngleTol) {
      step.gamma = 0.0;
      step.status = KernelStatus::PSDSingular;
    } else {
      step.gamma = gamma_closed(k, theta);
      step.status = KernelStatus::PD;
    }
    steps.push_back(step);
  }
  return CoaxialKernel(law, basis ? *basis : CoaxialBasis(law.h()), theta, std::move(steps));
}

/// F_{A,n}(x, y) = tr(x y) + 1/4 tr[(y - A x) H_n^{-1} (y - A x)] evaluated
/// blockwise in the coaxial basis. On the boundary step the 2x2 block is zero
/// and F is +inf unless the residual has no component there.
inline double eval_F_coaxial(const CoaxialKernel& kernel, int n, const SymTensor3& x, const SymTensor3& y) {
  const CoaxialKernelStep& step = kernel.step(n);
  const CoaxialLaw& law = kernel.law();
  const Vec6 xc = kernel.basis().coordinates(x);
  const Vec6 yc = kernel.basis().coordinates(y);
  const Vec6 r = yc - block_representation(law) * xc;

  const Eigen::Vector4d r_dev = r.head<4>();
  const Eigen::Vector2d r_tail = r.tail<2>();
  double quad = r_dev.squaredNorm() / step.dev_coefficient;
  if (step.status == KernelStatus::PD) {
    const Mat2 block = 0.5 * step.gamma * law.s_block();
    quad += r_tail.dot(block.ldlt().solve(r_tail));
  } else if (r_tail.norm() > tol::range * std::max(1.0, r.norm())) {
    return kInfinity;
  }
  return dot(x, y) + 0.25 * quad;
}

}  // namespace fitzmono::coaxial
