#pragma once

// n-monotonicity of linear laws and the maximal monotonicity order.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include "fitzmono/fitzpatrick.hpp"
#include "fitzmono/linear_law.hpp"
#include "fitzmono/oracle.hpp"

namespace fitzmono {

/// Angular slack for the boundary n * theta == pi.
inline constexpr double kAngleTol = 1e-9;

enum class OrderKind { Finite, Cyclic, NotMonotone };

/// How a MaxOrder verdict was established.
enum class Certification {
  SymmetricPart,  // definiteness of S alone (not monotone, or symmetric PSD => cyclic)
  ClosedForm,     // characteristic angle criterion n * theta <= pi
  HRecursion,     // kernels H_2..H_n
  Oracle,         // cycle search only
};

inline const char* to_string(OrderKind k) {
  switch (k) {
    case OrderKind::Finite: return "finite";
    case OrderKind::Cyclic: return "cyclic";
    case OrderKind::NotMonotone: return "not_monotone";
  }
  return "unknown";
}

inline const char* to_string(Certification c) {
  switch (c) {
    case Certification::SymmetricPart: return "symmetric-part";
    case Certification::ClosedForm: return "closed-form";
    case Certification::HRecursion: return "H-recursion";
    case Certification::Oracle: return "oracle";
  }
  return "unknown";
}

struct MaxOrder {
  OrderKind kind = OrderKind::NotMonotone;
  /// Meaningful for Finite only.
  int n = 0;
  std::optional<double> theta;
  /// Cycle of length n + 1 (or 2 for NotMonotone) with positive cycle sum.
  std::optional<Cycle> witness;
  Certification certified_by = Certification::SymmetricPart;
  /// Search stopped at the order cap: n is a lower bound only.
  bool capped = false;
  /// n-monotone exactly on the boundary (singular last kernel / n theta == pi).
  bool boundary = false;
};

/// Largest n >= 2 with n * theta <= pi + kAngleTol.
inline int order_from_angle(double theta) {
  if (theta <= 0.0) throw Error(ErrorKind::InvalidArgument, "angle must be positive");
  return static_cast<int>(std::floor((std::numbers::pi + kAngleTol) / theta));
}

struct AngleVerdict {
  bool monotone = false;
  double theta = 0.0;
};

/// Characteristic angle of a 2x2 law with S PD and W = r J:
/// theta = arctan(|r| / sqrt(det S)) in (0, pi/2).
inline double angle_2x2(const LinearLaw& law) {
  if (law.dim() != 2) throw Error(ErrorKind::NotApplicable, "closed form needs a 2x2 law");
  if (!law.sym_definiteness().is_pd()) {
    throw Error(ErrorKind::NotApplicable, "closed form needs a positive definite symmetric part");
  }
  if (law.is_symmetric()) throw Error(ErrorKind::NotApplicable, "closed form needs a nonzero skew part");
  const double r = law.skew()(1, 0);
  const double det = law.sym().matrix().determinant();
  return std::atan(std::abs(r) / std::sqrt(det));
}

inline AngleVerdict is_n_monotone_2x2(const LinearLaw& law, int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "order must be at least 2");
  const double theta = angle_2x2(law);
  return {n * theta <= std::numbers::pi + kAngleTol, theta};
}

/// The two expressions of H_3 for S PD:
/// S - 1/4 A^T S^{-1} A and 3/4 S - 1/4 W S^{-1} W^T.
struct H3Forms {
  Matrix from_law;
  Matrix from_skew;
};

inline H3Forms h3_forms(const LinearLaw& law) {
  const Matrix s_inv = inverse_pd(law.sym()).matrix();
  const Matrix& a = law.matrix();
  const Matrix& s = law.sym().matrix();
  const Matrix& w = law.skew();
  return {s - 0.25 * a.transpose() * s_inv * a, 0.75 * s - 0.25 * w * s_inv * w.transpose()};
}

struct OrderOptions {
  std::uint64_t seed = 0;
  /// Random cycles per falsification attempt.
  long trials = 2000;
  /// Highest order examined; verdicts reaching it are flagged `capped`.
  int cap = oracle::kMaxOrder;
};

namespace detail {

inline std::optional<Cycle> find_witness(const LinearLaw& law, int n, const OrderOptions& opt) {
  if (n > oracle::kMaxOrder) return std::nullopt;
  return oracle::falsify_n_monotone(law, n, opt.trials, opt.seed).witness;
}

}  // namespace detail

/// Maximal monotonicity order of y = A x.
///
///  - S indefinite: NotMonotone, with a violating 2-cycle.
///  - W = 0 and S PSD: Cyclic.
///  - 2x2 with S PD and W != 0: Finite(max{n : n theta <= pi}), theta reported.
///  - S PD, W != 0, dim > 2: largest n with H_2..H_n PD (H_n may be singular
///    on the boundary), certified by the kernel recursion.
///  - S singular, W != 0: cycle search only.
/// Finite verdicts carry a witness (n+1)-cycle when the oracle finds one.
inline MaxOrder max_order(const LinearLaw& law, const OrderOptions& opt = {}) {
  MaxOrder out;
  const Definiteness def = law.sym_definiteness();
  if (!def.is_psd()) {
    out.kind = OrderKind::NotMonotone;
    out.certified_by = Certification::SymmetricPart;
    out.witness = detail::find_witness(law, 2, opt);
    return out;
  }
  if (law.is_symmetric()) {
    out.kind = OrderKind::Cyclic;
    out.certified_by = Certification::SymmetricPart;
    return out;
  }
  out.kind = OrderKind::Finite;
  if (def.is_pd() && law.dim() == 2) {
    const double theta = angle_2x2(law);
    out.theta = theta;
    out.n = order_from_angle(theta);
    out.boundary = std::abs(out.n * theta - std::numbers::pi) <= kAngleTol;
    out.certified_by = Certification::ClosedForm;
    out.witness = detail::find_witness(law, out.n + 1, opt);
    return out;
  }
  if (def.is_pd()) {
    const FitzpatrickKernel kernel = build_kernels(law, opt.cap);
    out.certified_by = Certification::HRecursion;
    if (!kernel.stop_index()) {
      out.n = opt.cap;
      out.capped = true;
      return out;
    }
    out.n = kernel.monotone_order();
    out.boundary = kernel.step(out.n).status == KernelStatus::PSDSingular;
    out.witness = detail::find_witness(law, out.n + 1, opt);
    return out;
  }
  out.certified_by = Certification::Oracle;
  for (int m = 3; m <= opt.cap; ++m) {
    if (auto w = detail::find_witness(law, m, opt)) {
      out.n = m - 1;
      out.witness = std::move(w);
      return out;
    }
  }
  out.n = opt.cap;
  out.capped = true;
  return out;
}

/// n-monotonicity read off a MaxOrder verdict.
inline bool is_n_monotone(const MaxOrder& order, int n) {
  switch (order.kind) {
    case OrderKind::Cyclic: return true;
    case OrderKind::NotMonotone: return false;
    case OrderKind::Finite: return n <= order.n;
  }
  return false;
}

}  // namespace fitzmono
