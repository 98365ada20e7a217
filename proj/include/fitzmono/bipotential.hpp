#pragma once

// Bipotentials b(x, y): separately convex and lsc in each argument and bounded
// below by <x, y>. Sampled axiom validation and the Cauchy-Schwarz sequence
// b_n(x, y) = ||x|| ||y|| cos^n(psi / n).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include "fitzmono/fitzpatrick.hpp"
#include "fitzmono/oracle.hpp"

namespace fitzmono {

/// Extended-real valued map over R^d x R^d.
struct Bipotential {
  std::string name;
  Eigen::Index dim = 0;
  std::function<double(const Vector&, const Vector&)> eval;

  double operator()(const Vector& x, const Vector& y) const { return eval(x, y); }
};

inline Bipotential make_fitzpatrick_bipotential(const FitzpatrickKernel& kernel, int n) {
  kernel.step(n);  // validates the order up front
  return {"F_{A," + std::to_string(n) + "}", kernel.law().dim(),
          [kernel, n](const Vector& x, const Vector& y) { return eval_F(kernel, n, x, y); }};
}

inline Bipotential make_separable_bipotential(const QuadraticPotential& phi) {
  return {"phi+phi*", phi.matrix().dim(),
          [phi](const Vector& x, const Vector& y) { return separable_bipotential(phi, x, y); }};
}

/// Sampling distribution for the validator: i.i.d. normal coordinates.
struct Sampler {
  double scale = 1.0;
};

struct AxiomCheck {
  /// Smallest observed margin; negative beyond tolerance means a violation.
  double worst_margin = kInfinity;
  std::optional<std::pair<Vector, Vector>> counterexample;
  bool passed = true;
};

struct AxiomReport {
  long samples = 0;
  AxiomCheck lower_bound;  // b(x, y) - <x, y>
  AxiomCheck convex_x;     // (b(x1,y) + b(x2,y))/2 - b((x1+x2)/2, y)
  AxiomCheck convex_y;
  AxiomCheck convex_joint;

  /// The three bipotential axioms; joint convexity is reported separately.
  bool passed() const { return lower_bound.passed && convex_x.passed && convex_y.passed; }
};

namespace detail {

/// Midpoint margin with +inf handled: infinite endpoints never violate.
inline double midpoint_margin(double left, double right, double mid) {
  if (std::isinf(left) || std::isinf(right)) return kInfinity;
  if (std::isinf(mid)) return -kInfinity;
  return 0.5 * (left + right) - mid;
}

inline void record(AxiomCheck& check, double margin, double scale, const Vector& p, const Vector& q) {
  if (margin < check.worst_margin) check.worst_margin = margin;
  if (margin < -1e-10 * scale && check.passed) {
    check.passed = false;
    check.counterexample = std::make_pair(p, q);
  }
}

}  // namespace detail

/// Samples `count` configurations and checks, each with relative slack 1e-10:
/// lower bound, midpoint convexity in x, in y, and jointly in (x, y).
/// A pass means "no counterexample among the samples".
inline AxiomReport validate_axioms(const Bipotential& b, const Sampler& sampler, long count, std::uint64_t seed) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "sample count must be positive");
  std::mt19937_64 rng(seed);
  auto draw = [&] { return Vector(sampler.scale * oracle::standard_normal(rng, b.dim)); };
  AxiomReport report;
  report.samples = count;
  for (long i = 0; i < count; ++i) {
    const Vector x1 = draw(), x2 = draw(), y1 = draw(), y2 = draw();
    const Vector xm = 0.5 * (x1 + x2), ym = 0.5 * (y1 + y2);

    const double b11 = b(x1, y1);
    const double scale11 = pair_scale(x1, y1);
    const double lower = std::isinf(b11) ? kInfinity : b11 - x1.dot(y1);
    detail::record(report.lower_bound, lower, scale11, x1, y1);

    const double scale = std::max({scale11, pair_scale(x2, y2), pair_scale(x2, y1), pair_scale(x1, y2)});
    const double b21 = b(x2, y1);
    detail::record(report.convex_x, detail::midpoint_margin(b11, b21, b(xm, y1)), scale, x1, x2);
    const double b12 = b(x1, y2);
    detail::record(report.convex_y, detail::midpoint_margin(b11, b12, b(x1, ym)), scale, y1, y2);
    const double b22 = b(x2, y2);
    Vector p(2 * b.dim), q(2 * b.dim);
    p << x1, y1;
    q << x2, y2;
    detail::record(report.convex_joint, detail::midpoint_margin(b11, b22, b(xm, ym)), scale, p, q);
  }
  return report;
}

/// Cauchy-Schwarz-Buniakovsky sequence b_n(x, y) = ||x|| ||y|| cos^n(psi / n),
/// cos psi = <x, y> / (||x|| ||y||), psi in [0, pi]. n = kInfiniteOrder gives
/// ||x|| ||y||; a zero argument gives 0.
inline double eval_cs(int n, const Vector& x, const Vector& y) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "order must be at least 2");
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "x and y differ in length");
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) return 0.0;
  const double prod = nx * ny;
  if (n == kInfiniteOrder) return prod;
  const double c = std::clamp(x.dot(y) / prod, -1.0, 1.0);
  const double psi = std::acos(c);
  return prod * std::pow(std::cos(psi / n), n);
}

/// The same-orientation angle psi in [0, pi]; 0 when either argument is zero.
inline double cs_angle(const Vector& x, const Vector& y) {
  const double prod = x.norm() * y.norm();
  if (prod == 0.0) return 0.0;
  return std::acos(std::clamp(x.dot(y) / prod, -1.0, 1.0));
}

inline Bipotential make_cauchy_schwarz_bipotential(int n, Eigen::Index dim) {
  return {n == kInfiniteOrder ? std::string("b_inf") : "b_" + std::to_string(n), dim,
          [n](const Vector& x, const Vector& y) { return eval_cs(n, x, y); }};
}

}  // namespace fitzmono
