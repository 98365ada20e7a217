#pragma once

// Brute-force checks that stay independent of the kernel recursion:
// cycle-sum falsification of n-monotonicity, the stationarity system behind
// F_{A,n}, and a sampled lower bound on F_{A,n} straight from its definition.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fitzmono/fitzpatrick.hpp"
#include "fitzmono/linear_law.hpp"

namespace fitzmono::oracle {

inline constexpr int kMaxOrder = 32;
inline constexpr Eigen::Index kMaxDim = 16;
/// Violation threshold relative to cycle_scale.
inline constexpr double kViolationTol = 1e-9;

inline void check_caps(const LinearLaw& law, int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "order must be at least 2");
  if (n > kMaxOrder || law.dim() > kMaxDim) {
    throw Error(ErrorKind::CapExceeded, "oracle limited to n <= 32 and dim <= 16");
  }
}

inline Vector standard_normal(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = normal(rng);
  return v;
}

struct Falsification {
  std::optional<Cycle> witness;
  double cycle_sum = 0.0;
  /// "spectral", "pattern", "skew-polygon" or "random".
  std::string source;
  long candidates = 0;
};

struct FalsifyOptions {
  /// Try the minimising direction of the cycle quadratic form first.
  bool spectral = true;
  /// Try the structured cycles built from the skew part.
  bool patterns = true;
};

namespace detail {

inline bool violates(const LinearLaw& law, const Cycle& c, double& sum) {
  sum = cycle_sum(law, c);
  const double scale = cycle_scale(law, c);
  return scale > 0.0 && sum > kViolationTol * scale;
}

/// Orthonormal pairs (u, v) spanning the invariant planes of the skew part.
inline std::vector<std::pair<Vector, Vector>> skew_planes(const LinearLaw& law) {
  std::vector<std::pair<Vector, Vector>> planes;
  const Matrix& w = law.skew();
  if (w.norm() == 0.0) return planes;
  // W^T W is symmetric PSD; its eigenvectors pair up as (u, W u / |W u|).
  Eigen::SelfAdjointEigenSolver<Matrix> eig(w.transpose() * w);
  const Eigen::Index d = law.dim();
  for (Eigen::Index i = d - 1; i >= 0; --i) {
    if (eig.eigenvalues()(i) <= 1e-14 * std::max(1.0, eig.eigenvalues()(d - 1))) break;
    Vector u = eig.eigenvectors().col(i);
    Vector v = w * u;
    v.normalize();
    planes.emplace_back(u, v);
  }
  return planes;
}

inline std::vector<Cycle> structured_cycles(const LinearLaw& law, int n) {
  std::vector<Cycle> out;
  const Eigen::Index d = law.dim();
  std::vector<std::pair<Vector, Vector>> pairs = skew_planes(law);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i != j) pairs.emplace_back(Vector::Unit(d, i), Vector::Unit(d, j));
    }
  }
  // (c u, v, 0, ..., 0): the small-offset triangle, padded with repeated origins.
  for (const auto& [u, v] : pairs) {
    for (double c : {0.01, 0.1, 0.25, 0.5, 1.0, -0.01, -0.1, -0.25, -0.5, -1.0}) {
      Cycle cyc(static_cast<std::size_t>(n), Vector::Zero(d));
      cyc[0] = c * u;
      if (n >= 3) cyc[1] = v;
      out.push_back(std::move(cyc));
    }
  }
  // Regular polygons in the skew planes, in the metric of S when it is PD.
  std::optional<SymMatrix> s_inv_sqrt;
  if (law.sym_definiteness().is_pd()) s_inv_sqrt = inv_sqrt_pd(law.sym());
  for (const auto& [u, v] : skew_planes(law)) {
    for (int orient : {1, -1}) {
      Cycle cyc;
      for (int k = 0; k < n; ++k) {
        const double phi = orient * 2.0 * std::numbers::pi * k / n;
        Vector p = std::cos(phi) * u + std::sin(phi) * v;
        if (s_inv_sqrt) p = s_inv_sqrt->matrix() * p;
        cyc.push_back(p);
      }
      out.push_back(std::move(cyc));
    }
  }
  return out;
}

}  // namespace detail

/// Looks for an n-cycle with positive cycle sum. Returns the first one found,
/// scanning the spectral candidate, then structured cycles, then `trials`
/// standard-normal cycles drawn from a generator seeded with `seed`.
inline Falsification falsify_n_monotone(const LinearLaw& law, int n, long trials, std::uint64_t seed,
                                        const FalsifyOptions& options = {}) {
  check_caps(law, n);
  Falsification result;
  double sum = 0.0;
  auto accept = [&](Cycle c, const char* source) {
    ++result.candidates;
    if (!detail::violates(law, c, sum)) return false;
    result.witness = std::move(c);
    result.cycle_sum = sum;
    result.source = source;
    return true;
  };

  if (options.spectral) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(cycle_form(law, n));
    if (accept(cycle_from_stacked(eig.eigenvectors().col(0), law.dim()), "spectral")) return result;
  }
  if (options.patterns) {
    for (auto& c : detail::structured_cycles(law, n)) {
      if (accept(std::move(c), "pattern")) return result;
    }
  }
  std::mt19937_64 rng(seed);
  for (long t = 0; t < trials; ++t) {
    Cycle c;
    c.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c.push_back(standard_normal(rng, law.dim()));
    if (accept(std::move(c), "random")) return result;
  }
  return result;
}

/// F_{A,n}(x, y) from the stationarity system of the chained supremum:
///   -2 S z_1 + A^T z_2 = A x - y,
///   A z_{i-1} - 2 S z_i + A^T z_{i+1} = 0,  i = 2..n-2,
///   A z_{n-2} - 2 S z_{n-1} = 0,
/// then F = <x, y> + 1/2 <z_1, y - A x>.
///
/// Returns +inf when the objective is not concave (the supremum is unbounded)
/// and throws SingularSystem when the system is singular.
inline double direct_F(const LinearLaw& law, int n, const Vector& x, const Vector& y) {
  check_caps(law, n);
  if (x.size() != law.dim() || y.size() != law.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "x and y must match the law dimension");
  }
  const Eigen::Index d = law.dim();
  const Eigen::Index m = n - 1;
  const Matrix& a = law.matrix();
  const Matrix& s = law.sym().matrix();

  Matrix sys = Matrix::Zero(m * d, m * d);
  for (Eigen::Index i = 0; i < m; ++i) {
    sys.block(i * d, i * d, d, d) = -2.0 * s;
    if (i > 0) sys.block(i * d, (i - 1) * d, d, d) = a;
    if (i + 1 < m) sys.block(i * d, (i + 1) * d, d, d) = a.transpose();
  }
  Vector rhs = Vector::Zero(m * d);
  rhs.head(d) = a * x - y;

  // The objective's Hessian is sys itself (symmetric); concavity needs it ND.
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sys, Eigen::EigenvaluesOnly);
  const double top = eig.eigenvalues().maxCoeff();
  const double size = eig.eigenvalues().cwiseAbs().maxCoeff();
  const double cut = tol::pd * std::max(1.0, size);
  if (top > cut) return kInfinity;
  if (top > -cut) {
    throw Error(ErrorKind::SingularSystem, "stationarity system is singular; the law is not strictly " +
                                               std::to_string(n) + "-monotone");
  }
  const Vector z = sys.partialPivLu().solve(rhs);
  return x.dot(y) + 0.5 * z.head(d).dot(y - a * x);
}

/// Objective of the chained supremum for given free points x_1..x_{n-1}.
inline double chain_objective(const LinearLaw& law, const Cycle& chain, const Vector& x, const Vector& y) {
  const std::size_t n = chain.size() + 1;
  double total = x.dot(y);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector& xi = i + 1 < n ? chain[i] : x;
    const Vector yi = i + 1 < n ? law.apply(chain[i]) : y;
    const Vector& next = i + 2 < n ? chain[i + 1] : (i + 2 == n ? x : chain[0]);
    total += (next - xi).dot(yi);
  }
  return total;
}

/// Sampled lower bound on F_{A,n}(x, y): best chain objective found by a
/// seeded random search started from the constant chain (value <x, y>).
inline double sup_sample_F(const LinearLaw& law, int n, const Vector& x, const Vector& y, long trials,
                           std::uint64_t seed) {
  check_caps(law, n);
  if (x.size() != law.dim() || y.size() != law.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "x and y must match the law dimension");
  }
  Cycle best(static_cast<std::size_t>(n - 1), x);
  double best_value = chain_objective(law, best, x, y);
  const double step0 = std::max({1.0, x.norm(), y.norm()}) / std::max(1.0, law.matrix().norm());
  double step = step0;
  std::mt19937_64 rng(seed);
  long since_improvement = 0;
  for (long t = 0; t < trials; ++t) {
    Cycle trial = best;
    for (auto& p : trial) p += step * standard_normal(rng, law.dim());
    const double value = chain_objective(law, trial, x, y);
    if (value > best_value) {
      best_value = value;
      best = std::move(trial);
      since_improvement = 0;
    } else if (++since_improvement >= 20) {
      step = std::max(step * 0.5, 1e-6 * step0);
      since_improvement = 0;
    }
  }
  return best_value;
}

}  // namespace fitzmono::oracle
