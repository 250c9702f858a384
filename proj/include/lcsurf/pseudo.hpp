// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#pragma once

/**
 * @file pseudo.hpp
 * @brief Linear algebra over pseudo-Euclidean spaces R^{p,q} with diagonal
 * metric diag(+1 x p, -1 x q).
 *
 * Everything here is value-level (plain doubles); the jet layer builds on top.
 * The ambient space for the light-cone model is R^{3,2} (signature (3,2),
 * sign pattern (+,+,+,-,-)); surface charts live in R^{2,1}, R^{3,1}, R^{2,2}.
 */

#include <array>
#include <vector>

#include "lcsurf/error.hpp"

namespace lcs {

using Vec = std::vector<double>;

/// Diagonal metric signature: first `plus` axes carry +1, the next `minus` carry -1.
struct Signature {
  int plus = 0;
  int minus = 0;

  int dim() const { return plus + minus; }
  double sign(int i) const { return i < plus ? 1.0 : -1.0; }
  bool operator==(const Signature&) const = default;
};

/// R^{3,2}: ambient space of the projective light-cone model.
inline constexpr Signature kSigAmbient{3, 2};
/// R^{2,1}: Minkowski 3-space.
inline constexpr Signature kSigR31{2, 1};
/// R^{3,1}: ambient of the de Sitter 3-space S^3_1.
inline constexpr Signature kSigS31{3, 1};
/// R^{2,2}: ambient of the anti-de Sitter 3-space H^3_1.
inline constexpr Signature kSigH31{2, 2};

/// Relative tolerance used to call a vector null / decide causal type.
inline constexpr double kEpsCausal = 1e-8;
/// Pivot threshold for Gram-Schmidt / linear solves on degenerate data.
inline constexpr double kEpsPivot = 1e-10;

/// <x,y> = sum_i sign(i) x_i y_i. Dimensions must match the signature.
double inner(const Signature& sig, const Vec& x, const Vec& y);

/// Euclidean norm (used for scale-relative tolerances only, never for geometry).
double euclid_norm(const Vec& x);

/// sqrt(max(0, <x,x>)): norm of a vector known to lie in a spacelike subspace.
double spacelike_norm(const Signature& sig, const Vec& x);

enum class Causal { Spacelike, Timelike, Null };

const char* to_string(Causal c);

/**
 * @brief Causal type of x: Null if |<x,x>| <= eps_rel * max(1, |x|_E^2),
 * else the sign of <x,x> decides Spacelike (+) vs Timelike (-).
 */
Causal causal_type(const Signature& sig, const Vec& x, double eps_rel = kEpsCausal);

/// Result of indefinite Gram-Schmidt: <basis[i], basis[j]> = signs[i] delta_ij.
struct OrthoBasis {
  std::vector<Vec> basis;    ///< pseudo-orthonormal vectors
  std::vector<double> signs; ///< +1 or -1 per vector
};

/**
 * @brief Pseudo-orthonormalize the span of `span` by pivoted Gram-Schmidt.
 *
 * At each step the candidate with the largest |<w,w>| after projection is
 * accepted (ties by lowest index) and normalized to <w,w> = +/-1. Throws
 * "degenerate subspace" if every remaining candidate is numerically null,
 * which happens exactly when the restricted metric is degenerate.
 */
OrthoBasis gram_schmidt(const Signature& sig, const std::vector<Vec>& span,
                        double eps_pivot = kEpsPivot);

/**
 * @brief Component of w orthogonal to span{basis...} (basis need not be
 * orthogonal, but its Gram matrix must be invertible).
 *
 * Solves the small Gram system G c = (<basis_i, w>) and returns
 * w - sum c_i basis_i. Throws on a numerically singular Gram matrix.
 */
Vec reject_from_span(const Signature& sig, const std::vector<Vec>& basis, const Vec& w);

/// Small dense square matrix, row-major. Used for 5x5 transforms.
struct Mat {
  int n = 0;
  std::vector<double> a;  // n*n, row-major

  Mat() = default;
  explicit Mat(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}
  double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  static Mat identity(int n);
  Mat transpose() const;
  Mat mul(const Mat& rhs) const;
  Vec apply(const Vec& x) const;
  /// Gauss-Jordan with partial pivoting; throws "singular matrix" when a pivot vanishes.
  Mat inverse() const;
};

/// diag(sign(0), ..., sign(n-1)) for the signature.
Mat metric_matrix(const Signature& sig);

/// sup |(T^t G T - G)_ij|: how far T is from the pseudo-orthogonal group O(p,q).
double ortho_defect(const Signature& sig, const Mat& T);

/**
 * @brief A pseudo-orthogonal T in O(p,q) mapping the line through y0 to a
 * standard position depending on its causal type (ambient R^{3,2} layout):
 *
 *  - Null:      T y0 is proportional to (1,0,0,0,1).
 *  - Timelike:  T y0 is proportional to (0,0,0,0,1).
 *  - Spacelike: T y0 is proportional to (1,0,0,0,0).
 *
 * Construction: extend y0 to a basis whose Gram matrix equals that of the
 * target frame columns, then T = M0 M^{-1}; this forces T^t G T = G exactly
 * (up to roundoff). Deterministic: all pivots resolve by fixed index rules.
 */
Mat normalizing_transform(const Signature& sig, const Vec& y0, Causal type);

}  // namespace lcs
