// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#pragma once

/**
 * @file jet.hpp
 * @brief Bivariate truncated Taylor jets: all partial derivatives of a smooth
 * f(u,v) at a base point, exact through a chosen total degree.
 *
 * A Jet2 of order J stores the coefficients c[i][j] = (d^{i+j} f / du^i dv^j)
 * / (i! j!) for all i+j <= J, i.e. the Taylor polynomial of f at the base
 * point. Arithmetic and the elementary functions (sin, cos, sinh, cosh, exp,
 * log, sqrt, pow) propagate jets exactly at the truncation order, so partial
 * derivatives read off a jet are exact up to roundoff -- no finite-difference
 * truncation error is involved anywhere in the pipeline.
 *
 * Storage is degree-major: degree-d coefficients occupy the block starting at
 * d(d+1)/2, ordered by j; a jet of order J holds (J+1)(J+2)/2 doubles.
 */

#include <vector>

#include "lcsurf/error.hpp"

namespace lcs {

/// Guard for division / log / sqrt of a jet whose value is near the singular set.
inline constexpr double kEpsJet = 1e-12;

class Jet2 {
 public:
  Jet2() : ord_(0), c_(1, 0.0) {}
  explicit Jet2(int order, double value = 0.0);

  /// Jet of the constant function `value`.
  static Jet2 constant(int order, double value) { return Jet2(order, value); }
  /// Jet of the coordinate function u at base value u0.
  static Jet2 variable_u(int order, double u0) { return seeded(order, u0, 1.0, 0.0); }
  /// Jet of the coordinate function v at base value v0.
  static Jet2 variable_v(int order, double v0) { return seeded(order, v0, 0.0, 1.0); }
  /// Jet with prescribed value and first-order seeds (used for substituted
  /// coordinates such as the orientation flip v -> -v).
  static Jet2 seeded(int order, double value, double du, double dv);

  int order() const { return ord_; }
  double value() const { return c_[0]; }

  /// Taylor coefficient f_{ij} / (i! j!); zero outside the stored range only
  /// if i+j exceeds the order (throws), never silently.
  double coeff(int i, int j) const;
  void set_coeff(int i, int j, double value);

  /// Partial derivative d^{i+j} f / du^i dv^j at the base point.
  /// Throws "order exhausted" when i+j exceeds the truncation order.
  double partial(int i, int j) const;

  /// Jet of df/du (one order lower). Throws "order exhausted" at order 0.
  Jet2 deriv_u() const;
  Jet2 deriv_v() const;

  /// Copy truncated to a (not larger) order.
  Jet2 truncated(int new_order) const;

  bool is_finite() const;

  Jet2 operator-() const;
  Jet2& operator+=(const Jet2& rhs);
  Jet2& operator-=(const Jet2& rhs);
  Jet2& operator*=(double s);

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  friend Jet2 operator/(const Jet2& a, const Jet2& b);
  friend Jet2 operator+(Jet2 a, double s) { a.c_[0] += s; return a; }
  friend Jet2 operator+(double s, Jet2 a) { a.c_[0] += s; return a; }
  friend Jet2 operator-(Jet2 a, double s) { a.c_[0] -= s; return a; }
  friend Jet2 operator-(double s, const Jet2& a) { return -a + s; }
  friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
  friend Jet2 operator/(Jet2 a, double s);
  friend Jet2 operator/(double s, const Jet2& a);

  /// Composition with a univariate analytic function given by the Taylor
  /// coefficients fk[k] = F^{(k)}(value)/k! of F at the jet's value.
  /// This is how all elementary functions are implemented.
  Jet2 compose(const std::vector<double>& fk) const;

 private:
  int ord_;
  std::vector<double> c_;  // degree-major, size (ord_+1)(ord_+2)/2

  static int count(int order) { return (order + 1) * (order + 2) / 2; }
  static int index(int i, int j) { const int d = i + j; return d * (d + 1) / 2 + j; }
  friend Jet2 detail_mul(const Jet2& a, const Jet2& b, int out_order);
};

Jet2 sqrt(const Jet2& f);   ///< requires f.value() > 0 (guarded by kEpsJet)
Jet2 exp(const Jet2& f);
Jet2 log(const Jet2& f);    ///< requires f.value() > 0 (guarded by kEpsJet)
Jet2 sin(const Jet2& f);
Jet2 cos(const Jet2& f);
Jet2 sinh(const Jet2& f);
Jet2 cosh(const Jet2& f);
Jet2 abs_jet(const Jet2& f);  ///< f or -f by sign of value; error near zero

/// Integer power by repeated squaring (valid for any base value).
Jet2 pow_int(const Jet2& f, long long k);
/// Real power: integer exponents (within 1e-12) use pow_int, otherwise the
/// base value must be positive and the binomial series is used.
Jet2 pow(const Jet2& f, double r);
/// Jet exponent: constant jets defer to pow(f, value); non-constant exponents
/// use exp(g * log(f)) and require f.value() > 0.
Jet2 pow(const Jet2& f, const Jet2& g);

}  // namespace lcs
