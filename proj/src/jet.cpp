// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#include "lcsurf/jet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace lcs {

Jet2::Jet2(int order, double value) : ord_(order), c_(count(order), 0.0) {
  if (order < 0) fail("Jet2: negative order");
  c_[0] = value;
}

Jet2 Jet2::seeded(int order, double value, double du, double dv) {
  Jet2 j(order, value);
  if (order >= 1) {
    j.c_[index(1, 0)] = du;
    j.c_[index(0, 1)] = dv;
  }
  return j;
}

double Jet2::coeff(int i, int j) const {
  if (i < 0 || j < 0) fail("Jet2::coeff: negative derivative index");
  if (i + j > ord_) fail("Jet2: order exhausted (coefficient beyond truncation order)");
  return c_[index(i, j)];
}

void Jet2::set_coeff(int i, int j, double value) {
  if (i < 0 || j < 0) fail("Jet2::set_coeff: negative derivative index");
  if (i + j > ord_) fail("Jet2: order exhausted (coefficient beyond truncation order)");
  c_[index(i, j)] = value;
}

double Jet2::partial(int i, int j) const {
  double f = coeff(i, j);
  for (int k = 2; k <= i; ++k) f *= k;
  for (int k = 2; k <= j; ++k) f *= k;
  return f;
}

Jet2 Jet2::deriv_u() const {
  if (ord_ == 0) fail("Jet2: order exhausted (derivative of an order-0 jet)");
  Jet2 d(ord_ - 1);
  for (int i = 0; i + 1 <= ord_; ++i)
    for (int j = 0; i + 1 + j <= ord_; ++j)
      d.c_[index(i, j)] = (i + 1) * c_[index(i + 1, j)];
  return d;
}

Jet2 Jet2::deriv_v() const {
  if (ord_ == 0) fail("Jet2: order exhausted (derivative of an order-0 jet)");
  Jet2 d(ord_ - 1);
  for (int i = 0; i <= ord_ - 1; ++i)
    for (int j = 0; i + j + 1 <= ord_; ++j)
      d.c_[index(i, j)] = (j + 1) * c_[index(i, j + 1)];
  return d;
}

Jet2 Jet2::truncated(int new_order) const {
  if (new_order > ord_) fail("Jet2::truncated: cannot extend a jet");
  if (new_order == ord_) return *this;
  Jet2 t(new_order);
  for (int k = 0; k < count(new_order); ++k) t.c_[k] = c_[k];
  return t;
}

bool Jet2::is_finite() const {
  for (double v : c_)
    if (!std::isfinite(v)) return false;
  return true;
}

Jet2 Jet2::operator-() const {
  Jet2 r = *this;
  for (double& v : r.c_) v = -v;
  return r;
}

Jet2& Jet2::operator+=(const Jet2& rhs) {
  // Degree-major layout is prefix-compatible across orders, so after
  // truncating to the smaller order we can add coefficients slot by slot.
  if (rhs.ord_ < ord_) *this = truncated(rhs.ord_);
  for (int k = 0; k < count(ord_); ++k) c_[k] += rhs.c_[k];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& rhs) {
  if (rhs.ord_ < ord_) *this = truncated(rhs.ord_);
  for (int k = 0; k < count(ord_); ++k) c_[k] -= rhs.c_[k];
  return *this;
}

Jet2& Jet2::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Jet2 detail_mul(const Jet2& a, const Jet2& b, int out_order) {
  Jet2 r(out_order);
  for (int d1 = 0; d1 <= out_order; ++d1)
    for (int i1 = d1; i1 >= 0; --i1) {
      const int j1 = d1 - i1;
      const double ca = (d1 <= a.ord_) ? a.c_[Jet2::index(i1, j1)] : 0.0;
      if (ca == 0.0) continue;
      const int dmax = out_order - d1;
      for (int d2 = 0; d2 <= dmax; ++d2)
        for (int i2 = d2; i2 >= 0; --i2) {
          const int j2 = d2 - i2;
          const double cb = (d2 <= b.ord_) ? b.c_[Jet2::index(i2, j2)] : 0.0;
          if (cb == 0.0) continue;
          r.c_[Jet2::index(i1 + i2, j1 + j2)] += ca * cb;
        }
    }
  return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  return detail_mul(a, b, std::min(a.ord_, b.ord_));
}

Jet2 Jet2::compose(const std::vector<double>& fk) const {
  // Horner evaluation of sum_k fk[k] h^k where h = (*this) - value() is
  // nilpotent (h^{ord+1} = 0), so the truncated sum is the exact jet of F(f).
  if (fk.empty()) fail("Jet2::compose: empty coefficient table");
  Jet2 h = *this;
  h.c_[0] = 0.0;
  const int K = static_cast<int>(fk.size()) - 1;
  Jet2 r(ord_, fk[K]);
  for (int k = K - 1; k >= 0; --k) {
    r = detail_mul(r, h, ord_);
    r.c_[0] += fk[k];
  }
  return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  const double b0 = b.value();
  if (std::abs(b0) <= kEpsJet) fail("Jet2: division by a jet value within 1e-12 of zero");
  const int ord = std::min(a.order(), b.order());
  std::vector<double> fk(ord + 1);
  double p = 1.0 / b0;
  for (int k = 0; k <= ord; ++k) {
    fk[k] = p;
    p *= -1.0 / b0;
  }
  return detail_mul(a.truncated(ord), b.truncated(ord).compose(fk), ord);
}

Jet2 operator/(Jet2 a, double s) {
  if (std::abs(s) <= kEpsJet) fail("Jet2: division by a scalar within 1e-12 of zero");
  return a *= (1.0 / s);
}

Jet2 operator/(double s, const Jet2& a) { return Jet2(a.order(), s) / a; }

Jet2 sqrt(const Jet2& f) {
  const double g0 = f.value();
  if (g0 <= kEpsJet) fail("Jet2: sqrt of a jet value not positive (within 1e-12 of zero)");
  std::vector<double> fk(f.order() + 1);
  fk[0] = std::sqrt(g0);
  for (int k = 1; k <= f.order(); ++k)
    fk[k] = fk[k - 1] * (0.5 - (k - 1)) / (k * g0);
  return f.compose(fk);
}

Jet2 exp(const Jet2& f) {
  std::vector<double> fk(f.order() + 1);
  fk[0] = std::exp(f.value());
  for (int k = 1; k <= f.order(); ++k) fk[k] = fk[k - 1] / k;
  return f.compose(fk);
}

Jet2 log(const Jet2& f) {
  const double g0 = f.value();
  if (g0 <= kEpsJet) fail("Jet2: log of a jet value not positive (within 1e-12 of zero)");
  std::vector<double> fk(f.order() + 1);
  fk[0] = std::log(g0);
  double p = 1.0 / g0;  // (1/g0)^k with alternating sign, divided by k
  for (int k = 1; k <= f.order(); ++k) {
    fk[k] = ((k % 2) ? p : -p) / k;
    p /= g0;
  }
  return f.compose(fk);
}

namespace {

Jet2 circular(const Jet2& f, double s0, double c0) {
  // F^{(k)} cycles through (s, c, -s, -c); fk[k] = F^{(k)}(g0)/k!.
  std::vector<double> fk(f.order() + 1);
  double fact = 1.0;
  const double cyc[4] = {s0, c0, -s0, -c0};
  for (int k = 0; k <= f.order(); ++k) {
    if (k > 0) fact *= k;
    fk[k] = cyc[k % 4] / fact;
  }
  return f.compose(fk);
}

Jet2 hyperbolic(const Jet2& f, double s0, double c0) {
  std::vector<double> fk(f.order() + 1);
  double fact = 1.0;
  for (int k = 0; k <= f.order(); ++k) {
    if (k > 0) fact *= k;
    fk[k] = ((k % 2) ? c0 : s0) / fact;
  }
  return f.compose(fk);
}

}  // namespace

Jet2 sin(const Jet2& f) { return circular(f, std::sin(f.value()), std::cos(f.value())); }
Jet2 cos(const Jet2& f) { return circular(f, std::cos(f.value()), -std::sin(f.value())); }
Jet2 sinh(const Jet2& f) { return hyperbolic(f, std::sinh(f.value()), std::cosh(f.value())); }
Jet2 cosh(const Jet2& f) { return hyperbolic(f, std::cosh(f.value()), std::sinh(f.value())); }

Jet2 abs_jet(const Jet2& f) {
  if (std::abs(f.value()) <= kEpsJet)
    fail("Jet2: |f| is not differentiable at a value within 1e-12 of zero");
  return f.value() > 0 ? f : -f;
}

Jet2 pow_int(const Jet2& f, long long k) {
  if (k < 0) return Jet2(f.order(), 1.0) / pow_int(f, -k);
  Jet2 r(f.order(), 1.0);
  Jet2 base = f;
  long long e = k;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Jet2 pow(const Jet2& f, double r) {
  const double ri = std::nearbyint(r);
  if (std::abs(r - ri) <= 1e-12 && std::abs(ri) <= 1e6)
    return pow_int(f, static_cast<long long>(ri));
  const double g0 = f.value();
  if (g0 <= kEpsJet)
    fail("Jet2: non-integer power of a jet value not positive (within 1e-12 of zero)");
  std::vector<double> fk(f.order() + 1);
  fk[0] = std::pow(g0, r);
  for (int k = 1; k <= f.order(); ++k)
    fk[k] = fk[k - 1] * (r - (k - 1)) / (k * g0);
  return f.compose(fk);
}

Jet2 pow(const Jet2& f, const Jet2& g) {
  bool constant = true;
  for (int d = 1; d <= g.order() && constant; ++d)
    for (int j = 0; j <= d; ++j)
      if (g.coeff(d - j, j) != 0.0) {
        constant = false;
        break;
      }
  if (constant) return pow(f.truncated(std::min(f.order(), g.order())), g.value());
  if (f.value() <= kEpsJet)
    fail("Jet2: power with varying exponent requires a positive base value");
  return exp(g * log(f));
}

}  // namespace lcs
