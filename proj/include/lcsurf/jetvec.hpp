// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#pragma once

/**
 * @file jetvec.hpp
 * @brief Componentwise helpers for vectors of jets (jet-valued maps into an
 * indefinite inner-product space).
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "lcsurf/jet.hpp"
#include "lcsurf/pseudo.hpp"

namespace lcs {

using JetVec = std::vector<Jet2>;

inline JetVec jv_add(const JetVec& a, const JetVec& b) {
  JetVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline JetVec jv_sub(const JetVec& a, const JetVec& b) {
  JetVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline JetVec jv_scale(const JetVec& a, const Jet2& s) {
  JetVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

inline JetVec jv_scale(const JetVec& a, double s) {
  JetVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

/// Indefinite inner product of two jet vectors.
inline Jet2 jv_inner(const Signature& sig, const JetVec& a, const JetVec& b) {
  Jet2 acc = a[0] * b[0] * sig.sign(0);
  for (std::size_t i = 1; i < a.size(); ++i)
    acc += a[i] * b[i] * sig.sign(static_cast<int>(i));
  return acc;
}

inline JetVec jv_deriv_u(const JetVec& a) {
  JetVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].deriv_u();
  return r;
}

inline JetVec jv_deriv_v(const JetVec& a) {
  JetVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].deriv_v();
  return r;
}

inline JetVec jv_truncated(const JetVec& a, int order) {
  JetVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].truncated(order);
  return r;
}

/// Order-0 values of a jet vector.
inline Vec jv_value(const JetVec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].value();
  return r;
}

/// Wrap plain values as jets (lets value-level code reuse the jet kernels).
inline JetVec jv_from_values(const Vec& a, int order = 0) {
  JetVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Jet2(order, a[i]);
  return r;
}

/// Sup of |coefficient| over all components and all stored coefficients.
inline double jv_sup_coeff(const JetVec& a) {
  double m = 0.0;
  for (const Jet2& j : a)
    for (int d = 0; d <= j.order(); ++d)
      for (int k = 0; k <= d; ++k) m = std::max(m, std::abs(j.coeff(d - k, k)));
  return m;
}

/// Sup of |value| over components.
inline double jv_sup_value(const JetVec& a) {
  double m = 0.0;
  for (const Jet2& j : a) m = std::max(m, std::abs(j.value()));
  return m;
}

}  // namespace lcs
