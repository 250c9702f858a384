// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#include "lcsurf/pseudo.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace lcs {

double inner(const Signature& sig, const Vec& x, const Vec& y) {
  if (static_cast<int>(x.size()) != sig.dim() || static_cast<int>(y.size()) != sig.dim())
    fail("inner: vector dimension does not match the signature");
  double s = 0.0;
  for (int i = 0; i < sig.dim(); ++i) s += sig.sign(i) * x[i] * y[i];
  return s;
}

double euclid_norm(const Vec& x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

double spacelike_norm(const Signature& sig, const Vec& x) {
  return std::sqrt(std::max(0.0, inner(sig, x, x)));
}

const char* to_string(Causal c) {
  switch (c) {
    case Causal::Spacelike: return "spacelike";
    case Causal::Timelike: return "timelike";
    case Causal::Null: return "null";
  }
  return "?";
}

Causal causal_type(const Signature& sig, const Vec& x, double eps_rel) {
  const double q = inner(sig, x, x);
  const double e = euclid_norm(x);
  if (std::abs(q) <= eps_rel * std::max(1.0, e * e)) return Causal::Null;
  return q > 0 ? Causal::Spacelike : Causal::Timelike;
}

namespace {

void axpy(Vec& y, double a, const Vec& x) {
  for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

/// Solve the dense system A c = b in place (Gaussian elimination, partial pivot).
Vec solve_dense(std::vector<Vec> A, Vec b, const char* what) {
  const int n = static_cast<int>(b.size());
  double scale = 0.0;
  for (const auto& row : A)
    for (double v : row) scale = std::max(scale, std::abs(v));
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) <= kEpsPivot * std::max(1.0, scale))
      fail(std::string(what) + ": numerically singular Gram matrix");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      const double f = A[r][col] / A[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec c(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < n; ++k) s -= A[r][k] * c[k];
    c[r] = s / A[r][r];
  }
  return c;
}

}  // namespace

OrthoBasis gram_schmidt(const Signature& sig, const std::vector<Vec>& span,
                        double eps_pivot) {
  OrthoBasis out;
  std::vector<Vec> pending = span;
  std::vector<bool> used(pending.size(), false);
  for (size_t step = 0; step < pending.size(); ++step) {
    // Project every unused candidate off the accepted basis, then pick the
    // candidate with the largest |<w,w>| (ties: lowest index).
    int best = -1;
    double best_q = 0.0;
    std::vector<Vec> proj(pending.size());
    for (size_t i = 0; i < pending.size(); ++i) {
      if (used[i]) continue;
      Vec w = pending[i];
      for (size_t j = 0; j < out.basis.size(); ++j)
        axpy(w, -out.signs[j] * inner(sig, w, out.basis[j]), out.basis[j]);
      proj[i] = std::move(w);
      const double q = std::abs(inner(sig, proj[i], proj[i]));
      if (q > best_q) {
        best_q = q;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) break;
    const Vec& w = proj[best];
    const double en = euclid_norm(w);
    if (best_q <= eps_pivot * std::max(1.0, en * en)) break;  // remaining span is null/exhausted
    const double q = inner(sig, w, w);
    Vec b = w;
    const double inv = 1.0 / std::sqrt(std::abs(q));
    for (double& c : b) c *= inv;
    out.basis.push_back(std::move(b));
    out.signs.push_back(q > 0 ? 1.0 : -1.0);
    used[best] = true;
  }
  if (out.basis.size() < span.size())
    fail("gram_schmidt: degenerate subspace (restricted metric is singular or span is "
         "rank-deficient)");
  return out;
}

namespace {

/// Gram-Schmidt variant that keeps as many vectors as pass the pivot and
/// requires exactly `rank` of them (used for orthogonal-complement bases).
OrthoBasis gram_schmidt_rank(const Signature& sig, const std::vector<Vec>& span,
                             size_t rank, double eps_pivot) {
  OrthoBasis out;
  std::vector<bool> used(span.size(), false);
  while (out.basis.size() < rank) {
    int best = -1;
    double best_q = 0.0;
    Vec best_w;
    for (size_t i = 0; i < span.size(); ++i) {
      if (used[i]) continue;
      Vec w = span[i];
      for (size_t j = 0; j < out.basis.size(); ++j)
        axpy(w, -out.signs[j] * inner(sig, w, out.basis[j]), out.basis[j]);
      const double q = std::abs(inner(sig, w, w));
      const double en = euclid_norm(w);
      if (q <= eps_pivot * std::max(1.0, en * en)) continue;
      if (q > best_q) {
        best_q = q;
        best = static_cast<int>(i);
        best_w = std::move(w);
      }
    }
    if (best < 0)
      fail("gram_schmidt: degenerate subspace (could not extract a full-rank "
           "pseudo-orthonormal complement)");
    const double q = inner(sig, best_w, best_w);
    const double inv = 1.0 / std::sqrt(std::abs(q));
    for (double& c : best_w) c *= inv;
    out.basis.push_back(std::move(best_w));
    out.signs.push_back(q > 0 ? 1.0 : -1.0);
    used[best] = true;
  }
  return out;
}

}  // namespace

Vec reject_from_span(const Signature& sig, const std::vector<Vec>& basis, const Vec& w) {
  if (basis.empty()) return w;
  const int m = static_cast<int>(basis.size());
  std::vector<Vec> G(m, Vec(m, 0.0));
  Vec rhs(m, 0.0);
  for (int i = 0; i < m; ++i) {
    rhs[i] = inner(sig, basis[i], w);
    for (int j = 0; j < m; ++j) G[i][j] = inner(sig, basis[i], basis[j]);
  }
  const Vec c = solve_dense(std::move(G), std::move(rhs), "reject_from_span");
  Vec out = w;
  for (int i = 0; i < m; ++i) axpy(out, -c[i], basis[i]);
  return out;
}

Mat Mat::identity(int n) {
  Mat m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Mat Mat::transpose() const {
  Mat t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.at(j, i) = at(i, j);
  return t;
}

Mat Mat::mul(const Mat& rhs) const {
  if (rhs.n != n) fail("Mat::mul: size mismatch");
  Mat r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double aik = at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += aik * rhs.at(k, j);
    }
  return r;
}

Vec Mat::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != n) fail("Mat::apply: size mismatch");
  Vec y(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y[i] += at(i, j) * x[j];
  return y;
}

Mat Mat::inverse() const {
  Mat A = *this;
  Mat I = Mat::identity(n);
  double scale = 0.0;
  for (double v : A.a) scale = std::max(scale, std::abs(v));
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A.at(r, col)) > std::abs(A.at(piv, col))) piv = r;
    if (std::abs(A.at(piv, col)) <= kEpsPivot * std::max(1.0, scale))
      fail("Mat::inverse: singular matrix");
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(A.at(piv, c), A.at(col, c));
        std::swap(I.at(piv, c), I.at(col, c));
      }
    const double d = 1.0 / A.at(col, col);
    for (int c = 0; c < n; ++c) {
      A.at(col, c) *= d;
      I.at(col, c) *= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = A.at(r, col);
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        A.at(r, c) -= f * A.at(col, c);
        I.at(r, c) -= f * I.at(col, c);
      }
    }
  }
  return I;
}

Mat metric_matrix(const Signature& sig) {
  Mat g(sig.dim());
  for (int i = 0; i < sig.dim(); ++i) g.at(i, i) = sig.sign(i);
  return g;
}

double ortho_defect(const Signature& sig, const Mat& T) {
  const Mat G = metric_matrix(sig);
  const Mat D = T.transpose().mul(G).mul(T);
  double sup = 0.0;
  for (int i = 0; i < T.n; ++i)
    for (int j = 0; j < T.n; ++j) sup = std::max(sup, std::abs(D.at(i, j) - G.at(i, j)));
  return sup;
}

namespace {

Vec basis_vector(int n, int k) {
  Vec e(n, 0.0);
  e[k] = 1.0;
  return e;
}

/// Split an orthonormal complement basis into (positives..., negatives...),
/// preserving acceptance order within each sign class.
std::vector<Vec> order_by_sign(const OrthoBasis& ob) {
  std::vector<Vec> out;
  for (size_t i = 0; i < ob.basis.size(); ++i)
    if (ob.signs[i] > 0) out.push_back(ob.basis[i]);
  for (size_t i = 0; i < ob.basis.size(); ++i)
    if (ob.signs[i] < 0) out.push_back(ob.basis[i]);
  return out;
}

Mat from_columns(const std::vector<Vec>& cols) {
  const int n = static_cast<int>(cols.size());
  Mat m(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m.at(i, j) = cols[j][i];
  return m;
}

}  // namespace

Mat normalizing_transform(const Signature& sig, const Vec& y0, Causal type) {
  const int n = sig.dim();
  if (static_cast<int>(y0.size()) != n)
    fail("normalizing_transform: vector dimension does not match the signature");
  const double en = euclid_norm(y0);
  if (en <= kEpsPivot) fail("normalizing_transform: cannot normalize a zero vector");
  const double q = inner(sig, y0, y0);
  if (type == Causal::Null) {
    if (std::abs(q) > kEpsCausal * std::max(1.0, en * en) * 10.0)
      fail("normalizing_transform: vector is not null to working precision");
  } else if (type == Causal::Timelike && q >= 0.0) {
    fail("normalizing_transform: vector is not timelike");
  } else if (type == Causal::Spacelike && q <= 0.0) {
    fail("normalizing_transform: vector is not spacelike");
  }

  std::vector<Vec> cols, target_cols;
  if (type == Causal::Null) {
    // p = y0 (euclid-normalized), q' null with <p,q'> = -2; targets
    // P0 = e1 + en, Q0 = -e1 + en with <P0,Q0> = -2 in any (p,q>=1) signature.
    Vec p = y0;
    for (double& c : p) c /= en;
    int k = 0;
    double bestc = 0.0;
    for (int i = 0; i < n; ++i)
      if (std::abs(p[i]) > bestc) {
        bestc = std::abs(p[i]);
        k = i;
      }
    Vec z = basis_vector(n, k);
    const double pz = inner(sig, p, z);
    if (std::abs(pz) <= kEpsPivot)
      fail("normalizing_transform: degenerate pairing for the null vector");
    Vec qv = z;
    axpy(qv, -inner(sig, z, z) / (2.0 * pz), p);
    const double s = -2.0 / inner(sig, p, qv);
    for (double& c : qv) c *= s;
    std::vector<Vec> rejections;
    for (int i = 0; i < n; ++i)
      rejections.push_back(reject_from_span(sig, {p, qv}, basis_vector(n, i)));
    const OrthoBasis comp =
        gram_schmidt_rank(sig, rejections, static_cast<size_t>(n - 2), kEpsPivot);
    const std::vector<Vec> ordered = order_by_sign(comp);
    cols.push_back(p);
    for (const Vec& c : ordered) cols.push_back(c);
    cols.push_back(qv);
    Vec P0(n, 0.0), Q0(n, 0.0);
    P0[0] = 1.0;
    P0[n - 1] = 1.0;
    Q0[0] = -1.0;
    Q0[n - 1] = 1.0;
    target_cols.push_back(P0);
    for (int i = 1; i < n - 1; ++i) target_cols.push_back(basis_vector(n, i));
    target_cols.push_back(Q0);
  } else {
    Vec w = y0;
    const double inv = 1.0 / std::sqrt(std::abs(q));
    for (double& c : w) c *= inv;
    std::vector<Vec> rejections;
    for (int i = 0; i < n; ++i)
      rejections.push_back(reject_from_span(sig, {w}, basis_vector(n, i)));
    const OrthoBasis comp =
        gram_schmidt_rank(sig, rejections, static_cast<size_t>(n - 1), kEpsPivot);
    const std::vector<Vec> ordered = order_by_sign(comp);
    if (type == Causal::Timelike) {
      // w -> last axis (sign -1); complement -> e1..e_{n-1}.
      for (const Vec& c : ordered) cols.push_back(c);
      cols.push_back(w);
      for (int i = 0; i < n; ++i) target_cols.push_back(basis_vector(n, i));
    } else {
      // w -> first axis (sign +1); complement -> e2..e_n.
      cols.push_back(w);
      for (const Vec& c : ordered) cols.push_back(c);
      for (int i = 0; i < n; ++i) target_cols.push_back(basis_vector(n, i));
    }
  }
  const Mat M = from_columns(cols);
  const Mat M0 = from_columns(target_cols);
  return M0.mul(M.inverse());
}

}  // namespace lcs
