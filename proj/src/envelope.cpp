// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.

/**
 * @file envelope.cpp
 * @brief Blaschke pairs: invariant assembly, classification, dual pairs,
 * Darboux integration, and trivial pairs through a fixed point.
 */

#include "lcsurf/envelope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <utility>
#include <vector>

#include "lcsurf/detect.hpp"
#include "lcsurf/jetvec.hpp"

namespace lcs {
namespace {

/// Jet order carried by the pair fields (enough for the invariant jets and
/// the cross-derivative identity suite, which needs two field derivatives).
constexpr int kFieldOrder = 3;
/// |<Y,P>| below this (relative to the scale of P) is polar incidence.
constexpr double kEpsPolar = 1e-8;

std::string point_str(double u, double v) {
  std::ostringstream os;
  os << "(u,v)=(" << u << ", " << v << ")";
  return os.str();
}

double umbilic_floor(double scale) {
  return std::max(kUmbilicRel * scale, kUmbilicAbs);
}

/// Sup of |k1| and |k2| over the valid points (umbilic floor scales).
std::pair<double, double> hopf_scales(const PairData& pair) {
  double s1 = 0.0, s2 = 0.0;
  for (const PairPoint& p : pair.points) {
    if (!p.valid) continue;
    s1 = std::max(s1, std::abs(p.frame.k1.value()));
    s2 = std::max(s2, std::abs(p.frame.k2.value()));
  }
  return {s1, s2};
}

/// Residual of the derivative expansion of the hat lift (both lines), as the
/// sup over components of |Yhat_w - (expansion in the frame basis)|.
double expansion_residual(const ConformalFrame& fr, const PairPoint& p) {
  const Vec Y = jv_value(fr.Y), Yu = jv_value(fr.Yu), Yv = jv_value(fr.Yv);
  const Vec E = jv_value(fr.E), Yh = jv_value(p.yhat);
  const double a = p.a.value(), b = p.b.value(), z = p.zeta.value();
  const double r1 = p.rho1.value(), t1 = p.theta1.value(), e1 = p.eta1.value();
  const double r2 = p.rho2.value(), t2 = p.theta2.value(), e2 = p.eta2.value();
  double m = 0.0;
  for (int c = 0; c < 5; ++c) {
    const double rhs_u = b * Yh[c] + r1 * (Yu[c] + b * Y[c]) +
                         t1 * (Yv[c] + a * Y[c]) + e1 * E[c] + z * e1 * Y[c];
    const double rhs_v = a * Yh[c] + r2 * (Yv[c] + a * Y[c]) +
                         t2 * (Yu[c] + b * Y[c]) + e2 * E[c] + z * e2 * Y[c];
    m = std::max(m, std::abs(p.yhat[c].partial(1, 0) - rhs_u));
    m = std::max(m, std::abs(p.yhat[c].partial(0, 1) - rhs_v));
  }
  return m;
}

/// Invariants, hat lift, and pointwise residuals from the field jets at one
/// node. Field jets must carry order >= 2.
PairPoint assemble_point(ConformalFrame fr, const Jet2& a, const Jet2& b,
                         const Jet2& zeta) {
  PairPoint p;
  p.a = a;
  p.b = b;
  p.zeta = zeta;
  const Jet2 k12 = jv_inner(kSigAmbient, fr.kappa1, fr.kappa2);
  p.rho1 = 2.0 * a.deriv_u() - 2.0 * k12 + 0.5 * zeta * zeta;
  p.rho2 = 2.0 * b.deriv_v() - 2.0 * k12 + 0.5 * zeta * zeta;
  p.theta1 = 2.0 * b.deriv_u() - 2.0 * b * b - fr.s1 - 2.0 * zeta * fr.k1;
  p.theta2 = 2.0 * a.deriv_v() - 2.0 * a * a - fr.s2 - 2.0 * zeta * fr.k2;
  p.eta1 = zeta.deriv_u() - b * zeta + 2.0 * fr.k1.deriv_v() + 2.0 * a * fr.k1;
  p.eta2 = zeta.deriv_v() - a * zeta + 2.0 * fr.k2.deriv_u() + 2.0 * b * fr.k2;
  const Jet2 c = 2.0 * a * b + 0.5 * zeta * zeta;
  p.yhat = jv_add(
      fr.N, jv_add(jv_scale(fr.Yu, 2.0 * a),
                   jv_add(jv_scale(fr.Yv, 2.0 * b),
                          jv_add(jv_scale(fr.Y, c), jv_scale(fr.E, zeta)))));
  p.pairing = std::abs(jv_inner(kSigAmbient, fr.Y, p.yhat).value() + 1.0);
  p.nullity = std::abs(jv_inner(kSigAmbient, p.yhat, p.yhat).value());
  p.expansion = expansion_residual(fr, p);
  p.frame = std::move(fr);
  return p;
}

/// Fill the classification sup-norms from the valid points.
void finalize(PairData& pd) {
  pd.valid_points = 0;
  for (const PairPoint& p : pd.points) {
    if (!p.valid) continue;
    ++pd.valid_points;
    pd.sup_eta = std::max({pd.sup_eta, std::abs(p.eta1.value()),
                           std::abs(p.eta2.value())});
    pd.sup_theta = std::max({pd.sup_theta, std::abs(p.theta1.value()),
                             std::abs(p.theta2.value())});
    pd.sup_rho = std::max({pd.sup_rho, std::abs(p.rho1.value()),
                           std::abs(p.rho2.value())});
    pd.sup_xi = std::max(pd.sup_xi, std::abs(p.zeta.value()));
    pd.sup_expansion = std::max(pd.sup_expansion, p.expansion);
    pd.sup_pairing = std::max(pd.sup_pairing, p.pairing);
    pd.sup_nullity = std::max(pd.sup_nullity, p.nullity);
  }
}

/// DualSWillmore witness: the normal part of the w-second derivative of the
/// hat lift against kappa_i must have ratio rho_i. Umbilic points are skipped
/// under the shared floor policy; NaN when no point is usable.
double kappa_ratio_witness(const PairData& pair) {
  const auto [sc1, sc2] = hopf_scales(pair);
  const double f1 = umbilic_floor(sc1), f2 = umbilic_floor(sc2);
  double m = 0.0;
  bool any = false;
  for (const PairPoint& p : pair.points) {
    if (!p.valid) continue;
    const Vec E = jv_value(p.frame.E);
    Vec duu(5), dvv(5);
    for (int c = 0; c < 5; ++c) {
      duu[c] = p.yhat[c].partial(2, 0);
      dvv[c] = p.yhat[c].partial(0, 2);
    }
    const double k1 = p.frame.k1.value(), k2 = p.frame.k2.value();
    if (std::abs(k1) > f1) {
      m = std::max(m, std::abs(inner(kSigAmbient, duu, E) / k1 - p.rho1.value()));
      any = true;
    }
    if (std::abs(k2) > f2) {
      m = std::max(m, std::abs(inner(kSigAmbient, dvv, E) / k2 - p.rho2.value()));
      any = true;
    }
  }
  return any ? m : std::numeric_limits<double>::quiet_NaN();
}

/// Trivial witnesses: rho1 = rho2, transport of the fixed direction, and the
/// spread of its normalized representatives across the grid.
void trivial_witness(const PairData& pair, double tol, PairClassification& out) {
  double req = 0.0, fd = 0.0, spread = 0.0;
  Vec ref;
  for (const PairPoint& p : pair.points) {
    if (!p.valid) continue;
    req = std::max(req, std::abs(p.rho1.value() - p.rho2.value()));
    const double a = p.a.value(), b = p.b.value();
    const double rho = 0.5 * (p.rho1.value() + p.rho2.value());
    Vec dir(5);
    double res = 0.0, scale = 1.0;
    if (std::abs(rho) > tol) {
      // Generic stratum: P = Yhat/rho - Y is constant up to scale and obeys
      // P_u = -b P, P_v = -a P.
      const Jet2 rho_jet = 0.5 * (p.rho1 + p.rho2);
      for (int c = 0; c < 5; ++c) {
        const Jet2 pt = p.yhat[c] / rho_jet - p.frame.Y[c];
        dir[c] = pt.value();
        scale = std::max(scale, std::abs(pt.value()));
        res = std::max(res, std::abs(pt.partial(1, 0) + b * pt.value()));
        res = std::max(res, std::abs(pt.partial(0, 1) + a * pt.value()));
      }
    } else {
      // Degenerate stratum rho = 0: the hat lift itself is projectively
      // constant, Yhat_u = b Yhat, Yhat_v = a Yhat.
      for (int c = 0; c < 5; ++c) {
        const double y = p.yhat[c].value();
        dir[c] = y;
        scale = std::max(scale, std::abs(y));
        res = std::max(res, std::abs(p.yhat[c].partial(1, 0) - b * y));
        res = std::max(res, std::abs(p.yhat[c].partial(0, 1) - a * y));
      }
    }
    fd = std::max(fd, res / scale);
    const double n = euclid_norm(dir);
    if (n > 0.0)
      for (double& x : dir) x /= n;
    if (ref.empty()) {
      ref = dir;
    } else {
      double dot = 0.0;
      for (int c = 0; c < 5; ++c) dot += dir[c] * ref[c];
      for (int c = 0; c < 5; ++c) {
        const double d = (dot < 0.0 ? -dir[c] : dir[c]) - ref[c];
        spread = std::max(spread, std::abs(d));
      }
    }
  }
  out.rho_equality = req;
  out.fixed_direction = fd;
  out.direction_spread = spread;
}

}  // namespace

const char* to_string(PairClass c) {
  switch (c) {
    case PairClass::NotEnvelope: return "NotEnvelope";
    case PairClass::DualSWillmore: return "DualSWillmore";
    case PairClass::IsothermicDarboux: return "IsothermicDarboux";
    case PairClass::Trivial: return "Trivial";
    case PairClass::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

double PairIdentityResiduals::max() const {
  return std::max({mix, theta1_v, theta2_u});
}

PairIdentityResiduals pair_identity_residuals(const PairData& pair) {
  PairIdentityResiduals r;
  for (const PairPoint& p : pair.points) {
    if (!p.valid) continue;
    const double au = p.a.partial(1, 0), bv = p.b.partial(0, 1);
    const double z = p.zeta.value();
    const double k1 = p.frame.k1.value(), k2 = p.frame.k2.value();
    r.mix = std::max(r.mix, std::abs(0.5 * (au - bv) * z -
                                     0.5 * p.theta1.value() * k2 +
                                     0.5 * p.theta2.value() * k1));
    r.theta1_v = std::max(r.theta1_v,
                          std::abs(p.theta1.partial(0, 1) - p.rho2.partial(1, 0) +
                                   2.0 * p.b.value() * p.rho2.value()));
    r.theta2_u = std::max(r.theta2_u,
                          std::abs(p.theta2.partial(1, 0) - p.rho1.partial(0, 1) +
                                   2.0 * p.a.value() * p.rho1.value()));
  }
  return r;
}

PairClassification classify(const PairData& pair, double tol, double tol_witness) {
  PairClassification c;
  c.eta_sup = pair.sup_eta;
  c.theta_sup = pair.sup_theta;
  c.rho_sup = pair.sup_rho;
  c.xi_sup = pair.sup_xi;
  c.identities = pair_identity_residuals(pair);
  if (pair.valid_points == 0) {
    c.label = PairClass::Indeterminate;
    c.note = "no valid grid points";
    return c;
  }
  if (c.eta_sup > tol) {
    c.label = PairClass::NotEnvelope;
    c.note = "eta exceeds tolerance: the fields do not envelope the congruence";
  } else if (c.theta_sup <= tol && c.xi_sup <= tol) {
    c.label = PairClass::DualSWillmore;
    c.kappa_ratio = kappa_ratio_witness(pair);
    if (!(c.kappa_ratio <= tol_witness))
      c.note = "kappa-ratio witness above tolerance";
  } else if (c.theta_sup <= tol && c.xi_sup > tol) {
    c.label = PairClass::Trivial;
    trivial_witness(pair, tol, c);
    if (!(c.fixed_direction <= tol_witness))
      c.note = "fixed-direction witness above tolerance";
  } else if (c.rho_sup <= tol) {
    c.label = PairClass::IsothermicDarboux;
  } else {
    c.label = PairClass::Indeterminate;
    c.note = "theta and rho are both above tolerance";
  }
  return c;
}

PairData build_pair(const SurfaceChart& chart, const Expr& a_field,
                    const Expr& b_field, const Expr& xi_field,
                    const GridSpec& grid, int order) {
  PairData pd;
  pd.grid = grid;
  pd.points.reserve(static_cast<std::size_t>(grid.nu) * grid.nv);
  for (int i = 0; i < grid.nu; ++i) {
    for (int j = 0; j < grid.nv; ++j) {
      const double u = grid.u_at(i), v = grid.v_at(j);
      ConformalFrame fr = frame_at(chart, u, v, order);
      const Jet2 U = Jet2::variable_u(kFieldOrder, u);
      const Jet2 V = Jet2::variable_v(kFieldOrder, v);
      const Jet2 a = a_field.empty() ? Jet2(kFieldOrder, 0.0)
                                     : a_field.eval_jet(U, V, chart.params);
      const Jet2 b = b_field.empty() ? Jet2(kFieldOrder, 0.0)
                                     : b_field.eval_jet(U, V, chart.params);
      const Jet2 z = xi_field.empty() ? Jet2(kFieldOrder, 0.0)
                                      : xi_field.eval_jet(U, V, chart.params);
      pd.points.push_back(assemble_point(std::move(fr), a, b, z));
    }
  }
  finalize(pd);
  return pd;
}

PairData dual_pair(const SurfaceChart& chart, const GridSpec& grid, int order) {
  std::vector<ConformalFrame> frames;
  frames.reserve(static_cast<std::size_t>(grid.nu) * grid.nv);
  double sc1 = 0.0, sc2 = 0.0;
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      frames.push_back(frame_at(chart, grid.u_at(i), grid.v_at(j), order));
      sc1 = std::max(sc1, std::abs(frames.back().k1.value()));
      sc2 = std::max(sc2, std::abs(frames.back().k2.value()));
    }
  const double f1 = umbilic_floor(sc1), f2 = umbilic_floor(sc2);
  std::vector<std::pair<double, double>> offenders;
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      const ConformalFrame& fr = frames[static_cast<std::size_t>(i) * grid.nv + j];
      if (std::abs(fr.k1.value()) <= f1 || std::abs(fr.k2.value()) <= f2)
        offenders.emplace_back(grid.u_at(i), grid.v_at(j));
    }
  if (!offenders.empty()) {
    std::ostringstream os;
    os << "the dual pair requires k != 0: umbilic grid points at ";
    const std::size_t shown = std::min<std::size_t>(offenders.size(), 4);
    for (std::size_t k = 0; k < shown; ++k) {
      if (k) os << ", ";
      os << point_str(offenders[k].first, offenders[k].second);
    }
    if (offenders.size() > shown)
      os << " and " << offenders.size() - shown << " more";
    throw Error(os.str());
  }

  PairData pd;
  pd.grid = grid;
  pd.points.reserve(frames.size());
  for (ConformalFrame& fr : frames) {
    const Jet2 a = -(fr.k1.deriv_v() / fr.k1);
    const Jet2 b = -(fr.k2.deriv_u() / fr.k2);
    const Jet2 z(std::min(a.order(), b.order()), 0.0);
    pd.points.push_back(assemble_point(std::move(fr), a, b, z));
  }
  finalize(pd);
  return pd;
}

PairData trivial_from_point(const SurfaceChart& chart, const Vec& P,
                            const GridSpec& grid, int order) {
  if (P.size() != 5) fail("the base point must have 5 components");
  if (causal_type(kSigAmbient, P) != Causal::Null) {
    std::ostringstream os;
    os << "trivial pair requires a null base point: <P,P> = "
       << inner(kSigAmbient, P, P) << " for a "
       << to_string(causal_type(kSigAmbient, P)) << " P";
    throw Error(os.str());
  }
  const double pscale = std::max(1.0, euclid_norm(P));
  PairData pd;
  pd.grid = grid;
  pd.points.reserve(static_cast<std::size_t>(grid.nu) * grid.nv);
  for (int i = 0; i < grid.nu; ++i) {
    for (int j = 0; j < grid.nv; ++j) {
      const double u = grid.u_at(i), v = grid.v_at(j);
      ConformalFrame fr = frame_at(chart, u, v, order);
      const JetVec Pj = jv_from_values(P, fr.Y[0].order());
      const Jet2 beta = -jv_inner(kSigAmbient, fr.Y, Pj);
      if (std::abs(beta.value()) < kEpsPolar * pscale) {
        std::ostringstream os;
        os << "base point on polar hyperplane: <Y,P> = " << -beta.value()
           << " at " << point_str(u, v);
        throw Error(os.str());
      }
      const Jet2 a = jv_inner(kSigAmbient, Pj, fr.Yv) / beta;  // gamma/(2 beta)
      const Jet2 b = jv_inner(kSigAmbient, Pj, fr.Yu) / beta;  // delta/(2 beta)
      const Jet2 z = jv_inner(kSigAmbient, Pj, fr.E) / beta;
      pd.points.push_back(assemble_point(std::move(fr), a, b, z));
    }
  }
  finalize(pd);
  return pd;
}

// ---------------------------------------------------------------------------
// Darboux integration.

namespace {

/// Integration state (a, b, zeta) and elementwise helpers.
struct DState {
  double a = 0.0, b = 0.0, z = 0.0;
};

DState axpy(const DState& s, double h, const DState& d) {
  return {s.a + h * d.a, s.b + h * d.b, s.z + h * d.z};
}

bool state_ok(const DState& s) {
  return std::isfinite(s.a) && std::isfinite(s.b) && std::isfinite(s.z) &&
         std::abs(s.a) + std::abs(s.b) + std::abs(s.z) <= kDarbouxBound;
}

/// Frame scalars the right-hand sides need.
struct RhsData {
  double k1, k2, k12, s1, s2, k1v, k2u;
};

RhsData rhs_data(const ConformalFrame& fr) {
  RhsData d;
  d.k1 = fr.k1.value();
  d.k2 = fr.k2.value();
  d.k12 = inner(kSigAmbient, jv_value(fr.kappa1), jv_value(fr.kappa2));
  d.s1 = fr.s1.value();
  d.s2 = fr.s2.value();
  d.k1v = fr.k1.partial(0, 1);
  d.k2u = fr.k2.partial(1, 0);
  return d;
}

DState rhs_u(const RhsData& f, const DState& s, double theta1) {
  DState d;
  d.a = f.k12 - 0.25 * s.z * s.z;
  d.b = 0.5 * (theta1 + 2.0 * s.b * s.b + f.s1 + 2.0 * s.z * f.k1);
  d.z = s.b * s.z - 2.0 * f.k1v - 2.0 * s.a * f.k1;
  return d;
}

DState rhs_v(const RhsData& f, const DState& s, double theta2) {
  DState d;
  d.b = f.k12 - 0.25 * s.z * s.z;
  d.a = 0.5 * (theta2 + 2.0 * s.a * s.a + f.s2 + 2.0 * s.z * f.k2);
  d.z = s.a * s.z - 2.0 * f.k2u - 2.0 * s.b * f.k2;
  return d;
}

/// One classical 4th-order step between adjacent grid nodes; the midpoint
/// frame is evaluated on demand. Returns false on blow-up.
bool rk4_step(const SurfaceChart& chart, int order, bool along_u, double w0,
              double w1, double fixed, const RhsData& f0, const RhsData& f1,
              double theta_dir, DState& s) {
  const double h = w1 - w0;
  const double wm = 0.5 * (w0 + w1);
  const RhsData fm = rhs_data(along_u ? frame_at(chart, wm, fixed, order)
                                      : frame_at(chart, fixed, wm, order));
  auto F = [&](const RhsData& fr, const DState& st) {
    return along_u ? rhs_u(fr, st, theta_dir) : rhs_v(fr, st, theta_dir);
  };
  const DState q1 = F(f0, s);
  const DState q2 = F(fm, axpy(s, 0.5 * h, q1));
  const DState q3 = F(fm, axpy(s, 0.5 * h, q2));
  const DState q4 = F(f1, axpy(s, h, q3));
  s = {s.a + h / 6.0 * (q1.a + 2.0 * q2.a + 2.0 * q3.a + q4.a),
       s.b + h / 6.0 * (q1.b + 2.0 * q2.b + 2.0 * q3.b + q4.b),
       s.z + h / 6.0 * (q1.z + 2.0 * q2.z + 2.0 * q3.z + q4.z)};
  return state_ok(s);
}

/// Sweep the grid from node (0,0): primary direction first along one edge,
/// then the cross direction along each characteristic. Nodes past a blow-up
/// stay invalid; the first abandonment is recorded in `note`.
void sweep(const SurfaceChart& chart, int order, const GridSpec& grid,
           const std::vector<RhsData>& fdata, double theta1, double theta2,
           const DState& init, bool u_first, std::vector<DState>& vals,
           std::vector<char>& ok, std::string& note) {
  const auto idx = [&](int i, int j) {
    return static_cast<std::size_t>(i) * grid.nv + j;
  };
  const auto abandon = [&](double u, double v) {
    if (note.empty()) {
      std::ostringstream os;
      os << "characteristic abandoned at " << point_str(u, v)
         << ": |a| + |b| + |zeta| exceeded " << kDarbouxBound;
      note = os.str();
    }
  };
  vals.assign(static_cast<std::size_t>(grid.nu) * grid.nv, DState{});
  ok.assign(vals.size(), 0);
  vals[idx(0, 0)] = init;
  ok[idx(0, 0)] = 1;
  if (u_first) {
    for (int i = 0; i + 1 < grid.nu && ok[idx(i, 0)]; ++i) {
      DState s = vals[idx(i, 0)];
      if (rk4_step(chart, order, true, grid.u_at(i), grid.u_at(i + 1),
                   grid.v_at(0), fdata[idx(i, 0)], fdata[idx(i + 1, 0)], theta1,
                   s)) {
        vals[idx(i + 1, 0)] = s;
        ok[idx(i + 1, 0)] = 1;
      } else {
        abandon(grid.u_at(i + 1), grid.v_at(0));
      }
    }
    for (int i = 0; i < grid.nu; ++i) {
      if (!ok[idx(i, 0)]) continue;
      for (int j = 0; j + 1 < grid.nv && ok[idx(i, j)]; ++j) {
        DState s = vals[idx(i, j)];
        if (rk4_step(chart, order, false, grid.v_at(j), grid.v_at(j + 1),
                     grid.u_at(i), fdata[idx(i, j)], fdata[idx(i, j + 1)],
                     theta2, s)) {
          vals[idx(i, j + 1)] = s;
          ok[idx(i, j + 1)] = 1;
        } else {
          abandon(grid.u_at(i), grid.v_at(j + 1));
        }
      }
    }
  } else {
    for (int j = 0; j + 1 < grid.nv && ok[idx(0, j)]; ++j) {
      DState s = vals[idx(0, j)];
      if (rk4_step(chart, order, false, grid.v_at(j), grid.v_at(j + 1),
                   grid.u_at(0), fdata[idx(0, j)], fdata[idx(0, j + 1)], theta2,
                   s)) {
        vals[idx(0, j + 1)] = s;
        ok[idx(0, j + 1)] = 1;
      } else {
        abandon(grid.u_at(0), grid.v_at(j + 1));
      }
    }
    for (int j = 0; j < grid.nv; ++j) {
      if (!ok[idx(0, j)]) continue;
      for (int i = 0; i + 1 < grid.nu && ok[idx(i, j)]; ++i) {
        DState s = vals[idx(i, j)];
        if (rk4_step(chart, order, true, grid.u_at(i), grid.u_at(i + 1),
                     grid.v_at(j), fdata[idx(i, j)], fdata[idx(i + 1, j)],
                     theta1, s)) {
          vals[idx(i + 1, j)] = s;
          ok[idx(i + 1, j)] = 1;
        } else {
          abandon(grid.u_at(i + 1), grid.v_at(j));
        }
      }
    }
  }
}

/// Rebuild a field jet from its value and the jets of its two first
/// derivatives: Taylor coefficient (i,j) comes from the u-derivative when
/// i > 0 and from the v-derivative otherwise.
Jet2 rebuild(int m, double value, const Jet2& Fu, const Jet2& Fv) {
  Jet2 r(m, value);
  for (int d = 1; d <= m; ++d)
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      if (i > 0)
        r.set_coeff(i, j, Fu.coeff(i - 1, j) / i);
      else
        r.set_coeff(0, j, Fv.coeff(0, j - 1) / j);
    }
  return r;
}

/// Field jets at a node by formal Taylor propagation of the Darboux system:
/// each pass fixes one more total degree, so kFieldOrder passes converge.
std::array<Jet2, 3> propagate_jets(const ConformalFrame& fr, const DState& s,
                                   double theta1, double theta2) {
  const int m = kFieldOrder;
  const Jet2 k12 = jv_inner(kSigAmbient, fr.kappa1, fr.kappa2);
  const Jet2 k1v = fr.k1.deriv_v(), k2u = fr.k2.deriv_u();
  Jet2 a(m, s.a), b(m, s.b), z(m, s.z);
  for (int pass = 0; pass < m; ++pass) {
    const Jet2 Au = k12 - 0.25 * z * z;
    const Jet2 Bv = k12 - 0.25 * z * z;
    const Jet2 Bu = 0.5 * (theta1 + 2.0 * b * b + fr.s1 + 2.0 * z * fr.k1);
    const Jet2 Av = 0.5 * (theta2 + 2.0 * a * a + fr.s2 + 2.0 * z * fr.k2);
    const Jet2 Zu = b * z - 2.0 * k1v - 2.0 * a * fr.k1;
    const Jet2 Zv = a * z - 2.0 * k2u - 2.0 * b * fr.k2;
    a = rebuild(m, s.a, Au, Av);
    b = rebuild(m, s.b, Bu, Bv);
    z = rebuild(m, s.z, Zu, Zv);
  }
  return {a, b, z};
}

}  // namespace

DarbouxResult darboux_integrate(const SurfaceChart& chart, double theta,
                                const std::array<double, 3>& init,
                                const GridSpec& grid, int order) {
  if (grid.nu < 2 || grid.nv < 2)
    fail("Darboux integration needs at least a 2x2 grid");

  std::vector<ConformalFrame> frames;
  std::vector<RhsData> fdata;
  frames.reserve(static_cast<std::size_t>(grid.nu) * grid.nv);
  fdata.reserve(frames.capacity());
  double sc1 = 0.0, sc2 = 0.0;
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      frames.push_back(frame_at(chart, grid.u_at(i), grid.v_at(j), order));
      fdata.push_back(rhs_data(frames.back()));
      sc1 = std::max(sc1, std::abs(fdata.back().k1));
      sc2 = std::max(sc2, std::abs(fdata.back().k2));
    }

  // Fix the sign of theta2 from the isothermic sign of the Hopf ratio.
  const double f1 = umbilic_floor(sc1), f2 = umbilic_floor(sc2);
  bool pos = false, neg = false;
  for (const RhsData& d : fdata) {
    if (std::abs(d.k1) <= f1 || std::abs(d.k2) <= f2) continue;
    (d.k1 / d.k2 > 0.0 ? pos : neg) = true;
  }
  if (!pos && !neg)
    fail("identically umbilic chart: the Darboux sign is undefined");
  if (pos && neg)
    throw Error(
        "mixed isothermic type: the Hopf ratio changes sign inside the grid");
  const double theta2 = (pos ? 1.0 : -1.0) * theta;
  const DState s0{init[0], init[1], init[2]};

  std::vector<DState> va, vb;
  std::vector<char> oka, okb;
  std::string note_a, note_b;
  sweep(chart, order, grid, fdata, theta, theta2, s0, true, va, oka, note_a);
  sweep(chart, order, grid, fdata, theta, theta2, s0, false, vb, okb, note_b);

  DarbouxResult out;
  out.total_points = grid.nu * grid.nv;
  for (std::size_t n = 0; n < va.size(); ++n) {
    if (!oka[n] || !okb[n]) continue;
    out.compatibility =
        std::max({out.compatibility, std::abs(va[n].a - vb[n].a),
                  std::abs(va[n].b - vb[n].b), std::abs(va[n].z - vb[n].z)});
  }
  out.compatible = out.compatibility <= kTolPair;
  out.blowup_note = note_a;
  if (note_a.empty() && !note_b.empty())
    out.blowup_note = "transposed sweep: " + note_b;

  out.pair.grid = grid;
  out.pair.points.reserve(va.size());
  for (std::size_t n = 0; n < va.size(); ++n) {
    if (oka[n]) {
      const auto jets = propagate_jets(frames[n], va[n], theta, theta2);
      out.pair.points.push_back(
          assemble_point(std::move(frames[n]), jets[0], jets[1], jets[2]));
    } else {
      PairPoint p;
      p.frame = std::move(frames[n]);
      p.valid = false;
      out.pair.points.push_back(std::move(p));
    }
  }
  finalize(out.pair);
  return out;
}

}  // namespace lcs
