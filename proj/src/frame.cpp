// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.

#include "lcsurf/frame.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lcsurf/error.hpp"

namespace lcs {

namespace {

Jet2 ip(const JetVec& a, const JetVec& b) { return jv_inner(kSigAmbient, a, b); }

/// Sup over components of |value(LHS - RHS)|.
double residual_inf(const JetVec& lhs, const JetVec& rhs) {
  double m = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    m = std::max(m, std::abs(lhs[i].value() - rhs[i].value()));
  return m;
}

struct LiftResult {
  JetVec Y;
  Jet2 lambda;
};

LiftResult canonical_lift_impl(const SurfaceChart& chart, double u, double v,
                               int order) {
  const JetVec lift = lift_to_lightcone(chart, u, v, order + 1);
  const Jet2 g = jv_inner(kSigAmbient, jv_deriv_u(lift), jv_deriv_v(lift));
  if (std::abs(g.value()) <= kEpsConformal) {
    std::ostringstream os;
    os << "degenerate conformal factor at (u,v)=(" << u << ", " << v << ")";
    fail(os.str());
  }
  if (g.value() < 0.0) {
    std::ostringstream os;
    os << "conformal factor negative at (u,v)=(" << u << ", " << v
       << "); validate_chart applies the orientation flip";
    fail(os.str());
  }
  LiftResult r;
  r.lambda = 1.0 / sqrt(g * 2.0);
  r.Y = jv_scale(jv_truncated(lift, order), r.lambda);
  return r;
}

/// E from the pivoted orthogonal complement of V = span{Y, Y_u, Y_v, N}.
JetVec complement_basis(const JetVec& Y, const JetVec& Yu, const JetVec& Yv,
                        const JetVec& N) {
  const int order = N[0].order();
  JetVec best;
  double best_norm = -1.0;
  for (int i = 0; i < 5; ++i) {
    JetVec e(5, Jet2(order, 0.0));
    e[i] = Jet2(order, 1.0);
    // Tangential part of w in the null frame:
    //   -<w,N> Y - <w,Y> N + 2<w,Y_v> Y_u + 2<w,Y_u> Y_v.
    JetVec tang = jv_scale(Y, -ip(e, N));
    tang = jv_add(tang, jv_scale(N, -ip(e, Y)));
    tang = jv_add(tang, jv_scale(Yu, ip(e, Yv) * 2.0));
    tang = jv_add(tang, jv_scale(Yv, ip(e, Yu) * 2.0));
    JetVec res = jv_sub(e, tang);
    const double n2 = std::abs(ip(res, res).value());
    if (n2 >= best_norm * (1.0 - kEpsNormalPivot)) {
      best = res;
      best_norm = std::max(best_norm, n2);
    }
  }
  if (best_norm <= kEpsPivot) fail("degenerate normal complement");
  return jv_scale(best, 1.0 / sqrt(ip(best, best)));
}

ConformalFrame assemble(const JetVec& Y, const JetVec* normal_lift) {
  ConformalFrame fr;
  fr.Y = Y;
  fr.Yu = jv_deriv_u(Y);
  fr.Yv = jv_deriv_v(Y);
  const Jet2 guv = ip(fr.Yu, fr.Yv);
  if (std::abs(guv.value() - 0.5) > 1e-6)
    fail("frame requires a canonical lift (<Y_u,Y_v> = 1/2)");

  const JetVec Yuu = jv_deriv_u(fr.Yu);
  const JetVec Yuv = jv_deriv_v(fr.Yu);
  const JetVec Yvv = jv_deriv_v(fr.Yv);
  fr.N = jv_add(jv_scale(Yuv, 2.0), jv_scale(Y, ip(Yuv, Yuv) * 2.0));
  fr.s1 = ip(Yuu, fr.N) * 2.0;
  fr.s2 = ip(Yvv, fr.N) * 2.0;
  fr.kappa1 = jv_add(Yuu, jv_scale(Y, fr.s1 * 0.5));
  fr.kappa2 = jv_add(Yvv, jv_scale(Y, fr.s2 * 0.5));

  if (normal_lift) {
    // The lifted space-form normal is already orthogonal to Y, Y_u, Y_v;
    // removing its N-component lands it in V^perp without changing <E,E> = 1.
    fr.E = jv_add(jv_truncated(*normal_lift, fr.N[0].order()),
                  jv_scale(Y, ip(*normal_lift, fr.N)));
  } else {
    fr.E = complement_basis(Y, fr.Yu, fr.Yv, fr.N);
  }
  fr.k1 = ip(fr.kappa1, fr.E);
  fr.k2 = ip(fr.kappa2, fr.E);
  fr.lambda = Jet2(Y[0].order(), 1.0);
  return fr;
}

}  // namespace

JetVec canonical_lift(const SurfaceChart& chart, double u, double v, int order) {
  return canonical_lift_impl(chart, u, v, order).Y;
}

ConformalFrame frame_at(const SurfaceChart& chart, double u, double v,
                        int order) {
  if (order < 4) fail("frame requires jet order >= 4");
  LiftResult lift = canonical_lift_impl(chart, u, v, order - 1);
  if (chart.form == SpaceForm::LightCone) {
    ConformalFrame fr = assemble(lift.Y, nullptr);
    fr.lambda = lift.lambda;
    fr.v_flipped = chart.v_flipped;
    return fr;
  }
  const JetVec x = chart.eval(u, v, order);
  const JetVec n = spaceform_normal(chart.form, x, jv_deriv_u(x), jv_deriv_v(x));
  const JetVec nlift = lift_spaceform_vector(chart.form, x, n);
  ConformalFrame fr = assemble(lift.Y, &nlift);
  fr.lambda = lift.lambda;
  fr.v_flipped = chart.v_flipped;
  return fr;
}

ConformalFrame frame_from_lift(const JetVec& Y) { return assemble(Y, nullptr); }

JetVec normal_project(const ConformalFrame& fr, const JetVec& w) {
  JetVec tang = jv_scale(fr.Y, -ip(w, fr.N));
  tang = jv_add(tang, jv_scale(fr.N, -ip(w, fr.Y)));
  tang = jv_add(tang, jv_scale(fr.Yu, ip(w, fr.Yv) * 2.0));
  tang = jv_add(tang, jv_scale(fr.Yv, ip(w, fr.Yu) * 2.0));
  return jv_sub(jv_truncated(w, tang[0].order()), tang);
}

JetVec normal_deriv(const ConformalFrame& fr, const JetVec& psi, bool along_u) {
  const JetVec d = along_u ? jv_deriv_u(psi) : jv_deriv_v(psi);
  return jv_scale(fr.E, ip(d, fr.E));
}

double FrameResiduals::max() const {
  return std::max(max_normalization, max_kappa_ortho);
}

FrameResiduals frame_residuals(const ConformalFrame& fr) {
  FrameResiduals r;
  auto acc = [](double& slot, const Jet2& got, double want) {
    slot = std::max(slot, std::abs(got.value() - want));
  };
  acc(r.max_normalization, ip(fr.Y, fr.Y), 0.0);
  acc(r.max_normalization, ip(fr.Yu, fr.Yu), 0.0);
  acc(r.max_normalization, ip(fr.Yv, fr.Yv), 0.0);
  acc(r.max_normalization, ip(fr.Yu, fr.Yv), 0.5);
  acc(r.max_normalization, ip(fr.N, fr.Y), -1.0);
  acc(r.max_normalization, ip(fr.N, fr.N), 0.0);
  acc(r.max_normalization, ip(fr.N, fr.Yu), 0.0);
  acc(r.max_normalization, ip(fr.N, fr.Yv), 0.0);
  for (const JetVec* kappa : {&fr.kappa1, &fr.kappa2}) {
    acc(r.max_kappa_ortho, ip(*kappa, fr.Y), 0.0);
    acc(r.max_kappa_ortho, ip(*kappa, fr.Yu), 0.0);
    acc(r.max_kappa_ortho, ip(*kappa, fr.Yv), 0.0);
    acc(r.max_kappa_ortho, ip(*kappa, fr.N), 0.0);
  }
  return r;
}

double StructureResiduals::max() const {
  return std::max({yuu, yvv, yuv, nu, nv, eu, ev});
}

StructureResiduals structure_residuals(const ConformalFrame& fr) {
  StructureResiduals r;
  const JetVec Yuu = jv_deriv_u(fr.Yu);
  const JetVec Yuv = jv_deriv_v(fr.Yu);
  const JetVec Yvv = jv_deriv_v(fr.Yv);
  const Jet2 k12 = ip(fr.kappa1, fr.kappa2);

  r.yuu = residual_inf(
      Yuu, jv_add(jv_scale(fr.Y, fr.s1 * -0.5), jv_truncated(fr.kappa1, 0)));
  r.yvv = residual_inf(
      Yvv, jv_add(jv_scale(fr.Y, fr.s2 * -0.5), jv_truncated(fr.kappa2, 0)));
  r.yuv = residual_inf(Yuv,
                       jv_add(jv_scale(fr.Y, -k12), jv_scale(fr.N, 0.5)));

  const JetVec Dvk1 = normal_deriv(fr, fr.kappa1, false);
  const JetVec Duk2 = normal_deriv(fr, fr.kappa2, true);
  JetVec rhs = jv_scale(fr.Yu, k12 * -2.0);
  rhs = jv_add(rhs, jv_scale(fr.Yv, -fr.s1));
  rhs = jv_add(rhs, jv_scale(Dvk1, 2.0));
  r.nu = residual_inf(jv_deriv_u(fr.N), rhs);
  rhs = jv_scale(fr.Yu, -fr.s2);
  rhs = jv_add(rhs, jv_scale(fr.Yv, k12 * -2.0));
  rhs = jv_add(rhs, jv_scale(Duk2, 2.0));
  r.nv = residual_inf(jv_deriv_v(fr.N), rhs);

  const JetVec Eu = jv_deriv_u(fr.E);
  const JetVec Ev = jv_deriv_v(fr.E);
  // D E = <dE, E> E (zero for an exactly unit E; kept for faithfulness).
  rhs = jv_scale(fr.E, ip(Eu, fr.E));
  rhs = jv_add(rhs, jv_scale(fr.Y, ip(fr.E, Dvk1) * 2.0));
  rhs = jv_add(rhs, jv_scale(fr.Yv, ip(fr.E, fr.kappa1) * -2.0));
  r.eu = residual_inf(Eu, rhs);
  rhs = jv_scale(fr.E, ip(Ev, fr.E));
  rhs = jv_add(rhs, jv_scale(fr.Y, ip(fr.E, Duk2) * 2.0));
  rhs = jv_add(rhs, jv_scale(fr.Yu, ip(fr.E, fr.kappa2) * -2.0));
  r.ev = residual_inf(Ev, rhs);
  return r;
}

double IntegrabilityResiduals::max() const {
  return std::max({gauss_u, gauss_v, codazzi, ricci});
}

IntegrabilityResiduals integrability_residuals(const ConformalFrame& fr) {
  IntegrabilityResiduals r;
  const JetVec Duk1 = normal_deriv(fr, fr.kappa1, true);
  const JetVec Dvk1 = normal_deriv(fr, fr.kappa1, false);
  const JetVec Duk2 = normal_deriv(fr, fr.kappa2, true);
  const JetVec Dvk2 = normal_deriv(fr, fr.kappa2, false);

  r.gauss_u = std::abs(0.5 * fr.s1.partial(0, 1) -
                       3.0 * ip(fr.kappa1, Duk2).value() -
                       ip(Duk1, fr.kappa2).value());
  r.gauss_v = std::abs(0.5 * fr.s2.partial(1, 0) -
                       ip(fr.kappa1, Dvk2).value() -
                       3.0 * ip(Dvk1, fr.kappa2).value());

  const JetVec DvDvk1 = normal_deriv(fr, Dvk1, false);
  const JetVec DuDuk2 = normal_deriv(fr, Duk2, true);
  JetVec codazzi = jv_add(DvDvk1, jv_scale(fr.kappa1, fr.s2 * 0.5));
  codazzi = jv_sub(codazzi, DuDuk2);
  codazzi = jv_sub(codazzi, jv_truncated(jv_scale(fr.kappa2, fr.s1 * 0.5),
                                         codazzi[0].order()));
  r.codazzi = residual_inf(codazzi, JetVec(5, Jet2(0, 0.0)));

  // Curvature of D on E minus the algebraic term; both vanish for a rank-1
  // normal bundle, so this is a pipeline identity check.
  const JetVec DvE = normal_deriv(fr, fr.E, false);
  const JetVec DuE = normal_deriv(fr, fr.E, true);
  JetVec curv = jv_sub(normal_deriv(fr, DvE, true), normal_deriv(fr, DuE, false));
  curv = jv_sub(curv, jv_truncated(jv_scale(fr.kappa2, ip(fr.E, fr.kappa1) * 2.0),
                                   curv[0].order()));
  curv = jv_add(curv, jv_truncated(jv_scale(fr.kappa1, ip(fr.E, fr.kappa2) * 2.0),
                                   curv[0].order()));
  r.ricci = residual_inf(curv, JetVec(5, Jet2(0, 0.0)));
  return r;
}

}  // namespace lcs
