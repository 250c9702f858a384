// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
/**
 * @file test_envelope.cpp
 * @brief Blaschke pairs: invariants, classification, dual / Darboux / trivial
 * constructions, and the second-envelope identity suite.
 *
 * Frozen anchors (closed-form differentiation, independent of the library):
 *  - cylinder (k1 = k2 = -1/4, s1 = s2 = 1/4 constant): with a = b = xi = 0
 *    the pair invariants are theta1 = theta2 = -s = -1/4 and
 *    rho1 = rho2 = -2<kappa1,kappa2> = -1/8; the hat lift reduces to N.
 *  - clifford torus (k = 1/2, s = 0): the dual fields a = -k1_v/k1 and
 *    b = -k2_u/k2 vanish, so rho1 = rho2 = -2 k^2 = -1/2, theta = 0, and the
 *    second fundamental witness <Yhat_ww, E>/k_i must equal rho_i.
 *  - null-sum minimal chart: <kappa1,kappa2> = -k^2 + s with s = k_v/... all
 *    arranged so that the dual pair has rho identically zero (minimal case).
 *  - trivial pair through P: Yhat = P/(-<Y,P>) exactly, so for the cylinder
 *    and P = (1,0,0,0,1) (where -<Y,P> = 1) the hat lift is the constant P.
 *  - Darboux system on the cylinder: the constant coefficients make the
 *    transport equations integrable for every theta, while forcing a constant
 *    theta on a non-adapted isothermic chart breaks the order-swap test.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "approx.hpp"
#include "lcsurf/envelope.hpp"
#include "lcsurf/error.hpp"

using namespace lcs;

namespace {

SurfaceChart catalog(const std::string& name) {
  SurfaceChart ch = chart_from_catalog(name);
  validate_chart(ch);
  return ch;
}

/// Translational chart over an inflecting quintic null curve: separable Hopf
/// ratio that changes sign across u = 0 (mixed isothermic type).
SurfaceChart mixed_type_chart() {
  Config cfg = Config::parse_text(
      "source = \"R31\"\n"
      "components = [u - u^5/5 + sin(v), 2*u^3/3 + cos(v), u + u^5/5 - v]\n"
      "domain = [-0.8, 0.8, -0.8, 0.8]\n");
  SurfaceChart ch = chart_from_config(cfg);
  validate_chart(ch);
  return ch;
}

/// Max-abs difference of the values of two jet vectors.
double jv_value_gap(const JetVec& a, const JetVec& b) {
  double worst = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c)
    worst = std::max(worst, std::abs(a[c].value() - b[c].value()));
  return worst;
}

}  // namespace

TEST_CASE("zero-field pair on the cylinder: invariants and hat lift") {
  SurfaceChart cyl = catalog("cylinder_r31");
  GridSpec grid{6, 6, 0.0, 1.0, 0.0, 1.0};
  PairData pd = build_pair(cyl, Expr{}, Expr{}, Expr{}, grid);

  CHECK(pd.valid_points == 36);
  const PairPoint& p = pd.at(2, 3);
  CHECK(near_abs(p.theta1.value(), -0.25, 1e-12));
  CHECK(near_abs(p.theta2.value(), -0.25, 1e-12));
  CHECK(near_abs(p.rho1.value(), -0.125, 1e-12));
  CHECK(near_abs(p.rho2.value(), -0.125, 1e-12));
  CHECK(pd.sup_eta <= 1e-12);
  CHECK(pd.sup_xi <= 1e-14);

  // With a = b = xi = 0 the hat lift is exactly the conformal normal N.
  CHECK(jv_value_gap(p.yhat, p.frame.N) <= 1e-14);

  // Algebraic post-conditions of the construction.
  CHECK(pd.sup_pairing <= 1e-12);    // <Y, Yhat> = -1
  CHECK(pd.sup_nullity <= 1e-12);    // <Yhat, Yhat> = 0
  CHECK(pd.sup_expansion <= 1e-12);  // derivative expansion identity

  // theta != 0 and rho != 0 with eta = 0: none of the named classes apply.
  PairClassification pc = classify(pd);
  CHECK(pc.label == PairClass::Indeterminate);
  CHECK(std::string(to_string(pc.label)) == "Indeterminate");
}

TEST_CASE("expansion identity holds for arbitrary smooth fields") {
  SurfaceChart cliff = catalog("clifford_s31");
  GridSpec grid{6, 6, -1.0, 1.0, -1.0, 1.0};
  PairData pd = build_pair(cliff, Expr::parse("0.3*u*v"), Expr::parse("0.2*sin(u)"),
                           Expr::parse("0.1*cos(v)"), grid);

  // The expansion of Yhat_u, Yhat_v through (rho, theta, eta) is an algebraic
  // identity: it holds whether or not the fields solve the envelope system.
  CHECK(pd.sup_expansion <= 1e-8);
  CHECK(pd.sup_pairing <= 1e-10);
  CHECK(pd.sup_nullity <= 1e-10);

  // Generic fields violate the closure equations: eta is order one.
  PairClassification pc = classify(pd);
  CHECK(pc.label == PairClass::NotEnvelope);
  CHECK(pc.eta_sup > 1e-2);
}

TEST_CASE("xi alone breaks the envelope condition on the cylinder") {
  SurfaceChart cyl = catalog("cylinder_r31");
  GridSpec grid{5, 5, 0.0, 1.0, 0.0, 1.0};
  PairData pd =
      build_pair(cyl, Expr{}, Expr{}, Expr::parse("0.3*u"), grid);
  CHECK(classify(pd).label == PairClass::NotEnvelope);
}

TEST_CASE("dual pair of the clifford torus is dual S-Willmore") {
  SurfaceChart cliff = catalog("clifford_s31");
  GridSpec grid{6, 6, -1.0, 1.0, -1.0, 1.0};
  PairData pd = dual_pair(cliff, grid);

  const PairPoint& p = pd.at(1, 4);
  CHECK(near_abs(p.a.value(), 0.0, 1e-12));  // k constant => dual fields vanish
  CHECK(near_abs(p.b.value(), 0.0, 1e-12));
  CHECK(near_abs(p.rho1.value(), -0.5, 1e-10));
  CHECK(near_abs(p.rho2.value(), -0.5, 1e-10));

  PairClassification pc = classify(pd);
  CHECK(pc.label == PairClass::DualSWillmore);
  CHECK(pc.theta_sup <= 1e-10);
  CHECK(pc.eta_sup <= 1e-10);
  CHECK(pc.xi_sup <= 1e-14);

  // Second fundamental witness: <Yhat_ww, E>/k_i reproduces rho_i.
  CHECK(std::isfinite(pc.kappa_ratio));
  CHECK(pc.kappa_ratio <= 1e-8);

  // Closure identities of a genuine envelope pair.
  PairIdentityResiduals ids = pair_identity_residuals(pd);
  CHECK(ids.max() <= 1e-10);
}

TEST_CASE("dual pair of the null-sum chart: rho vanishes identically") {
  SurfaceChart null_sum = catalog("nullsum_minimal_r31");
  GridSpec grid{7, 7, -1.2, 1.2, -1.2, 1.2};
  PairData pd = dual_pair(null_sum, grid);

  // Minimal chart: the dual pair is again S-Willmore and degenerate in rho.
  PairClassification pc = classify(pd);
  CHECK(pc.label == PairClass::DualSWillmore);
  CHECK(pc.theta_sup <= 1e-10);
  CHECK(pc.rho_sup <= 1e-8);
  CHECK(pair_identity_residuals(pd).max() <= 1e-8);
}

TEST_CASE("dual pair of the cylinder stays indeterminate") {
  SurfaceChart cyl = catalog("cylinder_r31");
  GridSpec grid{5, 5, 0.0, 1.0, 0.0, 1.0};
  PairData pd = dual_pair(cyl, grid);

  // Constant k again gives a = b = 0, but theta = -s = -1/4 != 0 here.
  const PairPoint& p = pd.at(2, 2);
  CHECK(near_abs(p.theta1.value(), -0.25, 1e-12));
  CHECK(classify(pd).label == PairClass::Indeterminate);
}

TEST_CASE("dual pair rejects umbilic grids") {
  SurfaceChart plane = catalog("plane_r31");
  GridSpec grid{5, 5, -1.0, 1.0, -1.0, 1.0};
  CHECK_THROWS_WITH_AS(dual_pair(plane, grid),
                       doctest::Contains("umbilic grid points"), Error);
}

TEST_CASE("expression-mode zero fields reproduce the clifford dual pair") {
  SurfaceChart cliff = catalog("clifford_s31");
  GridSpec grid{5, 5, -1.0, 1.0, -1.0, 1.0};
  PairData via_expr = build_pair(cliff, Expr::parse("0"), Expr::parse("0"),
                                 Expr::parse("0"), grid);
  PairData via_dual = dual_pair(cliff, grid);

  for (int i : {0, 2, 4}) {
    for (int j : {1, 3}) {
      const PairPoint& pe = via_expr.at(i, j);
      const PairPoint& pdl = via_dual.at(i, j);
      CHECK(near_abs(pe.rho1.value(), pdl.rho1.value(), 1e-12));
      CHECK(near_abs(pe.theta1.value(), pdl.theta1.value(), 1e-12));
      CHECK(near_abs(pe.eta1.value(), pdl.eta1.value(), 1e-12));
      CHECK(near_abs(pe.zeta.value(), pdl.zeta.value(), 1e-14));
    }
  }
  CHECK(classify(via_expr).label == classify(via_dual).label);
}

TEST_CASE("trivial pair through a null point of the cylinder") {
  SurfaceChart cyl = catalog("cylinder_r31");
  GridSpec grid{5, 5, 0.0, 1.0, 0.0, 1.0};
  Vec P{1.0, 0.0, 0.0, 0.0, 1.0};
  PairData pd = trivial_from_point(cyl, P, grid);

  // The hat lift is P/(-<Y,P>); for this chart -<Y,P> = 1, so Yhat == P.
  double worst = 0.0;
  for (int i = 0; i < grid.nu; ++i) {
    for (int j = 0; j < grid.nv; ++j) {
      const PairPoint& p = pd.at(i, j);
      for (int c = 0; c < 5; ++c)
        worst = std::max(worst, std::abs(p.yhat[c].value() - P[c]));
    }
  }
  CHECK(worst <= 1e-10);

  // All three closure invariants vanish by construction.
  CHECK(pd.sup_eta <= 1e-12);
  CHECK(pd.sup_theta <= 1e-8);
  CHECK(pd.sup_rho <= 1e-10);
  CHECK(near_abs(pd.at(1, 3).zeta.value(), 0.5, 1e-12));

  PairClassification pc = classify(pd);
  CHECK(pc.label == PairClass::Trivial);
  CHECK(pc.fixed_direction <= 1e-8);    // Yhat transports projectively
  CHECK(pc.direction_spread <= 1e-8);   // ... toward one fixed direction
  CHECK(pc.rho_equality <= 1e-10);
  CHECK(pair_identity_residuals(pd).max() <= 1e-10);
}

TEST_CASE("trivial pair rejects non-null and polar base points") {
  SurfaceChart cyl = catalog("cylinder_r31");
  GridSpec grid{5, 5, 0.0, 1.0, 0.0, 1.0};
  CHECK_THROWS_WITH_AS(trivial_from_point(cyl, Vec{1, 0, 0, 0, 0}, grid),
                       doctest::Contains("null base point"), Error);
  // (0,1,0,0,1) is null but <Y,P> = 0 along u = 0 for this chart.
  GridSpec centered{5, 5, -0.5, 0.5, -0.5, 0.5};
  CHECK_THROWS_WITH_AS(trivial_from_point(cyl, Vec{0, 1, 0, 0, 1}, centered),
                       doctest::Contains("polar hyperplane"), Error);
}

TEST_CASE("Darboux transform of the cylinder at theta = 1") {
  SurfaceChart cyl = catalog("cylinder_r31");
  GridSpec grid{50, 50, 0.0, 1.0, 0.0, 1.0};
  DarbouxResult r = darboux_integrate(cyl, 1.0, {0.0, 0.0, 0.0}, grid);

  CHECK(r.compatible);
  CHECK(r.compatibility <= 1e-9);  // order-swap agreement of the two sweeps
  CHECK(r.blowup_note.empty());
  CHECK(r.pair.valid_points == 2500);
  CHECK(r.total_points == 2500);

  const PairPoint& mid = r.pair.at(24, 24);
  CHECK(near_abs(mid.theta1.value(), 1.0, 1e-12));  // prescribed parameter
  // Symmetric coefficients and symmetric seed: a(u,v) = b(v,u) on the diagonal.
  CHECK(near_abs(mid.a.value(), mid.b.value(), 1e-9));

  PairClassification pc = classify(r.pair);
  CHECK(pc.label == PairClass::IsothermicDarboux);
  CHECK(pc.eta_sup <= 1e-12);
  CHECK(pair_identity_residuals(r.pair).max() <= 1e-6);
  CHECK(r.pair.sup_expansion <= 1e-10);

  // Independent finite-difference check of the integrated fields: a_u and b_v
  // must match the transport right-hand side 2(<kappa1,kappa2> - xi^2/4),
  // sampled here through the stored jets against 5-point central stencils.
  const double h = 1.0 / (grid.nu + 1);
  double worst_au = 0.0, worst_bv = 0.0;
  for (int i = 2; i < grid.nu - 2; i += 3) {
    for (int j = 2; j < grid.nv - 2; j += 3) {
      auto a_at = [&](int ii) { return r.pair.at(ii, j).a.value(); };
      auto b_at = [&](int jj) { return r.pair.at(i, jj).b.value(); };
      const double au_fd = (-a_at(i + 2) + 8 * a_at(i + 1) - 8 * a_at(i - 1) +
                            a_at(i - 2)) /
                           (12 * h);
      const double bv_fd = (-b_at(j + 2) + 8 * b_at(j + 1) - 8 * b_at(j - 1) +
                            b_at(j - 2)) /
                           (12 * h);
      const PairPoint& p = r.pair.at(i, j);
      worst_au = std::max(worst_au, std::abs(p.a.partial(1, 0) - au_fd));
      worst_bv = std::max(worst_bv, std::abs(p.b.partial(0, 1) - bv_fd));
    }
  }
  CHECK(worst_au <= 1e-6);
  CHECK(worst_bv <= 1e-6);

  // Envelope swap relation: Y_v = -a Y + (Yhat_u - b Yhat)/theta, checked
  // componentwise at the value level.
  double worst_swap = 0.0;
  for (int i : {5, 25, 44}) {
    for (int j : {5, 25, 44}) {
      const PairPoint& p = r.pair.at(i, j);
      for (int c = 0; c < 5; ++c) {
        const double lhs = p.frame.Yv[c].value();
        const double rhs = -p.a.value() * p.frame.Y[c].value() +
                           (p.yhat[c].partial(1, 0) -
                            p.b.value() * p.yhat[c].value()) /
                               p.theta1.value();
        worst_swap = std::max(worst_swap, std::abs(lhs - rhs));
      }
    }
  }
  CHECK(worst_swap <= 1e-10);
}

TEST_CASE("Darboux at theta = 0 moves zeta but stays trivial") {
  SurfaceChart cyl = catalog("cylinder_r31");
  GridSpec grid{40, 40, 0.0, 1.0, 0.0, 1.0};
  DarbouxResult r = darboux_integrate(cyl, 0.0, {0.0, 0.0, 0.3}, grid);

  CHECK(r.compatible);
  PairClassification pc = classify(r.pair);
  CHECK(pc.label == PairClass::Trivial);
  CHECK(pc.xi_sup > 0.3);  // the xi field genuinely evolves ...
  CHECK(pc.fixed_direction <= 1e-8);   // ... yet Yhat stays projectively fixed
  CHECK(pc.direction_spread <= 1e-8);
}

TEST_CASE("constant theta off an adapted isothermic gauge is incompatible") {
  SurfaceChart null_sum = catalog("nullsum_minimal_r31");
  GridSpec grid{40, 40, -0.6, 0.6, -0.6, 0.6};
  DarbouxResult r = darboux_integrate(null_sum, 1.0, {0.0, 0.0, 0.0}, grid);

  // The chart is isothermic of the opposite sign and not in an adapted gauge:
  // the order-swap residual and the mixed closure identity both flag it.
  CHECK_FALSE(r.compatible);
  CHECK(r.compatibility > 1e-2);
  CHECK(pair_identity_residuals(r.pair).mix > 1e-2);
}

TEST_CASE("Darboux characteristics that blow up are abandoned") {
  SurfaceChart cyl = catalog("cylinder_r31");
  GridSpec grid{60, 8, 0.0, 3.0, 0.0, 0.5};
  DarbouxResult r = darboux_integrate(cyl, 1.0, {0.0, 0.0, 0.0}, grid);

  // The Riccati growth of b along u crosses the bound near u ~ 2.
  CHECK(r.total_points == 480);
  CHECK(r.pair.valid_points == 328);
  CHECK(r.pair.valid_points < r.total_points);
  CHECK(r.blowup_note.find("abandoned") != std::string::npos);
  CHECK(std::isfinite(r.compatibility));
}

TEST_CASE("Darboux guard rails") {
  GridSpec grid{6, 6, -0.5, 0.5, -0.5, 0.5};
  SurfaceChart plane = catalog("plane_r31");
  CHECK_THROWS_WITH_AS(darboux_integrate(plane, 1.0, {0, 0, 0}, grid),
                       doctest::Contains("identically umbilic"), Error);
  CHECK_THROWS_WITH_AS(darboux_integrate(mixed_type_chart(), 1.0, {0, 0, 0},
                                         GridSpec{8, 8, -0.8, 0.8, -0.8, 0.8}),
                       doctest::Contains("mixed isothermic type"), Error);
  SurfaceChart cyl = catalog("cylinder_r31");
  CHECK_THROWS_WITH_AS(
      darboux_integrate(cyl, 1.0, {0, 0, 0}, GridSpec{1, 5, 0, 1, 0, 1}),
      doctest::Contains("2x2"), Error);
}
