// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
/**
 * @file test_detect.cpp
 * @brief Willmore / S-Willmore / isothermic detectors, adapted coordinates,
 * and the Willmore energy.
 *
 * Frozen anchors (closed-form differentiation):
 *  - cylinder: k = -1/4 and s2 = 1/4 are constant, so the Willmore residual
 *    is |(s2/2) k| = 1/32 = 0.03125 everywhere; ratio field r = 1 (sign +);
 *    energy over [0,1]^2 is 2 <kappa1,kappa2> = 2/16 = 0.125.
 *  - null-sum chart: minimal, hence Willmore (residual ~ 0); r = -2 (sign -).
 *  - clifford: k = 1/2, s = 0 constant => S-Willmore; r = 1.
 *  - plane: kappa = 0 identically => detectors report "identically umbilic".
 *  - under u -> 2u the residual scales by f'^{3/2} = 2^{3/2} on the first
 *    component and the zero/nonzero classification is unchanged.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "approx.hpp"
#include "fd_oracle.hpp"
#include "lcsurf/detect.hpp"
#include "lcsurf/error.hpp"

using namespace lcs;

namespace {

GridSpec full_grid(const SurfaceChart& chart, int nu, int nv) {
  return GridSpec{nu, nv, chart.domain[0], chart.domain[1], chart.domain[2],
                  chart.domain[3]};
}

/// Totally umbilic de Sitter sphere x1^2 + x2^2 - x3^2 = 1 in null
/// coordinates (Hopf scalars vanish up to roundoff only).
SurfaceChart sphere_chart() {
  Config cfg = Config::parse_text(
      "source = \"R31\"\n"
      "components = [cos((u+v)/2)/cos((u-v)/2), sin((u+v)/2)/cos((u-v)/2), "
      "sin((u-v)/2)/cos((u-v)/2)]\n"
      "domain = [-1, 1, -1, 1]\n");
  SurfaceChart ch = chart_from_config(cfg);
  validate_chart(ch);
  return ch;
}

/// Translational chart over an inflecting quintic null curve: the Hopf ratio
/// is separable but changes sign across u = 0 (mixed isothermic type).
SurfaceChart mixed_type_chart() {
  Config cfg = Config::parse_text(
      "source = \"R31\"\n"
      "components = [u - u^5/5 + sin(v), 2*u^3/3 + cos(v), u + u^5/5 - v]\n"
      "domain = [-0.8, 0.8, -0.8, 0.8]\n");
  SurfaceChart ch = chart_from_config(cfg);
  validate_chart(ch);
  return ch;
}

}  // namespace

TEST_CASE("Willmore residual: cylinder anchor, minimal charts, plane") {
  SurfaceChart cyl = chart_from_catalog("cylinder_r31");
  for (auto [u, v] : {std::pair{0.0, 0.0}, {0.3, 0.7}, {-0.2, 1.1}}) {
    auto wr = willmore_residual(cyl, u, v);
    CHECK(near_abs(wr.first, 0.03125, 1e-9));
    CHECK(near_abs(wr.second, 0.03125, 1e-9));
  }
  SurfaceChart plane = chart_from_catalog("plane_r31");
  auto wp = willmore_residual(plane, 0.4, -1.2);
  CHECK(wp.first <= 1e-12);
  CHECK(wp.second <= 1e-12);
  for (const std::string name : {"nullsum_minimal_r31", "clifford_s31"}) {
    CAPTURE(name);
    SurfaceChart ch = chart_from_catalog(name);
    GridSpec grid = full_grid(ch, 5, 5);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        auto wr = willmore_residual(ch, grid.u_at(i), grid.v_at(j));
        CHECK(wr.first <= 1e-8);
        CHECK(wr.second <= 1e-8);
      }
    }
  }
}

TEST_CASE("Willmore residual scales by f'^{3/2} under u -> 2u") {
  SurfaceChart cyl = chart_from_catalog("cylinder_r31");
  SurfaceChart st = reparametrize(cyl, "2*u", "v", {-0.2, 0.7, -0.4, 1.2});
  validate_chart(st);
  // res_u = |(g'^2 s2/2) f'^{3/2} g'^{-1/2} k1| and res_v symmetrically:
  // with g' = 1 both components scale by f'^{3/2}.
  auto wr = willmore_residual(st, 0.1, 0.3);
  CHECK(near_abs(wr.first, 0.03125 * std::pow(2.0, 1.5), 1e-9));
  CHECK(near_abs(wr.second, 0.03125 * std::pow(2.0, 1.5), 1e-9));
}

TEST_CASE("S-Willmore test separates cylinder from clifford and null-sum") {
  SurfaceChart cyl = chart_from_catalog("cylinder_r31");
  SWillmoreReport rc = swillmore_test(cyl, full_grid(cyl, 6, 6));
  CHECK(rc.skipped == 0);
  CHECK(rc.parallelism_residual <= 1e-12);
  CHECK(near_abs(rc.willmore_sup, 0.03125, 1e-9));
  CHECK_FALSE(rc.swillmore);
  for (double m : rc.mu1) CHECK(std::abs(m) <= 1e-10);
  for (double m : rc.mu2) CHECK(std::abs(m) <= 1e-10);

  SurfaceChart cli = chart_from_catalog("clifford_s31");
  SWillmoreReport rk = swillmore_test(cli, full_grid(cli, 6, 6));
  CHECK(rk.swillmore);
  CHECK(rk.parallelism_residual <= 1e-12);
  CHECK(rk.willmore_sup <= 1e-8);

  SurfaceChart ns = chart_from_catalog("nullsum_minimal_r31");
  SWillmoreReport rn = swillmore_test(ns, full_grid(ns, 6, 6));
  CHECK(rn.swillmore);  // minimal => Willmore; rank-one bundle => parallel
}

TEST_CASE("identically umbilic charts are rejected with a diagnostic") {
  SurfaceChart plane = chart_from_catalog("plane_r31");
  CHECK_THROWS_WITH_AS(swillmore_test(plane, full_grid(plane, 6, 6)),
                       doctest::Contains("identically umbilic"), Error);
  CHECK_THROWS_WITH_AS(isothermic_test(plane, full_grid(plane, 6, 6)),
                       doctest::Contains("identically umbilic"), Error);
  // Exact umbilic geometry whose Hopf scalars are roundoff noise, not 0.0.
  SurfaceChart sph = sphere_chart();
  CHECK_THROWS_WITH_AS(swillmore_test(sph, full_grid(sph, 6, 6)),
                       doctest::Contains("identically umbilic"), Error);
}

TEST_CASE("isothermic test: ratio fields and signs of the catalog charts") {
  SurfaceChart cyl = chart_from_catalog("cylinder_r31");
  IsothermicReport ic = isothermic_test(cyl, full_grid(cyl, 6, 6));
  CHECK(ic.sign == 1);
  CHECK(ic.skipped == 0);
  CHECK(ic.parallel_residual <= 1e-10);
  CHECK(ic.separability_residual <= 1e-10);
  for (double r : ic.ratio) CHECK(near_abs(r, 1.0, 1e-10));

  SurfaceChart ns = chart_from_catalog("nullsum_minimal_r31");
  IsothermicReport in = isothermic_test(ns, full_grid(ns, 6, 6));
  CHECK(in.sign == -1);
  CHECK(in.separability_residual <= 1e-8);
  for (double r : in.ratio) CHECK(near_abs(r, -2.0, 1e-8));

  SurfaceChart cli = chart_from_catalog("clifford_s31");
  IsothermicReport ik = isothermic_test(cli, full_grid(cli, 6, 6));
  CHECK(ik.sign == 1);
  for (double r : ik.ratio) CHECK(near_abs(r, 1.0, 1e-10));
}

TEST_CASE("separability defect on synthetic ratio jets") {
  Jet2 ju = Jet2::variable_u(3, 0.3);
  Jet2 jv = Jet2::variable_v(3, -0.2);
  // Separable product (1+u)(2+v): defect 0.
  CHECK(separability_defect((1.0 + ju) * (2.0 + jv)) <= 1e-14);
  // Negative separable ratio: the defect uses log |r|.
  CHECK(separability_defect((1.0 + ju) * (2.0 + jv) * -3.0) <= 1e-14);
  // exp(u v) has mixed log-derivative exactly 1.
  CHECK(near_abs(separability_defect(exp(ju * jv)), 1.0, 1e-13));
  // Non-separable sum 2 + u v at (0.3, -0.2).
  const double u = 0.3, v = -0.2, s = 2.0 + u * v;
  const double want = std::abs(1.0 / s - u * v / (s * s));
  CHECK(near_abs(separability_defect(2.0 + ju * jv), want, 1e-12));
}

TEST_CASE("separability defect agrees with nested finite differences") {
  // Cross-oracle on the null-sum chart: log |k1/k2| differentiated by jets
  // vs central differences of pointwise ratio values.
  SurfaceChart ns = chart_from_catalog("nullsum_minimal_r31");
  const double u = 0.35, v = -0.4;
  ConformalFrame fr = frame_at(ns, u, v);
  Jet2 r = fr.k1 / fr.k2;
  const double jet_mixed = log(abs_jet(r)).partial(1, 1);
  auto logr = [&](double uu, double vv) {
    ConformalFrame f = frame_at(ns, uu, vv);
    return std::log(std::abs(f.k1.value() / f.k2.value()));
  };
  const double fd_mixed = lcs_test::fd_partial(logr, 1, 1, u, v);
  CHECK(near_abs(jet_mixed, fd_mixed, 1e-6));
  // The same comparison on a genuinely varying ratio: the stretched cylinder
  // composed with a cubic v-map has r(u,v) = 4 / g'(v)^2.
  SurfaceChart re = reparametrize(chart_from_catalog("cylinder_r31"), "2*u",
                                  "v + v^3/10", {-0.2, 0.7, -0.4, 1.2});
  validate_chart(re);
  ConformalFrame f2 = frame_at(re, 0.2, 0.8);
  const double gp = 1.0 + 3.0 * 0.8 * 0.8 / 10.0;
  CHECK(near_rel(f2.k1.value() / f2.k2.value(), 4.0 / (gp * gp), 1e-9));
  CHECK(separability_defect(f2.k1 / f2.k2) <= 1e-9);
}

TEST_CASE("ratio sign scan") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK(ratio_sign_scan({1.0, 2.0, nan, 3.0}) == 1);
  CHECK(ratio_sign_scan({-1.0, nan, -0.5}) == -1);
  CHECK(ratio_sign_scan({1.0, -1.0}) == 0);
  CHECK(ratio_sign_scan({nan, nan}) == 0);
}

TEST_CASE("adapted coordinates: identity, stretch recovery, dual type") {
  SurfaceChart cyl = chart_from_catalog("cylinder_r31");
  AdaptedCoordinates ac = adapt_coordinates(cyl, full_grid(cyl, 8, 8));
  CHECK(ac.sign == 1);
  CHECK(ac.ratio_residual <= 1e-10);
  for (std::size_t i = 0; i < ac.u.size(); ++i)
    CHECK(near_abs(ac.f[i], ac.u[i] - ac.u[0], 1e-10));
  for (std::size_t j = 0; j < ac.v.size(); ++j)
    CHECK(near_abs(ac.g[j], ac.v[j] - ac.v[0], 1e-10));

  // Stretched cylinder fed back in: recovered f' = 2 restores kappa1 = kappa2.
  SurfaceChart st = reparametrize(cyl, "2*u", "v", {-0.2, 0.7, -0.4, 1.2});
  validate_chart(st);
  AdaptedCoordinates as = adapt_coordinates(st, full_grid(st, 8, 8));
  CHECK(as.sign == 1);
  CHECK(as.ratio_residual <= 1e-9);
  for (std::size_t i = 0; i < as.u.size(); ++i)
    CHECK(near_abs(as.f[i], 2.0 * (as.u[i] - as.u[0]), 1e-9));

  // Null-sum (dual type): sigma1 = -2, sigma2 = 1, so f' = sqrt(2), g' = 1
  // and the adapted ratio is -1.
  SurfaceChart ns = chart_from_catalog("nullsum_minimal_r31");
  AdaptedCoordinates an = adapt_coordinates(ns, full_grid(ns, 8, 8));
  CHECK(an.sign == -1);
  CHECK(an.ratio_residual <= 1e-8);
  for (std::size_t i = 0; i < an.u.size(); ++i)
    CHECK(near_abs(an.f[i], std::sqrt(2.0) * (an.u[i] - an.u[0]), 1e-8));
}

TEST_CASE("adapted coordinates reject mixed types and umbilic charts") {
  SurfaceChart mx = mixed_type_chart();
  GridSpec grid = full_grid(mx, 8, 8);
  IsothermicReport iso = isothermic_test(mx, grid);
  CHECK(iso.separability_residual <= 1e-10);  // separable ...
  CHECK(iso.sign == 0);                       // ... but sign-mixed
  CHECK(ratio_sign_scan(iso.ratio) == 0);
  CHECK_THROWS_WITH_AS(adapt_coordinates(mx, grid),
                       doctest::Contains("mixed isothermic type"), Error);
  SurfaceChart plane = chart_from_catalog("plane_r31");
  CHECK_THROWS_AS(adapt_coordinates(plane, full_grid(plane, 6, 6)), Error);
}

TEST_CASE("Willmore energy quadrature") {
  SurfaceChart cyl = chart_from_catalog("cylinder_r31");
  CHECK(near_abs(willmore_energy(cyl, GridSpec{8, 8, 0, 1, 0, 1}), 0.125,
                 1e-10));
  SurfaceChart plane = chart_from_catalog("plane_r31");
  CHECK(std::abs(willmore_energy(plane, GridSpec{8, 8, -1, 1, -1, 1})) <=
        1e-14);
  // Clifford has constant integrand 2 k^2 = 1/2: Simpson is exact.
  SurfaceChart cli = chart_from_catalog("clifford_s31");
  CHECK(near_abs(willmore_energy(cli, GridSpec{8, 8, -1, 1, -1, 1}), 2.0,
                 1e-10));
  // Composite-Simpson order check on a varying integrand.
  SurfaceChart ns = chart_from_catalog("nullsum_minimal_r31");
  const double w8 = willmore_energy(ns, GridSpec{8, 8, -0.5, 0.5, -0.5, 0.5});
  const double w16 = willmore_energy(ns, GridSpec{16, 16, -0.5, 0.5, -0.5, 0.5});
  const double w64 = willmore_energy(ns, GridSpec{64, 64, -0.5, 0.5, -0.5, 0.5});
  const double e1 = std::abs(w8 - w64), e2 = std::abs(w16 - w64);
  CHECK(e2 <= e1 / 8.0 + 1e-13);
}

TEST_CASE("zero/nonzero Willmore classification survives reparametrization") {
  SurfaceChart cyl = chart_from_catalog("cylinder_r31");
  SurfaceChart cr = reparametrize(cyl, "2*u", "v", {-0.2, 0.7, -0.4, 1.2});
  validate_chart(cr);
  SurfaceChart ns = chart_from_catalog("nullsum_minimal_r31");
  SurfaceChart nr = reparametrize(ns, "2*u", "v", {-0.6, 0.6, -1.2, 1.2});
  validate_chart(nr);
  DetectorReport a = detect_all(cyl, full_grid(cyl, 6, 6));
  DetectorReport b = detect_all(cr, full_grid(cr, 6, 6));
  CHECK_FALSE(a.willmore);
  CHECK(a.willmore == b.willmore);
  DetectorReport c = detect_all(ns, full_grid(ns, 6, 6));
  DetectorReport d = detect_all(nr, full_grid(nr, 6, 6));
  CHECK(c.willmore);
  CHECK(c.willmore == d.willmore);
}

TEST_CASE("aggregate detector report") {
  SurfaceChart cyl = chart_from_catalog("cylinder_r31");
  DetectorReport rep = detect_all(cyl, GridSpec{6, 6, 0, 1, 0, 1});
  CHECK_FALSE(rep.willmore);
  CHECK(near_abs(rep.willmore_sup, 0.03125, 1e-9));
  CHECK(near_abs(rep.willmore_mean, 0.03125, 1e-9));
  CHECK(rep.swillmore_error.empty());
  CHECK(rep.isothermic_error.empty());
  CHECK_FALSE(rep.swillmore.swillmore);
  CHECK(rep.isothermic.sign == 1);
  CHECK(near_abs(rep.energy_W, 0.125, 1e-10));

  SurfaceChart plane = chart_from_catalog("plane_r31");
  DetectorReport rp = detect_all(plane, GridSpec{6, 6, -1, 1, -1, 1});
  CHECK(rp.willmore);
  CHECK(rp.swillmore_error.find("identically umbilic") != std::string::npos);
  CHECK_FALSE(rp.isothermic_error.empty());
  CHECK(std::abs(rp.energy_W) <= 1e-14);
}

TEST_CASE("cone-source charts run through the detectors") {
  // Mercator-type chart written directly on the light-cone source; it is
  // minimal-Willmore with ratio -1 and exercises the complement normal path.
  Config cfg = Config::parse_text(
      "source = \"lightcone\"\n"
      "components = [sinh((u-v)/2)/cosh((u-v)/2)*cos((u+v)/2), "
      "sinh((u-v)/2)/cosh((u-v)/2)*sin((u+v)/2), 1/cosh((u-v)/2), "
      "cos((u+v)/2), sin((u+v)/2)]\n"
      "domain = [-0.9, 0.9, -0.9, 0.9]\n");
  SurfaceChart lox = chart_from_config(cfg);
  ChartValidation val = validate_chart(lox);
  CHECK(val.flipped);
  IsothermicReport iso = isothermic_test(lox, full_grid(lox, 6, 6));
  CHECK(iso.sign == -1);
  for (double r : iso.ratio) CHECK(near_abs(r, -1.0, 1e-10));
  SWillmoreReport sw = swillmore_test(lox, full_grid(lox, 6, 6));
  CHECK(sw.swillmore);
  CHECK(sw.willmore_sup <= 1e-10);
}
