// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
/**
 * @file acceptance.cpp
 * @brief End-to-end acceptance gate: thirteen fixed criteria, one PASS/FAIL
 * line each, exit code = number of failures.
 *
 * The criteria pin the library against closed-form anchors (cylinder and
 * null-sum invariants), identity sweeps (frame, structure, integrability),
 * the three envelope constructions, both branches of the minimal-surface
 * recovery, an independent finite-difference jet oracle, reparametrization
 * covariance of the Hopf invariants, and byte-determinism of the CLI
 * reports.  Thresholds are fixed here and never read from the environment.
 */
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fd_oracle.hpp"
#include "lcsurf/chart.hpp"
#include "lcsurf/cli.hpp"
#include "lcsurf/detect.hpp"
#include "lcsurf/envelope.hpp"
#include "lcsurf/frame.hpp"
#include "lcsurf/thomsen.hpp"

using namespace lcs;

namespace {

/// When true, criterion 12 asserts the f'^{-5/2} variant of the Hopf scaling
/// law instead of the derived f'^{+3/2} one.  The variant contradicts the
/// scaling of the canonical lift (the lift rescales by (f'g')^{-1/2} while
/// Y_uu picks up f'^2, leaving kappa1 multiplied by f'^{3/2} g'^{-1/2}) and
/// misses by O(1) on the cylinder; flipping the flag makes that visible as a
/// red criterion.  The measured exponents are printed either way.
constexpr bool kUseAlternateReparamExponents = false;

int failures = 0;

void report(int num, bool pass, const std::string& text) {
  std::cout << (pass ? "PASS" : "FAIL") << "  " << num << ". " << text << "\n";
  if (!pass) ++failures;
}

std::string sci(double x) {
  char b[40];
  std::snprintf(b, sizeof b, "%.2e", x);
  return b;
}

SurfaceChart catalog(const std::string& name) {
  SurfaceChart ch = chart_from_catalog(name);
  validate_chart(ch);
  return ch;
}

GridSpec make_grid(int nu, int nv, const std::array<double, 4>& r) {
  GridSpec g;
  g.nu = nu;
  g.nv = nv;
  g.u0 = r[0];
  g.u1 = r[1];
  g.v0 = r[2];
  g.v1 = r[3];
  return g;
}

/// Run one criterion, turning exceptions into a FAIL line.
void criterion(int num, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(num, false, std::string("exception: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// 1-3. Identity sweeps over every catalog chart on 20x20 interior grids.
// ---------------------------------------------------------------------------

struct SweepSups {
  double frame = 0.0, structure = 0.0, integrability = 0.0;
};

SweepSups sweep_chart(const SurfaceChart& chart) {
  SweepSups s;
  GridSpec g = make_grid(20, 20, chart.domain);
  for (int i = 0; i < g.nu; ++i) {
    for (int j = 0; j < g.nv; ++j) {
      ConformalFrame fr = frame_at(chart, g.u_at(i), g.v_at(j), 6);
      s.frame = std::max(s.frame, frame_residuals(fr).max());
      s.structure = std::max(s.structure, structure_residuals(fr).max());
      s.integrability =
          std::max(s.integrability, integrability_residuals(fr).max());
    }
  }
  return s;
}

void criteria_1_to_3() {
  double frame = 0.0, structure = 0.0, integ = 0.0;
  std::string at_frame, at_structure, at_integ;
  for (const std::string& name : catalog_names()) {
    SurfaceChart ch = catalog(name);
    SweepSups s = sweep_chart(ch);
    if (s.frame > frame) frame = s.frame, at_frame = name;
    if (s.structure > structure) structure = s.structure, at_structure = name;
    if (s.integrability > integ) integ = s.integrability, at_integ = name;
  }
  report(1, frame <= 1e-10,
         "frame normalization relations: sup " + sci(frame) +
             " <= 1e-10 over all catalog charts, 20x20 grids (worst: " +
             at_frame + ")");
  report(2, structure <= 1e-8,
         "structure equations, all seven lines: sup " + sci(structure) +
             " <= 1e-8 over all catalog charts (worst: " + at_structure + ")");
  report(3, integ <= 1e-7,
         "integrability (Gauss/Codazzi/Ricci) at order 6: sup " + sci(integ) +
             " <= 1e-7 over all catalog charts (worst: " + at_integ + ")");
}

// ---------------------------------------------------------------------------
// 4. Cylinder anchors (closed forms of the null-coordinate cylinder).
// ---------------------------------------------------------------------------

void criterion_4() {
  SurfaceChart cyl = catalog("cylinder_r31");
  GridSpec g = make_grid(10, 10, {0.0, 1.0, 0.0, 1.0});
  double ds = 0.0, dk = 0.0, dw = 0.0, dh = 0.0;
  for (int i = 0; i < g.nu; ++i) {
    for (int j = 0; j < g.nv; ++j) {
      const double u = g.u_at(i), v = g.v_at(j);
      ConformalFrame fr = frame_at(cyl, u, v);
      ds = std::max({ds, std::abs(fr.s1.value() - 0.25),
                     std::abs(fr.s2.value() - 0.25)});
      dk = std::max({dk, std::abs(fr.k1.value() + 0.25),
                     std::abs(fr.k2.value() + 0.25)});
      std::pair<double, double> w = willmore_residual_frame(fr);
      dw = std::max({dw, std::abs(w.first - 0.03125),
                     std::abs(w.second - 0.03125)});
      dh = std::max(dh, std::abs(fundamental_forms(cyl, u, v, 6).H.value() + 0.5));
    }
  }
  IsothermicReport iso = isothermic_test(cyl, g);
  const double energy = willmore_energy(cyl, make_grid(20, 20, {0, 1, 0, 1}));
  const double de = std::abs(energy - 0.125);
  const bool pass = ds <= 1e-10 && dk <= 1e-10 && dh <= 1e-10 &&
                    iso.sign == 1 && dw <= 1e-9 && de <= 1e-10;
  report(4, pass,
         "cylinder anchors: |s-1/4| " + sci(ds) + ", |k+1/4| " + sci(dk) +
             ", |H+1/2| " + sci(dh) + ", isothermic sign " +
             (iso.sign > 0 ? "+" : iso.sign < 0 ? "-" : "0") +
             ", |willmore-1/32| " + sci(dw) + ", |energy-1/8| " + sci(de));
}

// ---------------------------------------------------------------------------
// 5. Null-sum minimal chart: Willmore, separable Hopf ratio, k at the origin.
// ---------------------------------------------------------------------------

void criterion_5() {
  SurfaceChart ns = catalog("nullsum_minimal_r31");
  GridSpec g = make_grid(20, 20, ns.domain);  // |u+v| < pi - 0.2 inside
  double wil = 0.0;
  for (int i = 0; i < g.nu; ++i) {
    for (int j = 0; j < g.nv; ++j) {
      std::pair<double, double> w = willmore_residual(ns, g.u_at(i), g.v_at(j));
      wil = std::max({wil, w.first, w.second});
    }
  }
  IsothermicReport iso = isothermic_test(ns, g);
  const double dk =
      std::abs(frame_at(ns, 0.0, 0.0).k1.value() + 1.0 / std::sqrt(2.0));
  const bool pass =
      wil <= 1e-8 && iso.separability_residual <= 1e-6 && dk <= 1e-9;
  report(5, pass,
         "null-sum chart: willmore sup " + sci(wil) + " <= 1e-8, separability " +
             sci(iso.separability_residual) + " <= 1e-6, |k1(0,0)+1/sqrt(2)| " +
             sci(dk) + " <= 1e-9");
}

// ---------------------------------------------------------------------------
// 6-7. Minimal-surface recovery on both closed-form branches.
// ---------------------------------------------------------------------------

void criterion_6() {
  SurfaceChart ch = catalog("clifford_s31");
  ThomsenResult tr =
      thomsen_pipeline(ch, make_grid(41, 41, {-1.2, 1.2, -1.2, 1.2}));
  const bool pass = tr.stage == ThomsenStage::Complete &&
                    tr.causal == Causal::Timelike &&
                    tr.branch == SpaceForm::S31 && tr.h_residual <= 1e-7;
  report(6, pass,
         std::string("clifford torus recovery: causal ") + to_string(tr.causal) +
             ", branch " + to_string(tr.branch) + ", sup|H| " +
             sci(tr.h_residual) + " <= 1e-7");
}

void criterion_7() {
  SurfaceChart ch = catalog("nullsum_minimal_r31");
  ThomsenResult tr =
      thomsen_pipeline(ch, make_grid(41, 41, {-0.6, 0.6, -0.6, 0.6}));
  double rho = 0.0;
  for (double r : tr.rho) rho = std::max(rho, std::abs(r));
  const double target[5] = {1.0, 0.0, 0.0, 0.0, 1.0};
  double dy = 0.0;
  for (int c = 0; c < 5; ++c)
    dy = std::max(dy, std::abs(tr.y0[c] - target[c]));
  const bool pass = tr.stage == ThomsenStage::Complete && rho <= 1e-7 &&
                    dy <= 1e-7 && tr.h_residual <= 1e-7;
  report(7, pass,
         "null-sum recovery: rho sup " + sci(rho) +
             ", |Y0-(1,0,0,0,1)| " + sci(dy) + ", sup|H| " +
             sci(tr.h_residual) + ", all <= 1e-7");
}

// ---------------------------------------------------------------------------
// 8-10. The three envelope constructions.
// ---------------------------------------------------------------------------

void criterion_8() {
  SurfaceChart ch = catalog("clifford_s31");
  PairData pd = build_pair(ch, Expr(), Expr(), Expr(),
                           make_grid(15, 15, {-1.2, 1.2, -1.2, 1.2}));
  PairClassification pc = classify(pd);
  const bool pass = pc.label == PairClass::DualSWillmore &&
                    pc.kappa_ratio <= 1e-8;
  report(8, pass,
         std::string("clifford zero-field pair: label ") + to_string(pc.label) +
             ", hat-kappa ratio defect " + sci(pc.kappa_ratio) + " <= 1e-8");
}

void criterion_9() {
  SurfaceChart cyl = catalog("cylinder_r31");
  DarbouxResult dr = darboux_integrate(cyl, 1.0, {0.0, 0.0, 0.0},
                                       make_grid(50, 50, {0, 1, 0, 1}));
  PairClassification pc = classify(dr.pair);
  const double ident = pc.identities.max();
  const bool pass = dr.compatibility <= 1e-6 &&
                    pc.label == PairClass::IsothermicDarboux && ident <= 1e-6;
  report(9, pass,
         std::string("darboux pair on the cylinder (theta=1): order-swap ") +
             sci(dr.compatibility) + " <= 1e-6, label " + to_string(pc.label) +
             ", transport identities " + sci(ident) + " <= 1e-6");
}

void criterion_10() {
  SurfaceChart cyl = catalog("cylinder_r31");
  PairData pd = trivial_from_point(cyl, Vec{1, 0, 0, 0, 1},
                                   make_grid(20, 20, cyl.domain));
  PairClassification pc = classify(pd);
  const double spread = std::max(pc.direction_spread, pc.fixed_direction);
  const bool pass = pc.label == PairClass::Trivial && pc.theta_sup <= 1e-8 &&
                    spread <= 1e-8;
  report(10, pass,
         std::string("trivial pair through (1,0,0,0,1): label ") +
             to_string(pc.label) + ", theta sup " + sci(pc.theta_sup) +
             " <= 1e-8, fixed-direction defect " + sci(spread) + " <= 1e-8");
}

// ---------------------------------------------------------------------------
// 11. Jet partials against the central finite-difference oracle.
// ---------------------------------------------------------------------------

void criterion_11() {
  double worst = 0.0;
  std::string at;
  for (const std::string& name : catalog_names()) {
    SurfaceChart ch = catalog(name);
    const int ncomp = static_cast<int>(ch.components.size());
    for (int c = 0; c < ncomp; ++c) {
      lcs_test::F2 value = [&ch, c](double u, double v) {
        return ch.eval(u, v, 0)[c].value();
      };
      for (int si = 1; si <= 3; ++si) {
        for (int sj = 1; sj <= 3; ++sj) {
          const double u =
              ch.domain[0] + si * (ch.domain[1] - ch.domain[0]) / 4.0;
          const double v =
              ch.domain[2] + sj * (ch.domain[3] - ch.domain[2]) / 4.0;
          const Jet2 jet = ch.eval(u, v, 5)[c];
          for (int i = 0; i <= 3; ++i) {
            for (int j = 0; j + i <= 3; ++j) {
              const double fd = lcs_test::fd_partial(value, i, j, u, v);
              const double gap = std::abs(jet.partial(i, j) - fd) /
                                 std::max(1.0, std::abs(jet.partial(i, j)));
              if (gap > worst) {
                worst = gap;
                std::ostringstream os;
                os << name << " component " << c << " d(" << i << "," << j
                   << ")";
                at = os.str();
              }
            }
          }
        }
      }
    }
  }
  report(11, worst <= 1e-5,
         "jet partials vs central differences, orders i+j <= 3: worst "
         "relative gap " +
             sci(worst) + " <= 1e-5 (" + at + ")");
}

// ---------------------------------------------------------------------------
// 12. Reparametrization covariance of kappa1 under u = f(u~), v = g(v~).
// ---------------------------------------------------------------------------

void criterion_12() {
  SurfaceChart cyl = catalog("cylinder_r31");
  // f(u) = 2u, g(v) = v + v^3/10 mapped so the image stays in the domain.
  const std::array<double, 4> dom = {-0.2, 0.7, -0.4, 0.8};
  SurfaceChart rep = reparametrize(cyl, "2*u", "v + v^3/10", dom);
  validate_chart(rep);

  const double pf = kUseAlternateReparamExponents ? -2.5 : 1.5;
  const double pg = -0.5;
  GridSpec g = make_grid(8, 8, dom);
  double gap = 0.0;
  std::vector<double> xs, ys;  // log g', log |ratio| at fixed f' = 2
  for (int i = 0; i < g.nu; ++i) {
    for (int j = 0; j < g.nv; ++j) {
      const double ut = g.u_at(i), vt = g.v_at(j);
      const double fp = 2.0, gp = 1.0 + 0.3 * vt * vt;
      ConformalFrame fnew = frame_at(rep, ut, vt);
      ConformalFrame fold = frame_at(cyl, 2.0 * ut, vt + vt * vt * vt / 10.0);
      const double expected =
          std::pow(fp, pf) * std::pow(gp, pg) * fold.k1.value();
      gap = std::max(gap, std::abs(fnew.k1.value() - expected));
      xs.push_back(std::log(gp));
      ys.push_back(std::log(fnew.k1.value() / fold.k1.value()));
    }
  }
  // Least-squares fit log ratio = pf_meas log f' + pg_meas log g' (f' fixed).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t t = 0; t < xs.size(); ++t) {
    sx += xs[t];
    sy += ys[t];
    sxx += xs[t] * xs[t];
    sxy += xs[t] * ys[t];
  }
  const double pg_meas = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double pf_meas = ((sy - pg_meas * sx) / n) / std::log(2.0);

  DetectorReport before = detect_all(cyl, make_grid(10, 10, {0, 1, 0, 1}));
  DetectorReport after = detect_all(rep, make_grid(10, 10, dom));
  const bool unchanged = before.willmore == after.willmore;

  char exps[64];
  std::snprintf(exps, sizeof exps, "%+.6f/%+.6f", pf_meas, pg_meas);
  const bool pass = gap <= 1e-8 && unchanged;
  std::ostringstream os;
  os << "reparametrization covariance (f=2u, g=v+v^3/10): asserted law "
     << "f'^{" << pf << "} g'^{" << pg << "}, sup gap " << sci(gap)
     << " <= 1e-8, measured exponents " << exps
     << ", willmore classification unchanged: " << (unchanged ? "yes" : "no");
  report(12, pass, os.str());
}

// ---------------------------------------------------------------------------
// 13. Byte-determinism of the CLI reports.
// ---------------------------------------------------------------------------

void criterion_13() {
  const std::vector<std::string> verify = {"verify", "cylinder_r31", "--grid",
                                           "12x12"};
  const std::vector<std::string> detect = {"detect", "nullsum_minimal_r31",
                                           "--rect", "-0.6,0.6,-0.6,0.6"};
  CliResult v1 = run_command(verify), v2 = run_command(verify);
  CliResult d1 = run_command(detect), d2 = run_command(detect);
  const bool pass = v1.output == v2.output && v1.code == v2.code &&
                    d1.output == d2.output && d1.code == d2.code &&
                    !v1.output.empty() && !d1.output.empty();
  report(13, pass,
         std::string("determinism: repeated verify and detect runs are "
                     "byte-identical (") +
             std::to_string(v1.output.size()) + " and " +
             std::to_string(d1.output.size()) + " bytes)");
}

}  // namespace

int main() {
  criterion(1, criteria_1_to_3);  // emits lines 1-3
  criterion(4, criterion_4);
  criterion(5, criterion_5);
  criterion(6, criterion_6);
  criterion(7, criterion_7);
  criterion(8, criterion_8);
  criterion(9, criterion_9);
  criterion(10, criterion_10);
  criterion(11, criterion_11);
  criterion(12, criterion_12);
  criterion(13, criterion_13);
  std::cout << "acceptance: " << (13 - failures) << "/13 criteria passed\n";
  return failures;
}
