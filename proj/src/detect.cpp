// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.

#include "lcsurf/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lcsurf/error.hpp"

namespace lcs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Positive-definite norm of a normal-bundle vector (rank one: |<w,E>|).
double normal_norm(const ConformalFrame& fr, const JetVec& w) {
  return std::abs(jv_inner(kSigAmbient, w, fr.E).value());
}

/// Frames cached over a grid together with the Hopf-scalar suprema used for
/// the relative umbilic cutoff.
struct FrameGrid {
  std::vector<ConformalFrame> frames;  // row-major i * nv + j
  double scale1 = 0.0;
  double scale2 = 0.0;

  bool usable1(std::size_t idx) const {
    return std::abs(frames[idx].k1.value()) >
           std::max(kUmbilicRel * scale1, kUmbilicAbs);
  }
  bool usable2(std::size_t idx) const {
    return std::abs(frames[idx].k2.value()) >
           std::max(kUmbilicRel * scale2, kUmbilicAbs);
  }
};

FrameGrid eval_grid(const SurfaceChart& chart, const GridSpec& grid) {
  FrameGrid fg;
  fg.frames.reserve(static_cast<std::size_t>(grid.nu) * grid.nv);
  for (int i = 0; i < grid.nu; ++i) {
    for (int j = 0; j < grid.nv; ++j) {
      fg.frames.push_back(frame_at(chart, grid.u_at(i), grid.v_at(j)));
      const ConformalFrame& fr = fg.frames.back();
      fg.scale1 = std::max(fg.scale1, std::abs(fr.k1.value()));
      fg.scale2 = std::max(fg.scale2, std::abs(fr.k2.value()));
    }
  }
  return fg;
}

}  // namespace

std::pair<double, double> willmore_residual_frame(const ConformalFrame& fr) {
  JetVec dv1 = normal_deriv(fr, fr.kappa1, /*along_u=*/false);
  JetVec dvv1 = normal_deriv(fr, dv1, /*along_u=*/false);
  JetVec res_u = jv_add(dvv1, jv_scale(fr.kappa1, fr.s2 * 0.5));
  JetVec du2 = normal_deriv(fr, fr.kappa2, /*along_u=*/true);
  JetVec duu2 = normal_deriv(fr, du2, /*along_u=*/true);
  JetVec res_v = jv_add(duu2, jv_scale(fr.kappa2, fr.s1 * 0.5));
  return {normal_norm(fr, res_u), normal_norm(fr, res_v)};
}

std::pair<double, double> willmore_residual(const SurfaceChart& chart, double u,
                                            double v, int order) {
  return willmore_residual_frame(frame_at(chart, u, v, order));
}

SWillmoreReport swillmore_test(const SurfaceChart& chart, const GridSpec& grid,
                               double tol) {
  FrameGrid fg = eval_grid(chart, grid);
  SWillmoreReport rep;
  rep.mu1.assign(fg.frames.size(), kNaN);
  rep.mu2.assign(fg.frames.size(), kNaN);
  int usable = 0;
  for (std::size_t idx = 0; idx < fg.frames.size(); ++idx) {
    if (!fg.usable1(idx) || !fg.usable2(idx)) {
      ++rep.skipped;
      continue;
    }
    ++usable;
    const ConformalFrame& fr = fg.frames[idx];
    // Least-squares fit of D_v kappa1 = -mu1 kappa1 in the rank-one normal
    // bundle reduces to mu1 = -k_{1,v}/k1 (and symmetrically for mu2).
    const double mu1 = -fr.k1.partial(0, 1) / fr.k1.value();
    const double mu2 = -fr.k2.partial(1, 0) / fr.k2.value();
    rep.mu1[idx] = mu1;
    rep.mu2[idx] = mu2;
    JetVec d1 = jv_add(normal_deriv(fr, fr.kappa1, false),
                       jv_scale(fr.kappa1, mu1));
    JetVec d2 = jv_add(normal_deriv(fr, fr.kappa2, true),
                       jv_scale(fr.kappa2, mu2));
    rep.parallelism_residual =
        std::max({rep.parallelism_residual,
                  normal_norm(fr, d1) / std::abs(fr.k1.value()),
                  normal_norm(fr, d2) / std::abs(fr.k2.value())});
    auto wr = willmore_residual_frame(fr);
    rep.willmore_sup = std::max({rep.willmore_sup, wr.first, wr.second});
  }
  if (usable == 0)
    throw Error("identically umbilic: no usable grid points for the "
                "S-Willmore test");
  rep.swillmore = rep.parallelism_residual < tol && rep.willmore_sup < tol;
  return rep;
}

IsothermicReport isothermic_test(const SurfaceChart& chart,
                                 const GridSpec& grid, double tol) {
  FrameGrid fg = eval_grid(chart, grid);
  IsothermicReport rep;
  rep.ratio.assign(fg.frames.size(), kNaN);
  int usable = 0;
  for (std::size_t idx = 0; idx < fg.frames.size(); ++idx) {
    if (!fg.usable1(idx) || !fg.usable2(idx)) {
      ++rep.skipped;
      continue;
    }
    const ConformalFrame& fr = fg.frames[idx];
    Jet2 r = fr.k1 / fr.k2;
    if (std::abs(r.value()) <= kEpsJet) {  // guard log |r| below
      ++rep.skipped;
      continue;
    }
    ++usable;
    rep.ratio[idx] = r.value();
    JetVec diff = jv_sub(fr.kappa1, jv_scale(fr.kappa2, r.value()));
    rep.parallel_residual =
        std::max(rep.parallel_residual,
                 normal_norm(fr, diff) / std::abs(fr.k1.value()));
    rep.separability_residual =
        std::max(rep.separability_residual, separability_defect(r));
  }
  if (usable == 0)
    throw Error("identically umbilic: no usable grid points for the "
                "isothermic test");
  if (rep.parallel_residual < tol && rep.separability_residual < tol)
    rep.sign = ratio_sign_scan(rep.ratio);
  return rep;
}

double separability_defect(const Jet2& ratio_jet) {
  return std::abs(log(abs_jet(ratio_jet)).partial(1, 1));
}

int ratio_sign_scan(const std::vector<double>& ratio) {
  bool pos = false, neg = false;
  for (double r : ratio) {
    if (std::isnan(r)) continue;
    if (r > 0.0) pos = true;
    if (r < 0.0) neg = true;
  }
  if (pos && neg) return 0;
  return pos ? 1 : (neg ? -1 : 0);
}

AdaptedCoordinates adapt_coordinates(const SurfaceChart& chart,
                                     const GridSpec& grid, double tol) {
  IsothermicReport iso = isothermic_test(chart, grid, tol);
  if (iso.parallel_residual >= tol || iso.separability_residual >= tol) {
    std::ostringstream os;
    os << "chart is not isothermic within tolerance (parallel residual "
       << iso.parallel_residual << ", separability residual "
       << iso.separability_residual << ", tol " << tol << ")";
    throw Error(os.str());
  }
  const int sign = ratio_sign_scan(iso.ratio);
  if (sign == 0)
    throw Error("mixed isothermic type: the Hopf ratio changes sign inside "
                "the domain");

  AdaptedCoordinates out;
  out.sign = sign;
  const double u0 = grid.u_at(grid.nu / 2);
  const double v0 = grid.v_at(grid.nv / 2);
  auto rat = [&](double u, double v) {
    ConformalFrame fr = frame_at(chart, u, v);
    if (std::abs(fr.k2.value()) <= kEpsJet || std::abs(fr.k1.value()) <= kEpsJet) {
      std::ostringstream os;
      os << "umbilic point on the adaptation section at (u,v)=(" << u << ", "
         << v << ")";
      throw Error(os.str());
    }
    return fr.k1.value() / fr.k2.value();
  };
  const double r00 = rat(u0, v0);

  // Section samples sigma1(u) = r(u, v0) and sigma2(v) = r(u0,v0)/r(u0,v).
  out.u.resize(grid.nu);
  out.v.resize(grid.nv);
  std::vector<double> s1(grid.nu), s2(grid.nv);
  for (int i = 0; i < grid.nu; ++i) {
    out.u[i] = grid.u_at(i);
    s1[i] = rat(out.u[i], v0);
  }
  for (int j = 0; j < grid.nv; ++j) {
    out.v[j] = grid.v_at(j);
    s2[j] = r00 / rat(u0, out.v[j]);
  }

  // Tabulate f and g with f' = |sigma1|^{1/2}, g' = |sigma2|^{1/2} by
  // per-interval Simpson quadrature (midpoints evaluated on the section).
  out.f.assign(grid.nu, 0.0);
  for (int i = 0; i + 1 < grid.nu; ++i) {
    const double a = out.u[i], b = out.u[i + 1];
    const double wa = std::sqrt(std::abs(s1[i]));
    const double wm = std::sqrt(std::abs(rat(0.5 * (a + b), v0)));
    const double wb = std::sqrt(std::abs(s1[i + 1]));
    out.f[i + 1] = out.f[i] + (b - a) / 6.0 * (wa + 4.0 * wm + wb);
  }
  out.g.assign(grid.nv, 0.0);
  for (int j = 0; j + 1 < grid.nv; ++j) {
    const double a = out.v[j], b = out.v[j + 1];
    const double wa = std::sqrt(std::abs(s2[j]));
    const double wm = std::sqrt(std::abs(r00 / rat(u0, 0.5 * (a + b))));
    const double wb = std::sqrt(std::abs(s2[j + 1]));
    out.g[j + 1] = out.g[j] + (b - a) / 6.0 * (wa + 4.0 * wm + wb);
  }

  // Check points: the new ratio (g'/f')^2 r must collapse to sign(r).
  for (int i : {0, grid.nu / 2, grid.nu - 1}) {
    for (int j : {0, grid.nv / 2, grid.nv - 1}) {
      const double r = iso.ratio[static_cast<std::size_t>(i) * grid.nv + j];
      if (std::isnan(r)) continue;
      const double rt = (std::abs(s2[j]) / std::abs(s1[i])) * r;
      out.ratio_residual =
          std::max(out.ratio_residual, std::abs(rt - static_cast<double>(sign)));
    }
  }
  if (out.ratio_residual >= tol) {
    std::ostringstream os;
    os << "adapted-coordinate verification failed: ratio residual "
       << out.ratio_residual << " exceeds tol " << tol;
    throw Error(os.str());
  }
  return out;
}

double willmore_energy(const SurfaceChart& chart, const GridSpec& grid) {
  const int nu = grid.nu + (grid.nu % 2);  // even interval counts for Simpson
  const int nv = grid.nv + (grid.nv % 2);
  const double hu = (grid.u1 - grid.u0) / nu;
  const double hv = (grid.v1 - grid.v0) / nv;
  auto weight = [](int k, int n) {
    if (k == 0 || k == n) return 1.0;
    return (k % 2 == 1) ? 4.0 : 2.0;
  };
  double acc = 0.0;
  for (int k = 0; k <= nu; ++k) {
    for (int l = 0; l <= nv; ++l) {
      ConformalFrame fr =
          frame_at(chart, grid.u0 + k * hu, grid.v0 + l * hv);
      const double w =
          2.0 * jv_inner(kSigAmbient, fr.kappa1, fr.kappa2).value();
      acc += weight(k, nu) * weight(l, nv) * w;
    }
  }
  return acc * hu * hv / 9.0;
}

DetectorReport detect_all(const SurfaceChart& chart, const GridSpec& grid,
                          double tol) {
  DetectorReport rep;
  double sum = 0.0;
  for (int i = 0; i < grid.nu; ++i) {
    for (int j = 0; j < grid.nv; ++j) {
      auto wr = willmore_residual(chart, grid.u_at(i), grid.v_at(j));
      const double m = std::max(wr.first, wr.second);
      rep.willmore_sup = std::max(rep.willmore_sup, m);
      sum += m;
    }
  }
  rep.willmore_mean = sum / (static_cast<double>(grid.nu) * grid.nv);
  rep.willmore = rep.willmore_sup < tol;
  try {
    rep.swillmore = swillmore_test(chart, grid, tol);
  } catch (const Error& e) {
    rep.swillmore_error = e.what();
  }
  try {
    rep.isothermic = isothermic_test(chart, grid, tol);
  } catch (const Error& e) {
    rep.isothermic_error = e.what();
  }
  rep.energy_W = willmore_energy(chart, grid);
  return rep;
}

}  // namespace lcs
