// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
/**
 * @file detect.hpp
 * @brief Surface-class detectors: Willmore residual, S-Willmore parallelism,
 * isothermic separability, adapted null coordinates, and the Willmore energy.
 *
 * All norms on normal-bundle vectors use the positive-definite metric of the
 * normal bundle; for surfaces in three-dimensional space forms that bundle is
 * spanned by the unit vector E of the frame, so the norm of w is |<w, E>|.
 *
 * Umbilic handling: points where a Hopf scalar k_i falls below
 * kUmbilicRel times its grid supremum are skipped and counted; detectors
 * error out when no usable points remain.
 */
#pragma once

#include <utility>
#include <vector>

#include "lcsurf/chart.hpp"
#include "lcsurf/frame.hpp"

namespace lcs {

/// Classification threshold shared by the detectors.
inline constexpr double kTolDetect = 1e-6;
/// Relative cutoff below which a Hopf scalar counts as umbilic.
inline constexpr double kUmbilicRel = 1e-9;
/// Absolute umbilic floor: an identically vanishing Hopf scalar is computed
/// as roundoff noise (~1e-16), which would pass any purely relative cutoff
/// scaled by its own supremum.  Scalars below this floor count as umbilic.
inline constexpr double kUmbilicAbs = 1e-12;

/// Residual pair of the Willmore equation at one point:
/// (||D_v D_v kappa1 + (s2/2) kappa1||, ||D_u D_u kappa2 + (s1/2) kappa2||).
/// Both vanish exactly on Willmore surfaces.
std::pair<double, double> willmore_residual(const SurfaceChart& chart, double u,
                                            double v, int order = kDefaultOrder);

/// Same residual pair evaluated from an existing frame.
std::pair<double, double> willmore_residual_frame(const ConformalFrame& fr);

/// S-Willmore test: fits mu_i with D_v kappa1 + mu1 kappa1 = 0 (least squares;
/// mu1 = -k_{1,v}/k1 in the rank-one normal bundle) and reports the sup of the
/// normalized parallelism defect together with the Willmore residual.
struct SWillmoreReport {
  std::vector<double> mu1;  ///< row-major nu x nv; NaN where umbilic-skipped
  std::vector<double> mu2;
  double parallelism_residual = 0.0;  ///< sup over usable points
  double willmore_sup = 0.0;
  bool swillmore = false;  ///< parallel and Willmore residuals below tol
  int skipped = 0;         ///< grid points excluded as umbilic
};
SWillmoreReport swillmore_test(const SurfaceChart& chart, const GridSpec& grid,
                               double tol = kTolDetect);

/// Isothermic test: pointwise best ratio r with kappa1 ~ r kappa2, the
/// normalized parallel defect, and the separability defect
/// sup |d^2/(du dv) log |r|| computed on jets.  sign is +1/-1 when both
/// defects are below tol and r has one sign on the usable grid, else 0.
struct IsothermicReport {
  std::vector<double> ratio;  ///< row-major nu x nv; NaN where umbilic-skipped
  double parallel_residual = 0.0;
  double separability_residual = 0.0;
  int sign = 0;
  int skipped = 0;
};
IsothermicReport isothermic_test(const SurfaceChart& chart, const GridSpec& grid,
                                 double tol = kTolDetect);

/// Common sign of a sampled ratio field (NaN entries skipped): +1, -1, or 0
/// when both signs occur.
int ratio_sign_scan(const std::vector<double>& ratio);

/// Separability defect |d^2/(du dv) log |r|| of a ratio jet (order >= 2,
/// value bounded away from zero).  Vanishes iff r factors as
/// sigma1(u) * sigma2(v) to second order.
double separability_defect(const Jet2& ratio_jet);

/// Adapted-coordinate construction for an isothermic chart with separable
/// ratio r(u,v) = sigma1(u)/sigma2(v): tabulates f(u), g(v) with
/// f' = |sigma1|^{1/2}, g' = |sigma2|^{1/2} (f' g' > 0), under which the
/// Hopf ratio becomes sign(r).  ratio_residual is the sup over check points
/// of |(g'/f')^2 r - sign(r)|; construction fails if it exceeds tol.
/// Throws "mixed isothermic type" when r changes sign inside the domain.
struct AdaptedCoordinates {
  std::vector<double> u, f;  ///< f(u_i), anchored f(u_0) = 0
  std::vector<double> v, g;  ///< g(v_j), anchored g(v_0) = 0
  double ratio_residual = 0.0;
  int sign = 0;
};
AdaptedCoordinates adapt_coordinates(const SurfaceChart& chart,
                                     const GridSpec& grid,
                                     double tol = kTolDetect);

/// Willmore energy 2 int <kappa1,kappa2> du dv over the grid rectangle by
/// composite Simpson quadrature (interval counts rounded up to even).
double willmore_energy(const SurfaceChart& chart, const GridSpec& grid);

/// Aggregate report driving the `detect` command.  Sub-detector errors
/// (e.g. an identically umbilic chart) are captured in the *_error strings
/// instead of propagating.
struct DetectorReport {
  double willmore_sup = 0.0;
  double willmore_mean = 0.0;
  bool willmore = false;
  SWillmoreReport swillmore;
  std::string swillmore_error;
  IsothermicReport isothermic;
  std::string isothermic_error;
  double energy_W = 0.0;
};
DetectorReport detect_all(const SurfaceChart& chart, const GridSpec& grid,
                          double tol = kTolDetect);

}  // namespace lcs
