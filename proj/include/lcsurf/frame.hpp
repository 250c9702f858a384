// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#pragma once

/**
 * @file frame.hpp
 * @brief Canonical light-cone lift and the conformal moving frame: Y, N, the
 * Hopf differentials kappa_i, the Schwarzians s_i, the normal-bundle basis E,
 * plus structure-equation and integrability residuals, all in jet arithmetic.
 *
 * Conventions (ambient R^{3,2}):
 *   Y canonical:  <Y,Y> = <Y_u,Y_u> = <Y_v,Y_v> = 0, <Y_u,Y_v> = 1/2.
 *   N = 2 Y_uv + 2 <Y_uv,Y_uv> Y, so <N,Y> = -1, <N,N> = <N,Y_u> = <N,Y_v> = 0.
 *   s_1 = 2 <Y_uu, N>,  kappa_1 = Y_uu + (s_1/2) Y  (and symmetrically in v).
 *   E: unit spacelike basis of the rank-1 normal bundle V^perp; kappa_i = k_i E.
 *   D_w psi = <d_w psi, E> E (normal projection; flat for rank 1).
 */

#include "lcsurf/chart.hpp"
#include "lcsurf/jetvec.hpp"
#include "lcsurf/pseudo.hpp"

namespace lcs {

/// Jet order required by the residual suites (Codazzi needs four derivatives
/// of Y past the lift, i.e. chart jets of order 6).
inline constexpr int kDefaultOrder = 6;
/// Frame-normalization tolerance.
inline constexpr double kTolFrame = 1e-10;
/// Structure-equation residual tolerance.
inline constexpr double kTolStructure = 1e-8;
/// Integrability (Gauss/Codazzi/Ricci) residual tolerance.
inline constexpr double kTolIntegrability = 1e-7;

struct ConformalFrame {
  JetVec Y;        ///< canonical lift (order m)
  JetVec Yu, Yv;   ///< first derivatives (order m-1)
  JetVec N;        ///< conjugate null vector (order m-2)
  JetVec kappa1;   ///< normal part of Y_uu (order m-2)
  JetVec kappa2;   ///< normal part of Y_vv (order m-2)
  Jet2 s1, s2;     ///< Schwarzians (order m-2)
  JetVec E;        ///< unit spacelike normal-bundle basis vector
  Jet2 k1, k2;     ///< kappa_i = k_i E
  Jet2 lambda;     ///< canonical scale against the chart lift (1 for frame_from_lift)
  bool v_flipped = false;
};

/// Canonical lift Y = lambda L, lambda = (2 <L_u,L_v>)^{-1/2}, as jets of the
/// given order (the chart is evaluated at order+1). Requires the validated
/// orientation <L_u,L_v> > 0; throws "degenerate conformal factor" near zero.
JetVec canonical_lift(const SurfaceChart& chart, double u, double v, int order);

/// Full frame from a chart (E is the lifted space-form normal when the chart
/// lives in a space form, otherwise the pivoted complement of V).
ConformalFrame frame_at(const SurfaceChart& chart, double u, double v,
                        int order = kDefaultOrder);

/// Frame assembled from an externally supplied canonical lift (used for
/// second envelopes); E is the pivoted complement of V = span{Y,Y_u,Y_v,N}.
ConformalFrame frame_from_lift(const JetVec& Y);

/// Component of w orthogonal to V = span{Y, Y_u, Y_v, N} (jet-level).
JetVec normal_project(const ConformalFrame& fr, const JetVec& w);

/// Normal-bundle derivative D psi along u or v: <d psi, E> E.
JetVec normal_deriv(const ConformalFrame& fr, const JetVec& psi, bool along_u);

/// Value-level residuals of the canonical normalization relations.
struct FrameResiduals {
  double max_normalization = 0.0;  ///< the eight <.,.> relations on Y, N
  double max_kappa_ortho = 0.0;    ///< kappa_i against Y, Y_u, Y_v, N
  double max() const;
};
FrameResiduals frame_residuals(const ConformalFrame& fr);

/// Sup-norm residuals of the seven structure-equation lines.
struct StructureResiduals {
  double yuu = 0.0;  ///< Y_uu = -(s1/2) Y + kappa1
  double yvv = 0.0;  ///< Y_vv = -(s2/2) Y + kappa2
  double yuv = 0.0;  ///< Y_uv = -<kappa1,kappa2> Y + N/2
  double nu = 0.0;   ///< N_u = -2<kappa1,kappa2> Y_u - s1 Y_v + 2 D_v kappa1
  double nv = 0.0;   ///< N_v = -s2 Y_u - 2<kappa1,kappa2> Y_v + 2 D_u kappa2
  double eu = 0.0;   ///< E_u = D_u E + 2<E, D_v kappa1> Y - 2<E, kappa1> Y_v
  double ev = 0.0;   ///< E_v = D_v E + 2<E, D_u kappa2> Y - 2<E, kappa2> Y_u
  double max() const;
};
StructureResiduals structure_residuals(const ConformalFrame& fr);

/// Residuals of the integrability conditions at value level.
struct IntegrabilityResiduals {
  double gauss_u = 0.0;  ///< (1/2) s1_v - 3<kappa1, D_u kappa2> - <D_u kappa1, kappa2>
  double gauss_v = 0.0;  ///< (1/2) s2_u - <kappa1, D_v kappa2> - 3<D_v kappa1, kappa2>
  double codazzi = 0.0;  ///< D_vD_v kappa1 + (s2/2) kappa1 - D_uD_u kappa2 - (s1/2) kappa2
  double ricci = 0.0;    ///< R^D_{uv} E - 2<E,kappa1> kappa2 + 2<E,kappa2> kappa1
  double max() const;
};
IntegrabilityResiduals integrability_residuals(const ConformalFrame& fr);

}  // namespace lcs
