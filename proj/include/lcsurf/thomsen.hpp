// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#pragma once

/**
 * @file thomsen.hpp
 * @brief Thomsen's construction: from an isothermic Willmore chart to a
 * timelike minimal surface in a three-dimensional space form.
 *
 * Pipeline. For a timelike isothermic Willmore chart, the dual envelope
 * fields a = -k1_v/k1, b = -k2_u/k2 (xi = 0) close the Blaschke-pair system
 * with rho1 = rho2 =: rho, and the combination
 *
 *     Y0 = Yhat - rho Y
 *
 * is constant across the surface (rho itself obeys rho_u = 2 b rho,
 * rho_v = 2 a rho).  A pseudo-orthogonal transform of the ambient R^{3,2}
 * moves Y0 to a standard position determined by its causal type; reading the
 * transformed lift in the affine chart of the matching space form exhibits
 * the original surface conformally as a timelike *minimal* surface in
 *
 *     R^{2,1}  when Y0 is null       (Y0 -> the point at infinity),
 *     S^3_1    when Y0 is timelike   (Y0 -> (0,0,0,0,1)),
 *     H^3_1    when Y0 is spacelike  (Y0 -> (1,0,0,0,0)).
 *
 * The recovered surface is tabulated on the grid and its mean curvature is
 * verified by order-4 finite differences on the tabulated values -- a check
 * deliberately independent of the jet machinery that produced them.
 *
 * Degenerate input: a chart with kappa = 0 identically is already contained
 * in some S^2_1 (hence minimal in some S^3_1); the pipeline reports that and
 * stops without constructing a pair.
 */

#include <limits>
#include <string>
#include <vector>

#include "lcsurf/chart.hpp"
#include "lcsurf/envelope.hpp"
#include "lcsurf/pseudo.hpp"

namespace lcs {

/// Precondition / branch-consistency tolerance of the pipeline.
inline constexpr double kTolThomsen = 1e-6;
/// Relative cutoff below which a space-form scaling denominator counts as a
/// chart boundary (the affine reading of that grid node does not exist).
inline constexpr double kEpsScaleBoundary = 1e-8;

/**
 * @brief Grid-sampled immersion into one space form, with the conformal
 * factor and mean curvature tabulated by order-4 finite differences.
 *
 * Layout is row-major (i * nv + j) over the grid nodes.  Nodes whose scaling
 * denominator vanished are excluded (`valid` = 0, empty `x`); derived fields
 * are NaN wherever their finite-difference stencil touches an excluded or
 * out-of-range node.
 */
struct SpaceformGrid {
  SpaceForm branch = SpaceForm::R31;  ///< R31, S31 or H31 (never LightCone)
  GridSpec grid;
  Signature metric;             ///< (2,1), (3,1) or (2,2) to match `branch`
  std::vector<Vec> x;           ///< immersion samples; empty when excluded
  std::vector<char> valid;      ///< 1 = node retained
  std::vector<double> residual; ///< space-form constraint residual per node
  std::vector<double> conf;     ///< e^{2 omega} = 2 <x_u, x_v>
  std::vector<double> omega;    ///< log(conf)/2; NaN where conf <= 0
  std::vector<double> H;        ///< mean curvature 2 <x_uv, n> e^{-2 omega}
  double residual_sup = 0.0;    ///< sup of `residual` over retained nodes
  double h_sup = std::numeric_limits<double>::quiet_NaN();  ///< sup |H|
  int excluded = 0;             ///< count of chart-boundary nodes
  int nonpositive_conf = 0;     ///< stencil nodes where 2 <x_u,x_v> <= 0

  const Vec& at(int i, int j) const;
  double h_at(int i, int j) const;
};

/**
 * @brief Read a grid of ambient null-lift values in the affine chart of one
 * space form.
 *
 * `yvals` holds one ambient R^{3,2} value per grid node (row-major).  Each is
 * scaled so the branch denominator equals 1 -- (last - first) for R31, the
 * last component for S31, the first for H31 -- and the space-form coordinates
 * are the middle 3, first 4, resp. last 4 components of the scaled vector.
 * Per-node consistency residual: |<x,x> - (first + last)| for R31 (the scaled
 * vector must reassemble the paraboloid lift), |<x,x> - 1| for S31,
 * |<x,x> + 1| for H31.
 *
 * Nodes with |denominator| <= kEpsScaleBoundary * max(1, |y|) are excluded as
 * chart boundaries.  The conformal factor and mean curvature are tabulated by
 * order-4 central finite differences on the retained samples.
 *
 * Errors: size mismatch between `yvals` and the grid; `branch` = LightCone;
 * a retained node whose consistency residual exceeds kTolThomsen ("branch
 * mismatch").
 */
SpaceformGrid recover_spaceform_chart(const std::vector<Vec>& yvals,
                                      const GridSpec& grid, SpaceForm branch);

/// How far the pipeline ran.
enum class ThomsenStage {
  Complete,            ///< minimal surface recovered and verified
  TotallyUmbilic,      ///< kappa = 0: contained in some S^2_1; stopped early
  PreconditionFailed,  ///< not isothermic / not Willmore on this grid
};

const char* to_string(ThomsenStage stage);

/**
 * @brief Full output of the construction.
 *
 * Fields below `pair` are meaningful only when `stage` == Complete; the gate
 * diagnostics (`iso_sign`, `separability`, `willmore_sup`) are filled as far
 * as the pipeline ran, and `note` explains any early stop.
 */
struct ThomsenResult {
  ThomsenStage stage = ThomsenStage::Complete;
  std::string note;     ///< early-stop explanation (empty when Complete)
  std::string warning;  ///< e.g. (-)-isothermic input accepted best-effort

  int iso_sign = 0;            ///< +1 / -1 isothermic type of the input
  double separability = std::numeric_limits<double>::quiet_NaN();
  double willmore_sup = std::numeric_limits<double>::quiet_NaN();

  PairData pair;  ///< the dual envelope pair (fields a, b; xi = 0)

  std::vector<double> rho;  ///< row-major rho values over the grid
  /// sup |rho1 - rho2|: the two expansion scales must agree.
  double rho_consistency = std::numeric_limits<double>::quiet_NaN();
  /// sup max(|rho_u - 2 b rho|, |rho_v - 2 a rho|): transport of the scale.
  double rho_propagation = std::numeric_limits<double>::quiet_NaN();

  /// Constant-point representative, scaled so its largest component is +1.
  Vec y0;
  /// sup over nodes of the sine of the angle to the common direction.
  double y0_spread = std::numeric_limits<double>::quiet_NaN();
  Causal causal = Causal::Null;        ///< causal type of Y0
  SpaceForm branch = SpaceForm::R31;   ///< target space form
  Mat transform;                       ///< O(3,2) normalizer for Y0
  double transform_defect = std::numeric_limits<double>::quiet_NaN();

  SpaceformGrid recovered;
  double h_residual = std::numeric_limits<double>::quiet_NaN();  ///< sup |H|
};

/**
 * @brief Run the construction on a chart over the given grid.
 *
 * Gates, in order: a totally umbilic chart stops with stage TotallyUmbilic;
 * a non-isothermic chart (separability > kTolThomsen, or mixed ratio signs)
 * stops with "precondition failed: isothermic ..."; a chart whose Willmore
 * residual exceeds kTolThomsen stops with "precondition failed: willmore ...".
 * A (-)-isothermic chart passes with a warning.  Needs a grid of at least
 * 5x5 for the finite-difference verification.
 *
 * Errors: umbilic points inside a non-umbilic grid (from the dual pair);
 * per-node Y0 causal types that disagree ("inconsistent fixed point");
 * "branch mismatch" from the recovery step.
 */
ThomsenResult thomsen_pipeline(const SurfaceChart& chart, const GridSpec& grid,
                               int order = kDefaultOrder);

}  // namespace lcs
