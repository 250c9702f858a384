// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#pragma once

/**
 * @file chart.hpp
 * @brief Surface charts in null coordinates: the built-in catalog, config
 * parsing, asymptotic validation (with automatic v-flip), light-cone lifts,
 * and space-form fundamental forms, all evaluated in jet arithmetic.
 */

#include <array>
#include <map>
#include <string>
#include <vector>

#include "lcsurf/config.hpp"
#include "lcsurf/expr.hpp"
#include "lcsurf/jet.hpp"
#include "lcsurf/jetvec.hpp"
#include "lcsurf/pseudo.hpp"

namespace lcs {

/// Geometry the chart components live in. Space-form charts give points of
/// R^3_1 (3 components), S^3_1 or H^3_1 (4 components, unit constraint);
/// LightCone charts give 5-component null vectors of R^{3,2} directly.
enum class SpaceForm { R31, S31, H31, LightCone };

std::string to_string(SpaceForm form);

/// Signature of the linear space the chart's components live in.
const Signature& ambient_signature(SpaceForm form);

/// Number of components a chart of the given form must supply.
int component_count(SpaceForm form);

/// Relative tolerance for the null-direction (asymptotic) residuals.
inline constexpr double kEpsAsymptotic = 1e-9;
/// Absolute tolerance for the S31/H31 unit-containment constraint.
inline constexpr double kEpsContainment = 1e-10;
/// Threshold below which the conformal factor counts as degenerate.
inline constexpr double kEpsConformal = 1e-10;
/// Relative band within which normal-pivot candidates tie (highest index wins).
inline constexpr double kEpsNormalPivot = 1e-6;

/// A rectangle [u0,u1]x[v0,v1] sampled by nu x nv strictly interior points:
/// u_i = u0 + (i+1)(u1-u0)/(nu+1).
struct GridSpec {
  int nu = 0;
  int nv = 0;
  double u0 = 0.0, u1 = 0.0, v0 = 0.0, v1 = 0.0;

  double u_at(int i) const { return u0 + (i + 1) * (u1 - u0) / (nu + 1); }
  double v_at(int j) const { return v0 + (j + 1) * (v1 - v0) / (nv + 1); }
};

/**
 * @brief A parametrized timelike surface patch in null coordinates (u, v).
 *
 * Components are closed-form expressions in u, v and named parameters. If
 * validation found the chart oriented with <x_u, x_v> < 0, the v axis is
 * reflected: `v_flipped` is set, the stored v-interval is the reflected one,
 * and all evaluation happens at (u, -v) under the hood.
 */
struct SurfaceChart {
  std::string name;
  SpaceForm form = SpaceForm::R31;
  std::vector<Expr> components;
  std::array<double, 4> domain{};  // {u0, u1, v0, v1}, working coordinates
  std::map<std::string, double> params;
  bool v_flipped = false;
  Expr remap_u;  // optional precomposition u -> f(u); empty means identity
  Expr remap_v;  // optional precomposition v -> g(v); empty means identity

  /// Component jets at working coordinates (u, v), truncated at `order`.
  JetVec eval(double u, double v, int order) const;

  bool contains(double u, double v) const;
};

/// Result of the asymptotic validation sweep.
struct ChartValidation {
  bool flipped = false;          // v-flip applied during this validation
  double max_null_u = 0.0;       // sup |<x_u,x_u>| / (1 + |<x_u,x_v>|)
  double max_null_v = 0.0;       // sup |<x_v,x_v>| / (1 + |<x_u,x_v>|)
  double max_containment = 0.0;  // sup ||<x,x>| - 1| (S31/H31 only)
  double min_conf = 0.0;         // inf <x_u,x_v> after any flip
  double max_conf = 0.0;         // sup <x_u,x_v> after any flip
};

/// Build a chart from a config (keys: name, source, components, domain,
/// params.*). Component count must match the source space form.
SurfaceChart chart_from_config(const Config& config);

/// Names of the built-in catalog entries.
std::vector<std::string> catalog_names();

/// Built-in chart by name; `params` entries override catalog defaults.
SurfaceChart chart_from_catalog(const std::string& name,
                                const std::map<std::string, double>& params = {});

/**
 * @brief Sweep an interior grid checking that both coordinate directions are
 * null and that S31/H31 charts satisfy the unit constraint.
 *
 * If <x_u,x_v> < 0 throughout, the chart is v-flipped in place and
 * re-checked. Throws on residuals out of tolerance and on a degenerate or
 * sign-changing conformal factor.
 */
ChartValidation validate_chart(SurfaceChart& chart, int nu = 12, int nv = 12);

/// chart_from_config followed by validate_chart.
SurfaceChart load_chart(const Config& config);

/// Precompose a chart with u -> f(u), v -> g(v) given as expression sources,
/// restricting to `domain` in the new coordinates. The maps must carry the
/// new domain into the old one; the caller re-validates the result.
SurfaceChart reparametrize(const SurfaceChart& chart, const std::string& f_src,
                           const std::string& g_src,
                           const std::array<double, 4>& domain);

/// Null lift of the chart point into R^{3,2} as jets:
/// R31: ((-1+<x,x>)/2, x, (1+<x,x>)/2); S31: (x, 1); H31: (1, x);
/// LightCone charts pass through unchanged.
JetVec lift_to_lightcone(const SurfaceChart& chart, double u, double v, int order);

/// Lift an ambient space-form vector w attached at chart point x (e.g. the
/// unit normal) into R^{3,2}: R31: (<x,w>, w, <x,w>); S31: (w, 0); H31: (0, w).
JetVec lift_spaceform_vector(SpaceForm form, const JetVec& x, const JetVec& w);

/**
 * @brief Unit spacelike normal of a space-form chart from its position and
 * tangent jets.
 *
 * Deterministic orientation: reject each ambient basis vector from the
 * tangent span (together with the position for S31/H31), pivot on the largest
 * |<res,res>| (ties within kEpsNormalPivot resolved toward the highest
 * index), and normalize the pivot rejection keeping its sign.
 */
JetVec spaceform_normal(SpaceForm form, const JetVec& x, const JetVec& xu,
                        const JetVec& xv);

/// First/second fundamental data of a space-form chart in null coordinates.
struct FundamentalForms {
  Jet2 conf;       ///< e^{2 omega} = 2 <x_u, x_v>
  Jet2 omega;      ///< conformal exponent, log(conf)/2
  JetVec normal;   ///< unit spacelike normal n
  Jet2 Omega1;     ///< <x_uu, n>
  Jet2 Omega2;     ///< <x_vv, n>
  Jet2 H;          ///< mean curvature 2 <x_uv, n> e^{-2 omega}
};

/// Fundamental forms at (u, v); requires a space-form chart (not LightCone)
/// and a non-degenerate conformal factor.
FundamentalForms fundamental_forms(const SurfaceChart& chart, double u,
                                   double v, int order);

}  // namespace lcs
