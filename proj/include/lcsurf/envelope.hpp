// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#pragma once

/**
 * @file envelope.hpp
 * @brief Blaschke pairs: second envelopes of the central sphere congruence.
 *
 * A candidate pair is described by two scalar fields a, b and a normal field
 * xi = zeta E over a base chart. The hat lift
 *
 *   Yhat = N + 2 a Y_u + 2 b Y_v + (2ab + zeta^2/2) Y + zeta E
 *
 * satisfies <Y,Yhat> = -1 and <Yhat,Yhat> = 0, and its derivatives expand as
 *
 *   Yhat_u = b Yhat + rho1 (Y_u + b Y) + theta1 (Y_v + a Y) + eta1 + <xi,eta1> Y
 *   Yhat_v = a Yhat + rho2 (Y_v + a Y) + theta2 (Y_u + b Y) + eta2 + <xi,eta2> Y
 *
 * with the invariants
 *
 *   rho1   = 2 a_u - 2 <kappa1,kappa2> + <xi,xi>/2     (rho2: b_v in place of a_u)
 *   theta1 = 2 b_u - 2 b^2 - s1 - 2 <xi,kappa1>        (theta2: a_v, a, s2, kappa2)
 *   eta1   = D_u xi - b xi + 2 D_v kappa1 + 2 a kappa1 (eta2: v, a, D_u kappa2, b)
 *
 * eta = 0 makes the pair an envelope of the congruence; the surviving
 * invariants then separate the dual S-Willmore (theta = 0, xi = 0), Darboux
 * (rho = 0) and trivial (theta = 0, xi != 0) cases. In the rank-1 normal
 * bundle all normal fields are measured by their coefficient against E.
 *
 * Fields are functions of the chart's working coordinates (after any
 * validation v-flip), matching the frame returned by frame_at.
 */

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "lcsurf/chart.hpp"
#include "lcsurf/expr.hpp"
#include "lcsurf/frame.hpp"
#include "lcsurf/pseudo.hpp"

namespace lcs {

/// Classification threshold tau on the sup-norms of the pair invariants.
inline constexpr double kTolPair = 1e-6;
/// Witness threshold tau' (fixed-direction and kappa-ratio checks).
inline constexpr double kTolPairWitness = 1e-6;
/// A Darboux characteristic is abandoned once |a| + |b| + |zeta| exceeds this.
inline constexpr double kDarbouxBound = 1e3;

/// Case labels for a candidate Blaschke pair.
enum class PairClass {
  NotEnvelope,        ///< eta above threshold: not an envelope of the congruence
  DualSWillmore,      ///< theta = 0, xi = 0: dual S-Willmore pair
  IsothermicDarboux,  ///< rho = 0: Darboux transform of an isothermic base
  Trivial,            ///< theta = 0, xi != 0: hat surface degenerates to a fixed direction
  Indeterminate,      ///< none of the case conditions hold on this grid
};

const char* to_string(PairClass c);

/// Pointwise pair data: the base frame, the field jets, the invariant jets,
/// and the hat lift with its pointwise residuals.
struct PairPoint {
  ConformalFrame frame;
  Jet2 a, b, zeta;                  ///< fields; xi = zeta E
  Jet2 rho1, rho2, theta1, theta2;  ///< scalar invariants
  Jet2 eta1, eta2;                  ///< E-coefficients of eta_1, eta_2
  JetVec yhat;                      ///< hat lift
  double expansion = 0.0;           ///< derivative-expansion residual, both lines
  double pairing = 0.0;             ///< |<Y,Yhat> + 1|
  double nullity = 0.0;             ///< |<Yhat,Yhat>|
  bool valid = true;                ///< false past a Darboux blow-up
};

/// A candidate pair sampled on a grid with the classification sup-norms
/// (taken over valid points only).
struct PairData {
  GridSpec grid;
  std::vector<PairPoint> points;  ///< row-major, index i * nv + j
  double sup_eta = 0.0;           ///< sup |eta_i|
  double sup_theta = 0.0;         ///< sup |theta_i|
  double sup_rho = 0.0;           ///< sup |rho_i|
  double sup_xi = 0.0;            ///< sup |zeta|
  double sup_expansion = 0.0;
  double sup_pairing = 0.0;
  double sup_nullity = 0.0;
  int valid_points = 0;

  const PairPoint& at(int i, int j) const {
    return points[static_cast<std::size_t>(i) * grid.nv + j];
  }
};

/// Sup-norms of the cross-derivative identities that hold for envelopes
/// (eta = 0): the mixed normal identity and the two theta/rho transport laws.
struct PairIdentityResiduals {
  double mix = 0.0;       ///< |(a_u/2 - b_v/2) zeta - (theta1/2) k2 + (theta2/2) k1|
  double theta1_v = 0.0;  ///< |theta1_v - rho2_u + 2 b rho2|
  double theta2_u = 0.0;  ///< |theta2_u - rho1_v + 2 a rho1|
  double max() const;
};

PairIdentityResiduals pair_identity_residuals(const PairData& pair);

/// Classification result. Witness fields are NaN unless the label needs them.
struct PairClassification {
  PairClass label = PairClass::Indeterminate;
  double eta_sup = 0.0, theta_sup = 0.0, rho_sup = 0.0, xi_sup = 0.0;
  PairIdentityResiduals identities;
  /// DualSWillmore: sup | <Yhat_ww, E>/k_i - rho_i | over both families; the
  /// normal part of the hat lift's second derivative must be rho_i kappa_i.
  double kappa_ratio = std::numeric_limits<double>::quiet_NaN();
  /// Trivial: sup |rho1 - rho2|.
  double rho_equality = std::numeric_limits<double>::quiet_NaN();
  /// Trivial: transport residual of the fixed direction. Where |rho| > tol the
  /// direction is Yhat/rho - Y with transport d_u + b (and d_v + a); where rho
  /// vanishes, Yhat itself is the direction and transports as d_u - b, d_v - a.
  double fixed_direction = std::numeric_limits<double>::quiet_NaN();
  /// Trivial: spread of the normalized fixed-direction representatives.
  double direction_spread = std::numeric_limits<double>::quiet_NaN();
  std::string note;
};

/**
 * @brief Classify a pair by the sup-norms of its invariants.
 *
 * Order: NotEnvelope (eta > tol); DualSWillmore (theta <= tol, xi <= tol);
 * Trivial (theta <= tol, xi > tol); IsothermicDarboux (rho <= tol);
 * Indeterminate. Trivial precedes the rho test because both trivial
 * constructions also satisfy rho = 0. Identity residuals and the witnesses of
 * the selected case are always attached; a failed witness is reported in
 * `note` without changing the label.
 */
PairClassification classify(const PairData& pair, double tol = kTolPair,
                            double tol_witness = kTolPairWitness);

/// Build a pair from closed-form fields (empty expressions mean zero). The
/// expressions see u, v and the chart parameters.
PairData build_pair(const SurfaceChart& chart, const Expr& a_field,
                    const Expr& b_field, const Expr& xi_field,
                    const GridSpec& grid, int order = kDefaultOrder);

/// Dual pair a = -k1_v/k1, b = -k2_u/k2, xi = 0 (the unique envelope fields
/// with eta = 0 and xi = 0). Throws when the grid contains umbilic points,
/// listing them.
PairData dual_pair(const SurfaceChart& chart, const GridSpec& grid,
                   int order = kDefaultOrder);

/// Darboux integration outcome.
struct DarbouxResult {
  PairData pair;               ///< from the u-then-v sweep; PDE-propagated jets
  double compatibility = 0.0;  ///< sup |u-then-v minus v-then-u| over the fields
  bool compatible = false;     ///< compatibility <= tolerance
  int total_points = 0;        ///< grid size nu * nv
  std::string blowup_note;     ///< empty when every characteristic stayed bounded
};

/**
 * @brief Integrate the constant-parameter Darboux system on an isothermic base:
 *
 *   a_u = <kappa1,kappa2> - zeta^2/4       b_v = <kappa1,kappa2> - zeta^2/4
 *   b_u = (theta  + 2 b^2 + s1 + 2 zeta k1)/2
 *   a_v = (theta2 + 2 a^2 + s2 + 2 zeta k2)/2,  theta2 = sign * theta
 *   zeta_u = b zeta - 2 k1_v - 2 a k1
 *   zeta_v = a zeta - 2 k2_u - 2 b k2
 *
 * with classical 4th-order steps at the grid spacing, from `init` = (a, b,
 * zeta) at the first grid node. The sign is the isothermic sign of the Hopf
 * ratio on the grid (mixed signs are an error). The u-then-v sweep fills the
 * returned pair; the v-then-u sweep only feeds the compatibility residual,
 * which stays at the stepping error iff the system is integrable over the
 * base. Characteristics are abandoned at kDarbouxBound (Darboux transforms
 * can leave the chart); later nodes become invalid and are excluded from all
 * statistics.
 */
DarbouxResult darboux_integrate(const SurfaceChart& chart, double theta,
                                const std::array<double, 3>& init,
                                const GridSpec& grid, int order = kDefaultOrder);

/**
 * @brief Trivial pair through a fixed null point P: decompose P = alpha Y +
 * beta N + gamma Y_u + delta Y_v + eps E with beta = -<Y,P>, and set a =
 * gamma/(2 beta), b = delta/(2 beta), zeta = eps/beta. Then Yhat = P/beta
 * exactly (nullity of P forces the Y-coefficient identity) and the pair
 * classifies Trivial. Throws if P is not null or if <Y,P> vanishes on the
 * grid ("base point on polar hyperplane").
 */
PairData trivial_from_point(const SurfaceChart& chart, const Vec& P,
                            const GridSpec& grid, int order = kDefaultOrder);

}  // namespace lcs
