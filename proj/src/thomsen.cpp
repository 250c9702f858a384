// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#include "lcsurf/thomsen.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>

#include "lcsurf/detect.hpp"
#include "lcsurf/error.hpp"
#include "lcsurf/jetvec.hpp"

namespace lcs {

namespace {

std::string point_str(double u, double v) {
  std::ostringstream os;
  os << "(u,v)=(" << u << ", " << v << ")";
  return os.str();
}

Signature branch_metric(SpaceForm branch) {
  switch (branch) {
    case SpaceForm::R31: return kSigR31;
    case SpaceForm::S31: return kSigS31;
    case SpaceForm::H31: return kSigH31;
    case SpaceForm::LightCone: break;
  }
  fail("space-form recovery: branch must be R31, S31 or H31");
}

/// Branch scaling denominator of an ambient value.
double branch_denominator(SpaceForm branch, const Vec& y) {
  switch (branch) {
    case SpaceForm::R31: return y[4] - y[0];
    case SpaceForm::S31: return y[4];
    case SpaceForm::H31: return y[0];
    default: return 0.0;
  }
}

/// Space-form coordinates of the scaled vector (denominator already 1).
Vec branch_slice(SpaceForm branch, const Vec& z) {
  switch (branch) {
    case SpaceForm::R31: return Vec{z[1], z[2], z[3]};
    case SpaceForm::S31: return Vec{z[0], z[1], z[2], z[3]};
    default: return Vec{z[1], z[2], z[3], z[4]};
  }
}

/// |<x,x> - target| where the target reassembles the branch lift.
double branch_residual(SpaceForm branch, const Signature& m, const Vec& x,
                       const Vec& z) {
  const double q = inner(m, x, x);
  switch (branch) {
    case SpaceForm::R31: return std::abs(q - (z[0] + z[4]));
    case SpaceForm::S31: return std::abs(q - 1.0);
    default: return std::abs(q + 1.0);
  }
}

/// Euclidean cross product in R^3 / generalized (ternary) cross in R^4:
/// a vector Euclidean-orthogonal to all arguments, by cofactor expansion.
Vec euclid_cross(const std::vector<Vec>& rows) {
  const int n = static_cast<int>(rows.size()) + 1;
  Vec out(n, 0.0);
  if (n == 3) {
    const Vec& a = rows[0];
    const Vec& b = rows[1];
    out[0] = a[1] * b[2] - a[2] * b[1];
    out[1] = a[2] * b[0] - a[0] * b[2];
    out[2] = a[0] * b[1] - a[1] * b[0];
    return out;
  }
  // n == 4: out_i = (-1)^i det of the 3x3 minor skipping column i.
  for (int skip = 0; skip < 4; ++skip) {
    double m[3][3];
    for (int r = 0; r < 3; ++r) {
      int cc = 0;
      for (int c = 0; c < 4; ++c) {
        if (c == skip) continue;
        m[r][cc++] = rows[r][c];
      }
    }
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    out[skip] = (skip % 2 == 0) ? det : -det;
  }
  return out;
}

/// Metric-orthogonal complement of the tangent (and, in dimension 4, the
/// position): n = G * euclid_cross, so <n, arg> = 0 for every argument.
Vec metric_normal(const Signature& m, const std::vector<Vec>& rows) {
  Vec n = euclid_cross(rows);
  for (int i = 0; i < m.dim(); ++i) n[i] *= m.sign(i);
  return n;
}

/// Order-4 first-derivative stencil weights over offsets {-2,-1,+1,+2}.
constexpr double kD1[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
constexpr int kOff[4] = {-2, -1, 1, 2};

struct DominantDirection {
  Vec dir;        // Euclidean unit, deterministic sign
  double spread;  // sup sine of the angle to the per-node representatives
};

/**
 * Dominant direction of a cloud of rays: the top eigenvector of the 5x5
 * accumulation sum_p y_p y_p^T (sign-blind, so antipodal representatives
 * agree), by power iteration from the largest diagonal axis.  Deterministic:
 * fixed start rule, fixed iteration count, sign fixed by the largest
 * component.
 */
DominantDirection dominant_direction(const std::vector<Vec>& ys) {
  double acc[5][5] = {};
  for (const Vec& y : ys) {
    const double norm = euclid_norm(y);
    if (norm <= 0.0) continue;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) acc[i][j] += y[i] * y[j] / (norm * norm);
  }
  int start = 0;
  for (int i = 1; i < 5; ++i)
    if (acc[i][i] > acc[start][start]) start = i;
  Vec d(5, 0.0);
  d[start] = 1.0;
  for (int it = 0; it < 128; ++it) {
    Vec next(5, 0.0);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) next[i] += acc[i][j] * d[j];
    const double norm = euclid_norm(next);
    if (norm <= 0.0) break;
    for (int i = 0; i < 5; ++i) next[i] /= norm;
    d = next;
  }
  int top = 0;
  for (int i = 1; i < 5; ++i)
    if (std::abs(d[i]) > std::abs(d[top])) top = i;
  if (d[top] < 0.0)
    for (double& c : d) c = -c;

  double spread = 0.0;
  for (const Vec& y : ys) {
    const double norm = euclid_norm(y);
    if (norm <= 0.0) continue;
    double dot = 0.0;
    for (int i = 0; i < 5; ++i) dot += y[i] * d[i] / norm;
    double rej = 0.0;
    for (int i = 0; i < 5; ++i) {
      const double r = y[i] / norm - dot * d[i];
      rej += r * r;
    }
    spread = std::max(spread, std::sqrt(rej));
  }
  return {d, spread};
}

}  // namespace

const Vec& SpaceformGrid::at(int i, int j) const {
  return x[static_cast<std::size_t>(i) * grid.nv + j];
}

double SpaceformGrid::h_at(int i, int j) const {
  return H[static_cast<std::size_t>(i) * grid.nv + j];
}

SpaceformGrid recover_spaceform_chart(const std::vector<Vec>& yvals,
                                      const GridSpec& grid, SpaceForm branch) {
  const Signature metric = branch_metric(branch);
  const std::size_t count = static_cast<std::size_t>(grid.nu) * grid.nv;
  if (yvals.size() != count) {
    std::ostringstream os;
    os << "space-form recovery: expected " << count
       << " grid values, got " << yvals.size();
    fail(os.str());
  }

  SpaceformGrid out;
  out.branch = branch;
  out.grid = grid;
  out.metric = metric;
  out.x.assign(count, Vec{});
  out.valid.assign(count, 0);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.residual.assign(count, nan);
  out.conf.assign(count, nan);
  out.omega.assign(count, nan);
  out.H.assign(count, nan);

  // Pass 1: scale each node into the affine chart; flag chart boundaries.
  double worst = 0.0;
  int worst_i = -1, worst_j = -1;
  for (int i = 0; i < grid.nu; ++i) {
    for (int j = 0; j < grid.nv; ++j) {
      const std::size_t id = static_cast<std::size_t>(i) * grid.nv + j;
      const Vec& y = yvals[id];
      if (y.size() != 5) fail("space-form recovery: values must have 5 components");
      const double denom = branch_denominator(branch, y);
      if (std::abs(denom) <= kEpsScaleBoundary * std::max(1.0, euclid_norm(y))) {
        ++out.excluded;  // chart boundary: the affine reading does not exist
        continue;
      }
      Vec z(5);
      for (int c = 0; c < 5; ++c) z[c] = y[c] / denom;
      Vec x = branch_slice(branch, z);
      const double res = branch_residual(branch, metric, x, z);
      out.residual[id] = res;
      out.residual_sup = std::max(out.residual_sup, res);
      if (res > worst) {
        worst = res;
        worst_i = i;
        worst_j = j;
      }
      out.x[id] = std::move(x);
      out.valid[id] = 1;
    }
  }
  if (out.residual_sup > kTolThomsen) {
    std::ostringstream os;
    os << "branch mismatch: the " << to_string(branch)
       << " containment residual reaches " << worst << " at "
       << point_str(grid.u_at(worst_i), grid.v_at(worst_j));
    fail(os.str());
  }

  // Pass 2: conformal factor and mean curvature by order-4 central stencils.
  const double hu = (grid.u1 - grid.u0) / (grid.nu + 1);
  const double hv = (grid.v1 - grid.v0) / (grid.nv + 1);
  const int dim = metric.dim();
  double hsup = nan;
  for (int i = 2; i < grid.nu - 2; ++i) {
    for (int j = 2; j < grid.nv - 2; ++j) {
      const std::size_t id = static_cast<std::size_t>(i) * grid.nv + j;
      bool usable = out.valid[id] != 0;
      for (int s = 0; s < 4 && usable; ++s) {
        usable = out.valid[static_cast<std::size_t>(i + kOff[s]) * grid.nv + j] &&
                 out.valid[static_cast<std::size_t>(i) * grid.nv + (j + kOff[s])];
        for (int t = 0; t < 4 && usable; ++t)
          usable = out.valid[static_cast<std::size_t>(i + kOff[s]) * grid.nv +
                             (j + kOff[t])] != 0;
      }
      if (!usable) continue;

      Vec xu(dim, 0.0), xv(dim, 0.0), xuv(dim, 0.0);
      for (int s = 0; s < 4; ++s) {
        const Vec& yu = out.at(i + kOff[s], j);
        const Vec& yv = out.at(i, j + kOff[s]);
        for (int c = 0; c < dim; ++c) {
          xu[c] += kD1[s] * yu[c] / hu;
          xv[c] += kD1[s] * yv[c] / hv;
        }
        for (int t = 0; t < 4; ++t) {
          const Vec& ym = out.at(i + kOff[s], j + kOff[t]);
          for (int c = 0; c < dim; ++c)
            xuv[c] += kD1[s] * kD1[t] * ym[c] / (hu * hv);
        }
      }

      const double conf = 2.0 * inner(metric, xu, xv);
      out.conf[id] = conf;
      if (conf <= 0.0) {
        ++out.nonpositive_conf;  // not timelike here; H undefined
        continue;
      }
      out.omega[id] = 0.5 * std::log(conf);

      std::vector<Vec> span;
      if (dim == 4) span.push_back(out.x[id]);  // normal also orthogonal to x
      span.push_back(xu);
      span.push_back(xv);
      Vec n = metric_normal(metric, span);
      const double nn = inner(metric, n, n);
      if (nn <= 0.0) continue;  // degenerate tangent data
      const double inv = 1.0 / std::sqrt(nn);
      for (double& c : n) c *= inv;
      const double H = 2.0 * inner(metric, xuv, n) / conf;
      out.H[id] = H;
      hsup = std::isnan(hsup) ? std::abs(H) : std::max(hsup, std::abs(H));
    }
  }
  out.h_sup = hsup;
  return out;
}

const char* to_string(ThomsenStage stage) {
  switch (stage) {
    case ThomsenStage::Complete: return "complete";
    case ThomsenStage::TotallyUmbilic: return "totally_umbilic";
    case ThomsenStage::PreconditionFailed: return "precondition_failed";
  }
  return "?";
}

ThomsenResult thomsen_pipeline(const SurfaceChart& chart, const GridSpec& grid,
                               int order) {
  if (grid.nu < 5 || grid.nv < 5)
    fail("thomsen needs at least a 5x5 grid for the finite-difference "
         "verification");

  ThomsenResult res;

  // Gate 0/1: totally umbilic early exit, then the isothermic test.
  IsothermicReport iso;
  try {
    iso = isothermic_test(chart, grid);
  } catch (const Error& e) {
    if (std::string(e.what()).find("identically umbilic") == std::string::npos)
      throw;
    res.stage = ThomsenStage::TotallyUmbilic;
    res.note =
        "totally umbilic chart: contained in some S2_1 and minimal in some "
        "S3_1; nothing to construct";
    return res;
  }
  res.iso_sign = iso.sign;
  res.separability = iso.separability_residual;
  if (iso.separability_residual > kTolThomsen || iso.sign == 0) {
    res.stage = ThomsenStage::PreconditionFailed;
    std::ostringstream os;
    os << "precondition failed: isothermic (";
    if (iso.sign == 0)
      os << "the Hopf ratio mixes signs across the grid";
    else
      os << "separability residual " << iso.separability_residual
         << " exceeds " << kTolThomsen;
    os << ")";
    res.note = os.str();
    return res;
  }
  if (iso.sign < 0)
    res.warning =
        "(-)-isothermic input: the dual construction assumes the (+) type; "
        "results are best-effort";

  // The dual pair supplies the fields, the frames, and the hat lift.
  PairData pair = dual_pair(chart, grid, order);

  // Gate 2: Willmore residual over the stored frames.
  double wsup = 0.0;
  for (const PairPoint& p : pair.points) {
    const auto [r1, r2] = willmore_residual_frame(p.frame);
    wsup = std::max(wsup, std::max(std::abs(r1), std::abs(r2)));
  }
  res.willmore_sup = wsup;
  if (wsup > kTolThomsen) {
    res.stage = ThomsenStage::PreconditionFailed;
    std::ostringstream os;
    os << "precondition failed: willmore (residual sup " << wsup
       << " exceeds " << kTolThomsen << ")";
    res.note = os.str();
    res.pair = std::move(pair);
    return res;
  }

  // Scale field rho = rho1, with the two consistency sups.
  const std::size_t count = pair.points.size();
  res.rho.assign(count, 0.0);
  double rc = 0.0, rp = 0.0;
  std::vector<Vec> y0_nodes(count);
  for (std::size_t id = 0; id < count; ++id) {
    const PairPoint& p = pair.points[id];
    const double rho = p.rho1.value();
    res.rho[id] = rho;
    rc = std::max(rc, std::abs(rho - p.rho2.value()));
    rp = std::max(rp, std::abs(p.rho1.partial(1, 0) - 2.0 * p.b.value() * rho));
    rp = std::max(rp, std::abs(p.rho1.partial(0, 1) - 2.0 * p.a.value() * rho));
    Vec y0(5);
    for (int c = 0; c < 5; ++c)
      y0[c] = p.yhat[c].value() - rho * p.frame.Y[c].value();
    y0_nodes[id] = std::move(y0);
  }
  res.rho_consistency = rc;
  res.rho_propagation = rp;

  // The constant point: common direction, then its causal type.
  DominantDirection dom = dominant_direction(y0_nodes);
  res.y0_spread = dom.spread;
  Causal causal = causal_type(kSigAmbient, dom.dir);
  for (std::size_t id = 0; id < count; ++id) {
    const Vec& y = y0_nodes[id];
    const double norm = euclid_norm(y);
    if (norm <= 0.0) continue;
    Vec unit(5);
    for (int c = 0; c < 5; ++c) unit[c] = y[c] / norm;
    const Causal local = causal_type(kSigAmbient, unit);
    if (local != causal) {
      const int i = static_cast<int>(id) / grid.nv;
      const int j = static_cast<int>(id) % grid.nv;
      std::ostringstream os;
      os << "inconsistent fixed point: Y0 is " << to_string(causal)
         << " overall but " << to_string(local) << " at "
         << point_str(grid.u_at(i), grid.v_at(j));
      fail(os.str());
    }
  }
  res.causal = causal;
  res.branch = causal == Causal::Null      ? SpaceForm::R31
               : causal == Causal::Timelike ? SpaceForm::S31
                                            : SpaceForm::H31;

  // Representative with its largest component scaled to +1.
  int top = 0;
  for (int i = 1; i < 5; ++i)
    if (std::abs(dom.dir[i]) > std::abs(dom.dir[top])) top = i;
  res.y0.assign(5, 0.0);
  for (int c = 0; c < 5; ++c) res.y0[c] = dom.dir[c] / dom.dir[top];

  // Normalize Y0 into standard position and read the affine chart.
  res.transform = normalizing_transform(kSigAmbient, dom.dir, causal);
  res.transform_defect = ortho_defect(kSigAmbient, res.transform);
  std::vector<Vec> zvals(count, Vec(5, 0.0));
  for (std::size_t id = 0; id < count; ++id) {
    const JetVec& Y = pair.points[id].frame.Y;
    for (int r = 0; r < 5; ++r) {
      double acc = 0.0;
      for (int c = 0; c < 5; ++c) acc += res.transform.at(r, c) * Y[c].value();
      zvals[id][r] = acc;
    }
  }
  res.pair = std::move(pair);
  res.recovered = recover_spaceform_chart(zvals, grid, res.branch);
  res.h_residual = res.recovered.h_sup;
  return res;
}

}  // namespace lcs
