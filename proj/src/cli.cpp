// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.
#include "lcsurf/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lcsurf/chart.hpp"
#include "lcsurf/config.hpp"
#include "lcsurf/detect.hpp"
#include "lcsurf/envelope.hpp"
#include "lcsurf/error.hpp"
#include "lcsurf/expr.hpp"
#include "lcsurf/frame.hpp"
#include "lcsurf/report.hpp"
#include "lcsurf/thomsen.hpp"

namespace lcs {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* const kCommandList[] = {"catalog",       "invariants",  "verify",
                                    "detect",        "pair-classify", "pair-dual",
                                    "pair-darboux",  "pair-trivial",  "thomsen"};

const char* const kTolNames[] = {"detect", "pair", "witness", "verify", "thomsen"};

bool is_known(const std::string& s, const char* const* names, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (s == names[i]) return true;
  return false;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double x = 0.0;
  bool ok = true;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    ok = false;
  }
  if (!ok || used != text.size()) {
    std::ostringstream os;
    os << what << ": cannot parse number '" << text << "'";
    fail(os.str());
  }
  return x;
}

int parse_integer(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int x = 0;
  bool ok = true;
  try {
    x = std::stoi(text, &used);
  } catch (const std::exception&) {
    ok = false;
  }
  if (!ok || used != text.size()) {
    std::ostringstream os;
    os << what << ": cannot parse integer '" << text << "'";
    fail(os.str());
  }
  return x;
}

std::vector<double> parse_numbers(const std::string& text, std::size_t count,
                                  const std::string& what) {
  std::vector<std::string> parts = split(text, ',');
  if (parts.size() != count) {
    std::ostringstream os;
    os << what << ": expected " << count << " comma-separated numbers, got '"
       << text << "'";
    fail(os.str());
  }
  std::vector<double> out;
  out.reserve(count);
  for (const std::string& p : parts) out.push_back(parse_number(p, what));
  return out;
}

// ---------------------------------------------------------------------------
// Chart + pair-parameter resolution
// ---------------------------------------------------------------------------

struct ChartContext {
  SurfaceChart chart;
  bool from_file = false;
  Config cfg;  ///< valid only when from_file
};

ChartContext resolve_chart(const RunConfig& rc) {
  ChartContext cx;
  std::ifstream probe(rc.chart_source);
  if (probe.good()) {
    cx.from_file = true;
    cx.cfg = Config::load_file(rc.chart_source);
    cx.chart = load_chart(cx.cfg);
  } else {
    cx.chart = chart_from_catalog(rc.chart_source);
  }
  return cx;
}

GridSpec make_grid(const RunConfig& rc, const SurfaceChart& chart) {
  std::array<double, 4> r = rc.rect_set ? rc.rect : chart.domain;
  if (!(r[0] < r[1]) || !(r[2] < r[3]))
    fail("--rect must satisfy u0 < u1 and v0 < v1");
  GridSpec g;
  g.nu = rc.nu;
  g.nv = rc.nv;
  g.u0 = r[0];
  g.u1 = r[1];
  g.v0 = r[2];
  g.v1 = r[3];
  return g;
}

double tol_for(const RunConfig& rc, const std::string& name, double fallback) {
  auto it = rc.tols.find(name);
  return it == rc.tols.end() ? fallback : it->second;
}

/// Raw config value with optional surrounding double quotes removed.
std::string unquoted(const Config& cfg, const std::string& key) {
  std::string v = cfg.raw(key);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
    v = v.substr(1, v.size() - 2);
  return v;
}

/// Effective pair parameters: config-file keys overridden by flags.
struct PairSpec {
  std::string mode;             ///< empty = explicit field expressions
  std::string a, b, xi;         ///< expression sources; empty means zero
  double theta = 0.0;
  bool theta_set = false;
  std::array<double, 3> init{};
  std::vector<double> point;
};

PairSpec pair_spec(const RunConfig& rc, const ChartContext& cx) {
  PairSpec ps;
  if (cx.from_file) {
    const Config& c = cx.cfg;
    if (c.has("mode")) ps.mode = unquoted(c, "mode");
    if (c.has("fields.a")) ps.a = unquoted(c, "fields.a");
    if (c.has("fields.b")) ps.b = unquoted(c, "fields.b");
    if (c.has("fields.xi")) ps.xi = unquoted(c, "fields.xi");
    if (c.has("theta")) {
      ps.theta = c.number("theta");
      ps.theta_set = true;
    }
    if (c.has("init")) {
      std::vector<double> l = c.number_list("init");
      if (l.size() != 3) fail("config `init` needs 3 numbers (a, b, zeta)");
      std::copy(l.begin(), l.end(), ps.init.begin());
    }
    if (c.has("P")) ps.point = c.number_list("P");
  }
  if (!rc.mode.empty()) ps.mode = rc.mode;
  if (!rc.field_a.empty()) ps.a = rc.field_a;
  if (!rc.field_b.empty()) ps.b = rc.field_b;
  if (!rc.field_xi.empty()) ps.xi = rc.field_xi;
  if (rc.theta_set) {
    ps.theta = rc.theta;
    ps.theta_set = true;
  }
  if (rc.init_set) ps.init = rc.init;
  if (!rc.point.empty()) ps.point = rc.point;
  return ps;
}

/// pair-dual / pair-darboux / pair-trivial fix the mode themselves.
void enforce_mode(PairSpec& ps, const std::string& mode, const std::string& cmd) {
  if (!ps.mode.empty() && ps.mode != mode)
    fail(cmd + " always runs mode '" + mode + "'; drop mode '" + ps.mode + "'");
  if (!ps.a.empty() || !ps.b.empty() || !ps.xi.empty())
    fail(cmd + " does not take field expressions");
  ps.mode = mode;
}

// ---------------------------------------------------------------------------
// Report plumbing
// ---------------------------------------------------------------------------

/// Collects per-node residuals for the residual_summary block.
struct Accum {
  double mx = 0.0, sum = 0.0;
  long n = 0;
  double au = 0.0, av = 0.0;
  bool has_pt = false;

  void add(double r, double u, double v) {
    if (!std::isfinite(r)) return;
    sum += r;
    ++n;
    if (!has_pt || r > mx) {
      mx = r;
      au = u;
      av = v;
      has_pt = true;
    }
  }
};

Json summary_from(const Accum& a) {
  Json s = Json::object();
  s.add("max", a.n ? a.mx : kNaN);
  s.add("mean", a.n ? a.sum / a.n : kNaN);
  if (a.has_pt) {
    Json pt = Json::array();
    pt.push(a.au);
    pt.push(a.av);
    s.add("argmax_point", std::move(pt));
  } else {
    s.add("argmax_point", Json());
  }
  return s;
}

/// Summary whose sup/mean are known but whose argmax point is not.
Json summary_known(double mx, double mean) {
  Json s = Json::object();
  s.add("max", mx);
  s.add("mean", mean);
  s.add("argmax_point", Json());
  return s;
}

Json grid_json(const GridSpec& g) {
  Json j = Json::object();
  j.add("nu", g.nu);
  j.add("nv", g.nv);
  j.add("u0", g.u0);
  j.add("u1", g.u1);
  j.add("v0", g.v0);
  j.add("v1", g.v1);
  return j;
}

Json echo_json(const RunConfig& rc) {
  Json e = Json::object();
  if (!rc.chart_source.empty()) e.add("chart", rc.chart_source);
  e.add("order", rc.order);
  e.add("format", rc.format);
  Json tols = Json::object();
  for (const auto& [k, v] : rc.tols) tols.add(k, v);
  e.add("tol", std::move(tols));
  if (!rc.mode.empty()) e.add("mode", rc.mode);
  if (!rc.field_a.empty()) e.add("field_a", rc.field_a);
  if (!rc.field_b.empty()) e.add("field_b", rc.field_b);
  if (!rc.field_xi.empty()) e.add("field_xi", rc.field_xi);
  if (rc.theta_set) e.add("theta", rc.theta);
  if (rc.init_set) {
    Json a = Json::array();
    for (double x : rc.init) a.push(x);
    e.add("init", std::move(a));
  }
  if (!rc.point.empty()) {
    Json a = Json::array();
    for (double x : rc.point) a.push(x);
    e.add("point", std::move(a));
  }
  return e;
}

std::string sign_string(int sign) {
  return sign > 0 ? "+" : sign < 0 ? "-" : "0";
}

/// Everything a command contributes to the final report.
struct Outcome {
  Json results = Json::object();
  Json summary = Json::object();
  std::string status = "ok";
  int code = 0;
  std::string csv;
};

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

Outcome cmd_catalog() {
  Outcome oc;
  Json list = Json::array();
  Csv csv({"name", "source", "u0", "u1", "v0", "v1"});
  for (const std::string& name : catalog_names()) {
    SurfaceChart ch = chart_from_catalog(name);
    Json e = Json::object();
    e.add("name", name);
    e.add("source", to_string(ch.form));
    Json dom = Json::array();
    for (double x : ch.domain) dom.push(x);
    e.add("domain", std::move(dom));
    list.push(std::move(e));
    csv.add_row({name, to_string(ch.form), format_double(ch.domain[0]),
                 format_double(ch.domain[1]), format_double(ch.domain[2]),
                 format_double(ch.domain[3])});
  }
  oc.results.add("charts", std::move(list));
  Accum none;
  oc.summary = summary_from(none);
  oc.csv = csv.dump();
  return oc;
}

Outcome cmd_invariants(const RunConfig& rc, const SurfaceChart& chart,
                       const GridSpec& grid) {
  Outcome oc;
  Json k1 = Json::array(), k2 = Json::array(), s1 = Json::array(),
       s2 = Json::array(), lambda = Json::array(), resid = Json::array();
  Csv csv({"u", "v", "k1", "k2", "s1", "s2", "lambda", "residual"});
  Accum acc;
  for (int i = 0; i < grid.nu; ++i) {
    for (int j = 0; j < grid.nv; ++j) {
      const double u = grid.u_at(i), v = grid.v_at(j);
      ConformalFrame fr = frame_at(chart, u, v, rc.order);
      const double r = frame_residuals(fr).max();
      k1.push(fr.k1.value());
      k2.push(fr.k2.value());
      s1.push(fr.s1.value());
      s2.push(fr.s2.value());
      lambda.push(fr.lambda.value());
      resid.push(r);
      csv.add_row({format_double(u), format_double(v),
                   format_double(fr.k1.value()), format_double(fr.k2.value()),
                   format_double(fr.s1.value()), format_double(fr.s2.value()),
                   format_double(fr.lambda.value()), format_double(r)});
      acc.add(r, u, v);
    }
  }
  oc.results.add("k1", std::move(k1));
  oc.results.add("k2", std::move(k2));
  oc.results.add("s1", std::move(s1));
  oc.results.add("s2", std::move(s2));
  oc.results.add("lambda", std::move(lambda));
  oc.results.add("frame_residual", std::move(resid));
  oc.summary = summary_from(acc);
  oc.csv = csv.dump();
  return oc;
}

Outcome cmd_verify(const RunConfig& rc, const SurfaceChart& chart,
                   const GridSpec& grid) {
  Outcome oc;
  Csv csv({"u", "v", "normalization", "structure", "integrability"});
  Accum acc;
  double relations = 0.0, kappa_ortho = 0.0;
  StructureResiduals st_sup;
  IntegrabilityResiduals in_sup;
  auto up = [](double& sup, double x) { sup = std::max(sup, x); };
  for (int i = 0; i < grid.nu; ++i) {
    for (int j = 0; j < grid.nv; ++j) {
      const double u = grid.u_at(i), v = grid.v_at(j);
      ConformalFrame fr = frame_at(chart, u, v, rc.order);
      FrameResiduals fres = frame_residuals(fr);
      StructureResiduals st = structure_residuals(fr);
      IntegrabilityResiduals in = integrability_residuals(fr);
      up(relations, fres.max_normalization);
      up(kappa_ortho, fres.max_kappa_ortho);
      up(st_sup.yuu, st.yuu);
      up(st_sup.yvv, st.yvv);
      up(st_sup.yuv, st.yuv);
      up(st_sup.nu, st.nu);
      up(st_sup.nv, st.nv);
      up(st_sup.eu, st.eu);
      up(st_sup.ev, st.ev);
      up(in_sup.gauss_u, in.gauss_u);
      up(in_sup.gauss_v, in.gauss_v);
      up(in_sup.codazzi, in.codazzi);
      up(in_sup.ricci, in.ricci);
      const double node = std::max({fres.max(), st.max(), in.max()});
      csv.add_row({format_double(u), format_double(v), format_double(fres.max()),
                   format_double(st.max()), format_double(in.max())});
      acc.add(node, u, v);
    }
  }
  Json norm = Json::object();
  norm.add("relations", relations);
  norm.add("kappa_orthogonality", kappa_ortho);
  Json structure = Json::object();
  structure.add("yuu", st_sup.yuu);
  structure.add("yvv", st_sup.yvv);
  structure.add("yuv", st_sup.yuv);
  structure.add("nu", st_sup.nu);
  structure.add("nv", st_sup.nv);
  structure.add("eu", st_sup.eu);
  structure.add("ev", st_sup.ev);
  Json integ = Json::object();
  integ.add("gauss_u", in_sup.gauss_u);
  integ.add("gauss_v", in_sup.gauss_v);
  integ.add("codazzi", in_sup.codazzi);
  integ.add("ricci", in_sup.ricci);
  const double overall = acc.has_pt ? acc.mx : 0.0;
  oc.results.add("normalization", std::move(norm));
  oc.results.add("structure", std::move(structure));
  oc.results.add("integrability", std::move(integ));
  oc.results.add("max_residual", overall);
  oc.summary = summary_from(acc);
  oc.csv = csv.dump();
  const double tol = tol_for(rc, "verify", kTolDetect);
  if (overall > tol) {
    std::ostringstream os;
    os << "residuals exceed tolerance: max " << format_double(overall) << " > "
       << format_double(tol);
    oc.status = os.str();
    oc.code = 2;
  }
  return oc;
}

Outcome cmd_detect(const RunConfig& rc, const SurfaceChart& chart,
                   const GridSpec& grid) {
  Outcome oc;
  DetectorReport dr = detect_all(chart, grid, tol_for(rc, "detect", kTolDetect));

  Json willmore = Json::object();
  willmore.add("residual_sup", dr.willmore_sup);
  willmore.add("residual_mean", dr.willmore_mean);
  willmore.add("is_willmore", dr.willmore);

  Json sw = Json::object();
  sw.add("is_swillmore", dr.swillmore.swillmore);
  sw.add("parallelism_residual",
         dr.swillmore_error.empty() ? dr.swillmore.parallelism_residual : kNaN);
  sw.add("willmore_sup", dr.swillmore_error.empty() ? dr.swillmore.willmore_sup : kNaN);
  sw.add("skipped", dr.swillmore.skipped);
  sw.add("error", dr.swillmore_error);

  Json iso = Json::object();
  iso.add("sign", sign_string(dr.isothermic.sign));
  iso.add("separability_residual",
          dr.isothermic_error.empty() ? dr.isothermic.separability_residual : kNaN);
  iso.add("parallel_residual",
          dr.isothermic_error.empty() ? dr.isothermic.parallel_residual : kNaN);
  iso.add("skipped", dr.isothermic.skipped);
  iso.add("error", dr.isothermic_error);

  oc.results.add("willmore", std::move(willmore));
  oc.results.add("swillmore", std::move(sw));
  oc.results.add("isothermic", std::move(iso));
  oc.results.add("energy_W", dr.energy_W);
  oc.summary = summary_known(dr.willmore_sup, dr.willmore_mean);

  if (rc.format == "csv") {
    Csv csv({"u", "v", "willmore_r1", "willmore_r2", "ratio", "mu1", "mu2"});
    for (int i = 0; i < grid.nu; ++i) {
      for (int j = 0; j < grid.nv; ++j) {
        const double u = grid.u_at(i), v = grid.v_at(j);
        const std::size_t id = static_cast<std::size_t>(i) * grid.nv + j;
        std::pair<double, double> w = willmore_residual(chart, u, v, rc.order);
        auto cell = [id](const std::vector<double>& a) {
          return format_double(id < a.size() ? a[id] : kNaN);
        };
        csv.add_row({format_double(u), format_double(v), format_double(w.first),
                     format_double(w.second), cell(dr.isothermic.ratio),
                     cell(dr.swillmore.mu1), cell(dr.swillmore.mu2)});
      }
    }
    oc.csv = csv.dump();
  }
  return oc;
}

Outcome cmd_pair(const RunConfig& rc, const ChartContext& cx,
                 const GridSpec& grid) {
  Outcome oc;
  PairSpec ps = pair_spec(rc, cx);
  if (rc.command == "pair-dual") enforce_mode(ps, "dual", rc.command);
  if (rc.command == "pair-darboux") enforce_mode(ps, "darboux", rc.command);
  if (rc.command == "pair-trivial") enforce_mode(ps, "trivial_point", rc.command);

  DarbouxResult dres;
  bool darboux = false;
  PairData pd;
  if (ps.mode.empty()) {
    if (ps.a.empty() && ps.b.empty() && ps.xi.empty())
      fail(
          "pair-classify needs pair parameters: fields.a/fields.b/fields.xi "
          "(or --field-a/--field-b/--field-xi), or a mode");
    Expr a = ps.a.empty() ? Expr() : Expr::parse(ps.a);
    Expr b = ps.b.empty() ? Expr() : Expr::parse(ps.b);
    Expr xi = ps.xi.empty() ? Expr() : Expr::parse(ps.xi);
    pd = build_pair(cx.chart, a, b, xi, grid, rc.order);
  } else if (ps.mode == "dual") {
    pd = dual_pair(cx.chart, grid, rc.order);
  } else if (ps.mode == "darboux") {
    if (!ps.theta_set)
      fail("darboux mode needs theta (--theta or config `theta`)");
    darboux = true;
    dres = darboux_integrate(cx.chart, ps.theta, ps.init, grid, rc.order);
    pd = dres.pair;
  } else if (ps.mode == "trivial_point") {
    if (ps.point.size() != 5)
      fail("trivial_point mode needs P with 5 components (--point or config `P`)");
    pd = trivial_from_point(cx.chart, ps.point, grid, rc.order);
  } else {
    fail("unknown mode '" + ps.mode + "' (dual, darboux, trivial_point)");
  }

  PairClassification pc = classify(pd, tol_for(rc, "pair", kTolPair),
                                   tol_for(rc, "witness", kTolPairWitness));

  Json cons = Json::object();
  cons.add("mode", ps.mode.empty() ? std::string("fields") : ps.mode);
  cons.add("valid_points", pd.valid_points);
  cons.add("total_points", grid.nu * grid.nv);
  cons.add("pairing_sup", pd.sup_pairing);
  cons.add("nullity_sup", pd.sup_nullity);
  cons.add("expansion_sup", pd.sup_expansion);
  if (darboux) {
    cons.add("theta", ps.theta);
    cons.add("compatibility", dres.compatibility);
    cons.add("compatible", dres.compatible);
    cons.add("blowup_note", dres.blowup_note);
  }

  Json inv = Json::object();
  inv.add("eta_sup", pc.eta_sup);
  inv.add("theta_sup", pc.theta_sup);
  inv.add("rho_sup", pc.rho_sup);
  inv.add("xi_sup", pc.xi_sup);

  Json ident = Json::object();
  ident.add("mix", pc.identities.mix);
  ident.add("theta1_v", pc.identities.theta1_v);
  ident.add("theta2_u", pc.identities.theta2_u);

  Json cls = Json::object();
  cls.add("label", to_string(pc.label));
  cls.add("kappa_ratio", pc.kappa_ratio);
  cls.add("rho_equality", pc.rho_equality);
  cls.add("fixed_direction", pc.fixed_direction);
  cls.add("direction_spread", pc.direction_spread);
  cls.add("note", pc.note);

  oc.results.add("construction", std::move(cons));
  oc.results.add("invariants", std::move(inv));
  oc.results.add("identities", std::move(ident));
  oc.results.add("classification", std::move(cls));

  Accum acc;
  Csv csv({"u", "v", "a", "b", "xi", "rho1", "rho2", "theta1", "theta2", "eta1",
           "eta2", "valid"});
  for (int i = 0; i < grid.nu; ++i) {
    for (int j = 0; j < grid.nv; ++j) {
      const double u = grid.u_at(i), v = grid.v_at(j);
      const PairPoint& p = pd.at(i, j);
      if (rc.format == "csv") {
        csv.add_row({format_double(u), format_double(v),
                     format_double(p.a.value()), format_double(p.b.value()),
                     format_double(p.zeta.value()), format_double(p.rho1.value()),
                     format_double(p.rho2.value()), format_double(p.theta1.value()),
                     format_double(p.theta2.value()), format_double(p.eta1.value()),
                     format_double(p.eta2.value()), p.valid ? "1" : "0"});
      }
      if (p.valid)
        acc.add(std::max({p.pairing, p.nullity, p.expansion}), u, v);
    }
  }
  oc.summary = summary_from(acc);
  if (rc.format == "csv") oc.csv = csv.dump();

  const bool positive = pc.label == PairClass::DualSWillmore ||
                        pc.label == PairClass::IsothermicDarboux ||
                        pc.label == PairClass::Trivial;
  if (darboux && !dres.compatible) {
    std::ostringstream os;
    os << "darboux system incompatible over this base (residual "
       << format_double(dres.compatibility) << ")";
    oc.status = os.str();
    oc.code = 2;
  } else if (rc.command == "pair-trivial" && pc.label != PairClass::Trivial) {
    oc.status = std::string("classification: ") + to_string(pc.label) +
                " (expected Trivial)";
    oc.code = 2;
  } else if (!positive) {
    oc.status = std::string("classification: ") + to_string(pc.label);
    if (!pc.note.empty()) oc.status += "; " + pc.note;
    oc.code = 2;
  }
  return oc;
}

Outcome cmd_thomsen(const RunConfig& rc, const SurfaceChart& chart,
                    const GridSpec& grid) {
  Outcome oc;
  ThomsenResult tr = thomsen_pipeline(chart, grid, rc.order);

  oc.results.add("stage", to_string(tr.stage));
  oc.results.add("note", tr.note);
  oc.results.add("warning", tr.warning);
  Json gates = Json::object();
  gates.add("isothermic_sign", sign_string(tr.iso_sign));
  gates.add("separability", tr.separability);
  gates.add("willmore_sup", tr.willmore_sup);
  oc.results.add("gates", std::move(gates));

  Accum acc;
  Csv csv({"u", "v", "rho", "conf", "omega", "H"});
  if (tr.stage == ThomsenStage::Complete) {
    double rho_sup = 0.0;
    for (double r : tr.rho) rho_sup = std::max(rho_sup, std::abs(r));
    Json rho = Json::object();
    rho.add("sup", rho_sup);
    rho.add("consistency", tr.rho_consistency);
    rho.add("propagation", tr.rho_propagation);
    oc.results.add("rho", std::move(rho));

    Json fixed = Json::object();
    Json y0 = Json::array();
    for (double x : tr.y0) y0.push(x);
    fixed.add("y0", std::move(y0));
    fixed.add("spread", tr.y0_spread);
    fixed.add("causal", to_string(tr.causal));
    fixed.add("branch", to_string(tr.branch));
    oc.results.add("fixed_point", std::move(fixed));
    oc.results.add("transform_defect", tr.transform_defect);

    Json rec = Json::object();
    rec.add("excluded", tr.recovered.excluded);
    rec.add("nonpositive_conf", tr.recovered.nonpositive_conf);
    rec.add("containment_residual", tr.recovered.residual_sup);
    rec.add("h_sup", tr.recovered.h_sup);
    oc.results.add("recovered", std::move(rec));
    oc.results.add("h_residual", tr.h_residual);

    for (int i = 0; i < grid.nu; ++i) {
      for (int j = 0; j < grid.nv; ++j) {
        const double u = grid.u_at(i), v = grid.v_at(j);
        const std::size_t id = static_cast<std::size_t>(i) * grid.nv + j;
        const double h = tr.recovered.h_at(i, j);
        if (rc.format == "csv") {
          csv.add_row({format_double(u), format_double(v),
                       format_double(tr.rho[id]),
                       format_double(tr.recovered.conf[id]),
                       format_double(tr.recovered.omega[id]), format_double(h)});
        }
        acc.add(std::abs(h), u, v);
      }
    }
  }
  oc.summary = summary_from(acc);
  oc.csv = csv.dump();

  if (tr.stage != ThomsenStage::Complete) {
    oc.status = tr.note;
    oc.code = 2;
  } else {
    const double tol = tol_for(rc, "thomsen", kTolThomsen);
    if (!(tr.h_residual <= tol)) {
      std::ostringstream os;
      os << "mean curvature residual " << format_double(tr.h_residual)
         << " exceeds tolerance " << format_double(tol);
      oc.status = os.str();
      oc.code = 2;
    }
  }
  return oc;
}

}  // namespace

// ---------------------------------------------------------------------------
// Argument parsing and the driver
// ---------------------------------------------------------------------------

RunConfig parse_args(const std::vector<std::string>& args) {
  if (args.empty())
    fail(
        "usage: lcsurf <command> [chart] [flags]; commands: catalog, "
        "invariants, verify, detect, pair-classify, pair-dual, pair-darboux, "
        "pair-trivial, thomsen");
  RunConfig rc;
  rc.command = args[0];
  if (!is_known(rc.command, kCommandList, std::size(kCommandList)))
    fail("unknown command '" + rc.command +
         "' (catalog, invariants, verify, detect, pair-classify, pair-dual, "
         "pair-darboux, pair-trivial, thomsen)");

  std::vector<std::string> positional;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0) {
      positional.push_back(a);
      continue;
    }
    auto need = [&]() -> const std::string& {
      if (i + 1 >= args.size()) fail(a + " needs a value");
      return args[++i];
    };
    if (a == "--grid") {
      std::vector<std::string> p = split(need(), 'x');
      if (p.size() != 2) fail("--grid expects NUxNV, e.g. --grid 20x20");
      rc.nu = parse_integer(p[0], "--grid");
      rc.nv = parse_integer(p[1], "--grid");
    } else if (a == "--rect") {
      std::vector<double> r = parse_numbers(need(), 4, "--rect");
      std::copy(r.begin(), r.end(), rc.rect.begin());
      rc.rect_set = true;
    } else if (a == "--order") {
      rc.order = parse_integer(need(), "--order");
    } else if (a == "--tol") {
      std::vector<std::string> p = split(need(), '=');
      if (p.size() != 2) fail("--tol expects name=value");
      if (!is_known(p[0], kTolNames, std::size(kTolNames)))
        fail("unknown tolerance '" + p[0] +
             "' (detect, pair, witness, verify, thomsen)");
      rc.tols[p[0]] = parse_number(p[1], "--tol " + p[0]);
    } else if (a == "--out") {
      rc.out_path = need();
    } else if (a == "--format") {
      rc.format = need();
      if (rc.format != "json" && rc.format != "csv")
        fail("--format must be json or csv");
    } else if (a == "--mode") {
      rc.mode = need();
      if (rc.mode != "dual" && rc.mode != "darboux" && rc.mode != "trivial_point")
        fail("unknown mode '" + rc.mode + "' (dual, darboux, trivial_point)");
    } else if (a == "--theta") {
      rc.theta = parse_number(need(), "--theta");
      rc.theta_set = true;
    } else if (a == "--init") {
      std::vector<double> x = parse_numbers(need(), 3, "--init");
      std::copy(x.begin(), x.end(), rc.init.begin());
      rc.init_set = true;
    } else if (a == "--point") {
      rc.point = parse_numbers(need(), 5, "--point");
    } else if (a == "--field-a") {
      rc.field_a = need();
    } else if (a == "--field-b") {
      rc.field_b = need();
    } else if (a == "--field-xi") {
      rc.field_xi = need();
    } else {
      fail("unknown flag '" + a + "'");
    }
  }

  if (rc.command == "catalog") {
    if (!positional.empty())
      fail("catalog takes no chart argument (got '" + positional[0] + "')");
  } else {
    if (positional.empty())
      fail(rc.command + " needs a chart (catalog name or config file path)");
    if (positional.size() > 1)
      fail("unexpected extra argument '" + positional[1] + "'");
    rc.chart_source = positional[0];
  }
  if (rc.nu < 4 || rc.nv < 4) {
    std::ostringstream os;
    os << "grid must be at least 4x4 (got " << rc.nu << "x" << rc.nv << ")";
    fail(os.str());
  }
  if (rc.order < 6) {
    std::ostringstream os;
    os << "jet order must be at least 6 (got " << rc.order << ")";
    fail(os.str());
  }
  return rc;
}

CliResult run_command(const std::vector<std::string>& args) {
  try {
    RunConfig rc = parse_args(args);
    Outcome oc;
    Json grid_field;  // null for catalog
    if (rc.command == "catalog") {
      oc = cmd_catalog();
    } else {
      ChartContext cx = resolve_chart(rc);
      GridSpec grid = make_grid(rc, cx.chart);
      grid_field = grid_json(grid);
      if (rc.command == "invariants") {
        oc = cmd_invariants(rc, cx.chart, grid);
      } else if (rc.command == "verify") {
        oc = cmd_verify(rc, cx.chart, grid);
      } else if (rc.command == "detect") {
        oc = cmd_detect(rc, cx.chart, grid);
      } else if (rc.command == "thomsen") {
        oc = cmd_thomsen(rc, cx.chart, grid);
      } else {
        oc = cmd_pair(rc, cx, grid);
      }
    }

    Json root = Json::object();
    root.add("command", rc.command);
    root.add("config_echo", echo_json(rc));
    root.add("grid", std::move(grid_field));
    root.add("results", std::move(oc.results));
    root.add("residual_summary", std::move(oc.summary));
    root.add("status", oc.status);

    std::string text = rc.format == "csv" ? oc.csv : root.dump();
    if (!rc.out_path.empty()) {
      std::ofstream f(rc.out_path, std::ios::binary);
      if (!f) fail("cannot open output file '" + rc.out_path + "'");
      f << text;
      f.flush();
      if (!f.good()) fail("cannot write output file '" + rc.out_path + "'");
    }
    return CliResult{oc.code, text, ""};
  } catch (const std::exception& e) {
    return CliResult{1, "", std::string("error: ") + e.what()};
  }
}

}  // namespace lcs
