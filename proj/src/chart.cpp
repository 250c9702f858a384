// Copyright 2026 the lcsurf authors. Licensed under the Apache License, Version 2.0.

#include "lcsurf/chart.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lcsurf/error.hpp"

namespace lcs {

namespace {

std::string point_str(double u, double v) {
  std::ostringstream os;
  os << "(u,v)=(" << u << ", " << v << ")";
  return os.str();
}

}  // namespace

std::string to_string(SpaceForm form) {
  switch (form) {
    case SpaceForm::R31: return "R31";
    case SpaceForm::S31: return "S31";
    case SpaceForm::H31: return "H31";
    case SpaceForm::LightCone: return "lightcone";
  }
  fail("invalid space form");
}

const Signature& ambient_signature(SpaceForm form) {
  switch (form) {
    case SpaceForm::R31: return kSigR31;
    case SpaceForm::S31: return kSigS31;
    case SpaceForm::H31: return kSigH31;
    case SpaceForm::LightCone: return kSigAmbient;
  }
  fail("invalid space form");
}

int component_count(SpaceForm form) {
  switch (form) {
    case SpaceForm::R31: return 3;
    case SpaceForm::S31: return 4;
    case SpaceForm::H31: return 4;
    case SpaceForm::LightCone: return 5;
  }
  fail("invalid space form");
}

JetVec SurfaceChart::eval(double u, double v, int order) const {
  Jet2 ju0 = Jet2::variable_u(order, u);
  Jet2 jv0 = v_flipped ? Jet2::seeded(order, -v, 0.0, -1.0)
                       : Jet2::variable_v(order, v);
  Jet2 ju = remap_u.empty() ? ju0 : remap_u.eval_jet(ju0, jv0, params);
  Jet2 jv = remap_v.empty() ? jv0 : remap_v.eval_jet(ju0, jv0, params);
  JetVec out(components.size());
  for (std::size_t i = 0; i < components.size(); ++i)
    out[i] = components[i].eval_jet(ju, jv, params);
  return out;
}

bool SurfaceChart::contains(double u, double v) const {
  const double su = 1e-9 * (1.0 + std::abs(domain[1] - domain[0]));
  const double sv = 1e-9 * (1.0 + std::abs(domain[3] - domain[2]));
  return u >= domain[0] - su && u <= domain[1] + su && v >= domain[2] - sv &&
         v <= domain[3] + sv;
}

SurfaceChart chart_from_config(const Config& config) {
  SurfaceChart chart;
  chart.name = config.str_or("name", "user");
  const std::string source = config.str("source");
  if (source == "R31") {
    chart.form = SpaceForm::R31;
  } else if (source == "S31") {
    chart.form = SpaceForm::S31;
  } else if (source == "H31") {
    chart.form = SpaceForm::H31;
  } else if (source == "lightcone") {
    chart.form = SpaceForm::LightCone;
  } else {
    fail("chart '" + chart.name + "': unknown source '" + source +
         "' (expected R31, S31, H31, or lightcone)");
  }

  const std::vector<std::string> comps = config.list("components");
  const int want = component_count(chart.form);
  if (static_cast<int>(comps.size()) != want) {
    fail("chart '" + chart.name + "': wrong component count (expected " +
         std::to_string(want) + " for " + source + ", got " +
         std::to_string(comps.size()) + ")");
  }
  chart.components.reserve(comps.size());
  for (const std::string& c : comps) chart.components.push_back(Expr::parse(c));

  const std::vector<double> dom = config.number_list("domain");
  if (dom.size() != 4)
    fail("chart '" + chart.name + "': domain must be [u0, u1, v0, v1]");
  if (!(dom[0] < dom[1]) || !(dom[2] < dom[3]))
    fail("chart '" + chart.name + "': empty domain interval");
  chart.domain = {dom[0], dom[1], dom[2], dom[3]};
  chart.params = config.number_group("params");
  return chart;
}

namespace {

struct CatalogEntry {
  const char* name;
  const char* text;
};

// Domains are chosen so the conformal factor stays positive and the
// pivot-based normal orientation is continuous where anchor values are
// frozen in the tests.
const CatalogEntry kCatalog[] = {
    {"cylinder_r31", R"(
name = "cylinder_r31"
source = "R31"
components = [cos((u+v)/2), sin((u+v)/2), (u-v)/2]
domain = [-0.5, 1.5, -0.5, 1.5]
)"},
    {"nullsum_minimal_r31", R"(
name = "nullsum_minimal_r31"
source = "R31"
components = [sin(u) + sin(v)/2, cos(u) - cos(v)/2, u - v/2]
domain = [-1.4707963267948966, 1.4707963267948966, -1.4707963267948966, 1.4707963267948966]
)"},
    {"clifford_s31", R"(
name = "clifford_s31"
source = "S31"
components = [cos((u+v)/sqrt(2))/sqrt(2), sin((u+v)/sqrt(2))/sqrt(2), cosh((u-v)/sqrt(2))/sqrt(2), sinh((u-v)/sqrt(2))/sqrt(2)]
domain = [-2, 2, -2, 2]
)"},
    {"plane_r31", R"(
name = "plane_r31"
source = "R31"
components = [(u+v)/2, 0, (u-v)/2]
domain = [-5, 5, -5, 5]
)"},
};

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const CatalogEntry& e : kCatalog) names.push_back(e.name);
  return names;
}

SurfaceChart chart_from_catalog(const std::string& name,
                                const std::map<std::string, double>& params) {
  for (const CatalogEntry& e : kCatalog) {
    if (name == e.name) {
      SurfaceChart chart = chart_from_config(Config::parse_text(e.text));
      for (const auto& [key, value] : params) chart.params[key] = value;
      validate_chart(chart);
      return chart;
    }
  }
  fail("unknown catalog chart '" + name + "'");
}

namespace {

/// One validation sweep. Returns true when <x_u,x_v> > 0 throughout, false
/// when < 0 throughout; throws on degeneracy or mixed signs.
bool validation_sweep(const SurfaceChart& chart, int nu, int nv,
                      ChartValidation& rep) {
  const Signature& sig = ambient_signature(chart.form);
  const GridSpec grid{nu, nv, chart.domain[0], chart.domain[1],
                      chart.domain[2], chart.domain[3]};
  rep = ChartValidation{};
  rep.min_conf = std::numeric_limits<double>::infinity();
  rep.max_conf = -std::numeric_limits<double>::infinity();
  int pos = 0, neg = 0;
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const double u = grid.u_at(i), v = grid.v_at(j);
      const JetVec x = chart.eval(u, v, 1);
      const JetVec xu = jv_deriv_u(x), xv = jv_deriv_v(x);
      const double g = jv_inner(sig, xu, xv).value();
      const double scale = 1.0 + std::abs(g);
      rep.max_null_u = std::max(rep.max_null_u,
                                std::abs(jv_inner(sig, xu, xu).value()) / scale);
      rep.max_null_v = std::max(rep.max_null_v,
                                std::abs(jv_inner(sig, xv, xv).value()) / scale);
      rep.min_conf = std::min(rep.min_conf, g);
      rep.max_conf = std::max(rep.max_conf, g);
      if (std::abs(g) <= kEpsConformal)
        fail("chart '" + chart.name + "': degenerate/causal-type change at " +
             point_str(u, v));
      (g > 0 ? pos : neg) += 1;

      if (chart.form == SpaceForm::S31 || chart.form == SpaceForm::H31) {
        const double c = jv_inner(sig, x, x).value();
        const double target = chart.form == SpaceForm::S31 ? 1.0 : -1.0;
        rep.max_containment = std::max(rep.max_containment, std::abs(c - target));
      } else if (chart.form == SpaceForm::LightCone) {
        const double c = jv_inner(sig, x, x).value();
        double e2 = 0.0;
        for (const Jet2& comp : x) e2 += comp.value() * comp.value();
        rep.max_containment =
            std::max(rep.max_containment, std::abs(c) / std::max(1.0, e2));
      }
    }
  }
  if (pos > 0 && neg > 0)
    fail("chart '" + chart.name +
         "': degenerate/causal-type change (conformal factor changes sign)");
  return pos > 0;
}

}  // namespace

ChartValidation validate_chart(SurfaceChart& chart, int nu, int nv) {
  ChartValidation rep;
  bool positive = validation_sweep(chart, nu, nv, rep);
  if (!positive) {
    chart.v_flipped = !chart.v_flipped;
    const double v0 = chart.domain[2], v1 = chart.domain[3];
    chart.domain[2] = -v1;
    chart.domain[3] = -v0;
    positive = validation_sweep(chart, nu, nv, rep);
    if (!positive)
      fail("chart '" + chart.name +
           "': conformal factor negative after orientation flip");
    rep.flipped = true;
  }
  if (rep.max_null_u > kEpsAsymptotic || rep.max_null_v > kEpsAsymptotic) {
    std::ostringstream os;
    os << "chart '" << chart.name
       << "': coordinate directions are not null (residuals "
       << rep.max_null_u << ", " << rep.max_null_v << ")";
    fail(os.str());
  }
  if ((chart.form == SpaceForm::S31 || chart.form == SpaceForm::H31) &&
      rep.max_containment > kEpsContainment) {
    std::ostringstream os;
    os << "chart '" << chart.name << "': unit constraint violated (residual "
       << rep.max_containment << ")";
    fail(os.str());
  }
  if (chart.form == SpaceForm::LightCone &&
      rep.max_containment > kEpsContainment) {
    std::ostringstream os;
    os << "chart '" << chart.name << "': components are not null (residual "
       << rep.max_containment << ")";
    fail(os.str());
  }
  return rep;
}

SurfaceChart load_chart(const Config& config) {
  SurfaceChart chart = chart_from_config(config);
  validate_chart(chart);
  return chart;
}

SurfaceChart reparametrize(const SurfaceChart& chart, const std::string& f_src,
                           const std::string& g_src,
                           const std::array<double, 4>& domain) {
  if (!chart.remap_u.empty() || !chart.remap_v.empty())
    fail("chart '" + chart.name + "' is already reparametrized");
  SurfaceChart out = chart;
  out.name = chart.name + "_reparam";
  out.remap_u = Expr::parse(f_src);
  // A pending v-flip on the base chart is baked into the map so that the new
  // chart starts with a clean orientation state.
  out.remap_v = Expr::parse(chart.v_flipped ? "-(" + g_src + ")" : g_src);
  out.v_flipped = false;
  out.domain = domain;
  return out;
}

JetVec lift_to_lightcone(const SurfaceChart& chart, double u, double v,
                         int order) {
  const JetVec x = chart.eval(u, v, order);
  switch (chart.form) {
    case SpaceForm::R31: {
      const Jet2 q = jv_inner(kSigR31, x, x);
      JetVec lift(5);
      lift[0] = (q - 1.0) * 0.5;
      lift[1] = x[0];
      lift[2] = x[1];
      lift[3] = x[2];
      lift[4] = (q + 1.0) * 0.5;
      return lift;
    }
    case SpaceForm::S31: {
      JetVec lift(5);
      for (int i = 0; i < 4; ++i) lift[i] = x[i];
      lift[4] = Jet2(order, 1.0);
      return lift;
    }
    case SpaceForm::H31: {
      JetVec lift(5);
      lift[0] = Jet2(order, 1.0);
      for (int i = 0; i < 4; ++i) lift[i + 1] = x[i];
      return lift;
    }
    case SpaceForm::LightCone:
      return x;
  }
  fail("invalid space form");
}

JetVec lift_spaceform_vector(SpaceForm form, const JetVec& x, const JetVec& w) {
  switch (form) {
    case SpaceForm::R31: {
      const Jet2 xw = jv_inner(kSigR31, x, w);
      JetVec lift(5);
      lift[0] = xw;
      lift[1] = w[0];
      lift[2] = w[1];
      lift[3] = w[2];
      lift[4] = xw;
      return lift;
    }
    case SpaceForm::S31: {
      JetVec lift(5);
      for (int i = 0; i < 4; ++i) lift[i] = w[i];
      lift[4] = Jet2(w[0].order(), 0.0);
      return lift;
    }
    case SpaceForm::H31: {
      JetVec lift(5);
      lift[0] = Jet2(w[0].order(), 0.0);
      for (int i = 0; i < 4; ++i) lift[i + 1] = w[i];
      return lift;
    }
    case SpaceForm::LightCone:
      fail("space-form chart required to lift an ambient vector");
  }
  fail("invalid space form");
}

JetVec spaceform_normal(SpaceForm form, const JetVec& x, const JetVec& xu,
                        const JetVec& xv) {
  if (form == SpaceForm::LightCone)
    fail("space-form chart required for a surface normal");
  const Signature& sig = ambient_signature(form);
  const Jet2 g = jv_inner(sig, xu, xv);
  if (std::abs(g.value()) <= kEpsConformal)
    fail("degenerate/causal-type change: <x_u,x_v> vanishes");
  const int dim = sig.dim();
  const int order = xu[0].order();
  // For S31/H31 the position is part of the span to project out; its
  // self-inner-product is +1 / -1, which fixes the sign of the x-term.
  const double sx = form == SpaceForm::S31 ? 1.0 : -1.0;

  std::vector<JetVec> res(dim);
  std::vector<double> norm2(dim);
  for (int i = 0; i < dim; ++i) {
    // Tangential projection of e_i via the null tangent basis:
    //   P(w) = <w,x_v>/g x_u + <w,x_u>/g x_v  (+ <w,x>/<x,x> x for S31/H31)
    const Jet2 exu = xu[i] * sig.sign(i);  // <e_i, x_u>
    const Jet2 exv = xv[i] * sig.sign(i);
    JetVec proj = jv_add(jv_scale(xu, exv / g), jv_scale(xv, exu / g));
    if (form != SpaceForm::R31)
      proj = jv_add(proj, jv_scale(x, (x[i] * sig.sign(i)) * sx));
    JetVec e(dim, Jet2(order, 0.0));
    e[i] = Jet2(order, 1.0);
    res[i] = jv_sub(e, proj);
    norm2[i] = std::abs(jv_inner(sig, res[i], res[i]).value());
  }

  double top = 0.0;
  for (int i = 0; i < dim; ++i) top = std::max(top, norm2[i]);
  if (top <= kEpsPivot) fail("degenerate normal space");
  int pick = -1;
  for (int i = 0; i < dim; ++i)
    if (norm2[i] >= (1.0 - kEpsNormalPivot) * top) pick = i;

  const Jet2 n2 = jv_inner(sig, res[pick], res[pick]);
  return jv_scale(res[pick], 1.0 / sqrt(n2));
}

FundamentalForms fundamental_forms(const SurfaceChart& chart, double u,
                                   double v, int order) {
  if (chart.form == SpaceForm::LightCone)
    fail("fundamental forms require a space-form chart");
  if (order < 2) fail("fundamental forms require jet order >= 2");
  const Signature& sig = ambient_signature(chart.form);
  const JetVec x = chart.eval(u, v, order);
  const JetVec xu = jv_deriv_u(x), xv = jv_deriv_v(x);

  FundamentalForms ff;
  ff.conf = jv_inner(sig, xu, xv) * 2.0;
  if (ff.conf.value() <= kEpsConformal)
    fail("chart '" + chart.name + "': degenerate/causal-type change at " +
         point_str(u, v));
  ff.omega = log(ff.conf) * 0.5;
  ff.normal = spaceform_normal(chart.form, x, xu, xv);
  const JetVec xuu = jv_deriv_u(xu);
  const JetVec xvv = jv_deriv_v(xv);
  const JetVec xuv = jv_deriv_v(xu);
  ff.Omega1 = jv_inner(sig, xuu, ff.normal);
  ff.Omega2 = jv_inner(sig, xvv, ff.normal);
  ff.H = jv_inner(sig, xuv, ff.normal) * 2.0 / ff.conf;
  return ff;
}

}  // namespace lcs
