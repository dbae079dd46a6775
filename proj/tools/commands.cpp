#include "commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "warpgeo/bochner_identities.hpp"
#include "warpgeo/catalog.hpp"
#include "warpgeo/curvature.hpp"
#include "warpgeo/errors.hpp"
#include "warpgeo/qch.hpp"
#include "warpgeo/sampling.hpp"
#include "warpgeo/sasakian.hpp"
#include "warpgeo/warped_kahler.hpp"

namespace warpgeo::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

json vec(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json mat(const Eigen::MatrixXd& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec(m.row(i).transpose()));
  return a;
}

json coords(const ChartPoint& x) {
  json a = json::array();
  for (int i = 0; i < x.dim(); ++i) a.push_back(x[i]);
  return a;
}

double d0_of(double alpha0, double H0) { return H0 + 3.0 * alpha0 * alpha0; }

SignClass class_for(const BaseConfig& b, double d0) {
  if (!b.cls.empty()) return sign_class_from_string(b.cls);
  return d0 > 0.0 ? SignClass::Positive : (d0 < 0.0 ? SignClass::Negative : SignClass::Null);
}

struct Setup {
  SasakianModel base;
  WarpFunction warp;
  std::optional<CatalogParams> catalog;
  int type = 0;
  std::string metricId;
};

// Catalog warps fix d0 (and so H0) and b0; other warps need the base given.
Setup resolve(const RunConfig& cfg) {
  cfg.validate();
  const double a0 = cfg.base.alpha0;
  const WarpConfig& w = cfg.warp;
  std::optional<CatalogParams> cat;
  double H0 = 0.0;
  if (w.kind == "catalog") {
    if (w.type < 1 || w.type > kCatalogTypes) throw InvalidArgument("catalog warp needs --type 1..13");
    const CatalogParams seed = seeded_params(w.type, a0, w.t0);
    double d0 = seed.d0;
    if (w.d0)
      d0 = *w.d0;
    else if (cfg.base.H0)
      d0 = d0_of(a0, *cfg.base.H0);
    if (cfg.base.H0 && std::abs(d0_of(a0, *cfg.base.H0) - d0) > 1e-12 * std::max(1.0, std::abs(d0)))
      throw InvalidArgument("H0 + 3 alpha0^2 differs from the catalog d0");
    double b0 = seed.b0;
    if (w.b0)
      b0 = *w.b0;
    else if (d0 != seed.d0)
      throw InvalidArgument("catalog warp with a non-default d0 needs --b0");
    cat = CatalogParams::derived(a0, d0, b0, w.t0);
    if (w.K) cat->bigK = *w.K;
    H0 = d0 - 3.0 * a0 * a0;
  } else {
    if (!cfg.base.H0) throw InvalidArgument("base H0 is required");
    H0 = *cfg.base.H0;
  }
  const double d0 = d0_of(a0, H0);
  SasakianModel base = build_model(class_for(cfg.base, d0), a0, H0, cfg.base.n, cfg.base.domainScale);
  std::string warpId;
  WarpFunction warp = WarpFunction::linear(a0, w.t0);
  if (cat) {
    warp = make_catalog_warp(w.type, *cat);
    warpId = fmt::format("type{}(d0={:.17g},b0={:.17g})", w.type, cat->d0, cat->b0);
  } else {
    WarpSpec spec;
    spec.kind = w.kind;
    spec.alpha0 = a0;
    spec.t0 = w.t0;
    spec.c2 = w.c2;
    spec.c3 = w.c3;
    warp = make_warp(spec);
    warpId = w.kind == "polynomial" ? fmt::format("polynomial(c2={:.17g},c3={:.17g})", w.c2, w.c3) : w.kind;
  }
  std::string id = fmt::format("{}(alpha0={:.17g},H0={:.17g},n={})/{}", to_string(base.sign_class()), a0, H0,
                               cfg.base.n, warpId);
  if (w.defect != 0.0) id += fmt::format("/defect={:.17g}", w.defect);
  return {std::move(base), std::move(warp), cat, w.type, std::move(id)};
}

json timings(const RunConfig& cfg, Clock::time_point start, int points) {
  if (cfg.output.canonical) return nullptr;
  const double total = seconds_since(start);
  return {{"totalSeconds", total}, {"perPointSeconds", points > 0 ? total / points : 0.0}};
}

// Residual table with tiers; null entries are skipped checks.
struct Checks {
  json values = json::object();
  json skipped = json::object();
  bool pass = true;
  void add(const std::string& name, double v, double tol) {
    values[name] = v;
    if (!(v < tol)) pass = false;
  }
  void skip(const std::string& name, const std::string& why) {
    values[name] = nullptr;
    skipped[name] = why;
  }
  template <class F>
  void guarded(const std::string& name, double tol, F&& f) {
    try {
      add(name, f(), tol);
    } catch (const PreconditionFailed& e) {
      skip(name, e.what());
    }
  }
};

json catalog_params_json(const CatalogParams& c) {
  return {{"alpha0", c.alpha0}, {"d0", c.d0}, {"b0", c.b0}, {"K", c.bigK}, {"t0", c.t0}};
}

json family_json(const FamilyType& f) {
  json j{{"label", f.label}, {"type", f.type}};
  json conds = json::array();
  for (const auto& c : f.conditions) conds.push_back({{"condition", c.text}, {"holds", c.holds}});
  j["conditions"] = conds;
  json dom = json::array();
  for (const auto& iv : f.pDomain) dom.push_back({iv.lo, iv.hi});
  j["pDomain"] = dom;
  if (f.auxiliary)
    j["auxiliary"] = {{"lambda", f.auxiliary->lambda},
                      {"mu", f.auxiliary->mu},
                      {"muBar", f.auxiliary->muBar},
                      {"nu", f.auxiliary->nu}};
  if (!f.classified()) {
    j["reason"] = f.reason;
    j["overlapping"] = f.overlapping;
  }
  return j;
}

json convention_json(const ConventionResiduals& r) {
  json j{{"b0", r.b0}, {"riccati", r.riccati}, {"quadratic", r.quadratic}, {"quadraticAsPrinted", r.quadraticAsPrinted}};
  if (r.secondOrderT) j["secondOrderT"] = *r.secondOrderT;
  return j;
}

json closed_form_audit_json(const ClosedFormAudit& a) {
  return {{"variant", to_string(a.variant)},
          {"ownEquationResidual", a.ownOdeResidual},
          {"consistent", a.consistent},
          {"cCoefficient", a.cCoefficient},
          {"measuredB0", a.measuredB0},
          {"measuredB0Spread", a.measuredB0Spread},
          {"bochnerFlat", a.bochnerFlat},
          {"asPrinted", convention_json(a.asPrinted)},
          {"flipped", convention_json(a.flipped)}};
}

json audit_json(const CatalogAudit& a) {
  json j{{"type", a.type},
         {"params", catalog_params_json(a.params)},
         {"samples", a.samples},
         {"printed", closed_form_audit_json(a.printed)},
         {"rederived", closed_form_audit_json(a.rederived)},
         {"signFlip", a.signFlip},
         {"notes", a.notes}};
  j["effectiveB0"] = a.effectiveB0 ? json(*a.effectiveB0) : json(nullptr);
  return j;
}

std::string measured_label(const FamilyType& f) {
  if (f.classified()) return f.label;
  if (f.reason == "flat degenerate") return "degenerate: flat";
  return f.label;
}

}  // namespace

Outcome cmd_verify_base(const RunConfig& cfg) {
  cfg.validate();
  if (!cfg.base.H0) throw InvalidArgument("base H0 is required");
  if (cfg.base.cls.empty()) throw InvalidArgument("base class is required");
  const auto start = Clock::now();
  const double a0 = cfg.base.alpha0, H0 = *cfg.base.H0;
  const SasakianModel model =
      build_model(sign_class_from_string(cfg.base.cls), a0, H0, cfg.base.n, cfg.base.domainScale);
  const auto pts = sample_points(model.sample_region(), cfg.sample.count, cfg.sample.seed);
  Outcome out;
  json perPoint = json::array();
  for (const auto& x : pts) {
    const StructureResiduals r = verify_structure(model, x);
    Checks c;
    c.add("algebraic", r.algebraic, cfg.tol.ad);
    c.add("xiDerivative", r.xiDerivative, cfg.tol.ad);
    c.add("phiDerivative", r.phiDerivative, cfg.tol.ad);
    c.add("xiCurvature", r.xiCurvature, cfg.tol.ad);
    c.add("spaceForm", r.spaceForm, cfg.tol.ad);
    c.add("phiSectional", std::abs(measured_phi_sectional_curvature(model, x) - H0), cfg.tol.ad);
    c.add("contactForm", r.contactForm, cfg.tol.fd);
    out.pass = out.pass && c.pass;
    json row{{"coords", coords(x)}, {"residuals", c.values}, {"pass", c.pass}};
    perPoint.push_back(row);
    out.rows.push_back(row);
  }
  out.report = {{"command", "verify-base"},
                {"metricId", fmt::format("{}(alpha0={:.17g},H0={:.17g},n={})", cfg.base.cls, a0, H0, cfg.base.n)},
                {"n", model.n()},
                {"alpha0", model.alpha0()},
                {"H0", model.H0()},
                {"d0", model.d0()},
                {"tolerances", {{"ad", cfg.tol.ad}, {"fd", cfg.tol.fd}}},
                {"perPoint", perPoint},
                {"pass", out.pass},
                {"timings", timings(cfg, start, static_cast<int>(pts.size()))}};
  return out;
}

Outcome cmd_build(const RunConfig& cfg) {
  const auto start = Clock::now();
  const Setup su = resolve(cfg);
  const WarpedKahlerMetric wm = build_metric(su.base, su.warp, cfg.warp.defect, cfg.warp.sWindow);
  const auto pts = sample_points(wm.field.region, cfg.sample.count, cfg.sample.seed);
  Outcome out;
  json perPoint = json::array();
  for (const auto& x : pts) {
    const Eigen::MatrixXd g = wm.field.metric.value(x);
    const double minEig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g).eigenvalues().minCoeff();
    const WarpJet j = su.warp.at_s(wm.s_of(x));
    json row{{"coords", coords(x)},
             {"s", wm.s_of(x)},
             {"t", su.warp.t_of_s(wm.s_of(x))},
             {"p", j.p},
             {"dp", j.dp},
             {"minEigenvalue", minEig}};
    out.rows.push_back(row);
    row["g"] = mat(g);
    row["J"] = mat(wm.J(x));
    row["xi"] = vec(wm.xi(x));
    perPoint.push_back(row);
    out.pass = out.pass && minEig > 0.0;
  }
  const auto [sLo, sHi] = su.warp.s_domain();
  out.report = {{"command", "build"},
                {"metricId", su.metricId},
                {"n", wm.n()},
                {"dim", wm.dim()},
                {"warp", {{"label", su.warp.label()}, {"sDomain", {sLo, sHi}}, {"alpha0", su.warp.alpha0()}}},
                {"perPoint", perPoint},
                {"pass", out.pass},
                {"timings", timings(cfg, start, static_cast<int>(pts.size()))}};
  return out;
}

Outcome cmd_curvature(const RunConfig& cfg) {
  const auto start = Clock::now();
  const Setup su = resolve(cfg);
  const WarpedKahlerMetric wm = build_metric(su.base, su.warp, cfg.warp.defect, cfg.warp.sWindow);
  const auto pts = sample_points(wm.field.region, cfg.sample.count, cfg.sample.seed);
  Outcome out;
  json perPoint = json::array();
  for (const auto& x : pts) {
    const CurvatureData cd = wm.field.curvature_at(x);
    const QchCoefficients q = qch_fit(cd, wm.J(x), wm.xi(x));
    json row{{"coords", coords(x)},
             {"s", wm.s_of(x)},
             {"tau", cd.scalar},
             {"kappa", cd.kappa.value_or(std::numeric_limits<double>::quiet_NaN())},
             {"sigma", cd.sigma.value_or(std::numeric_limits<double>::quiet_NaN())},
             {"a", q.a},
             {"b", q.b},
             {"c", q.c},
             {"qchResidual", q.residual},
             {"riemannMaxAbs", cd.riemann.max_abs()},
             {"symmetryDefect", cd.rawSymmetryDefect}};
    out.rows.push_back(row);
    row["ricci"] = mat(Eigen::Map<const Eigen::MatrixXd>(cd.ricci.data().data(), wm.dim(), wm.dim()));
    perPoint.push_back(row);
  }
  out.report = {{"command", "curvature"},
                {"metricId", su.metricId},
                {"n", wm.n()},
                {"perPoint", perPoint},
                {"pass", true},
                {"timings", timings(cfg, start, static_cast<int>(pts.size()))}};
  return out;
}

Outcome cmd_verify_metric(const RunConfig& cfg) {
  const auto start = Clock::now();
  const Setup su = resolve(cfg);
  if (cfg.sample.count < 5) throw InvalidArgument("verify-metric needs at least 5 points");
  const WarpedKahlerMetric wm = build_metric(su.base, su.warp, cfg.warp.defect, cfg.warp.sWindow);
  const auto pts = sample_points(wm.field.region, cfg.sample.count, cfg.sample.seed);
  const double d0 = su.base.d0(), a0 = su.base.alpha0();
  const Tolerances& tol = cfg.tol;
  const GeometricConstants gc = geometric_constants(wm.field, pts, d0);
  const CatalogParams measured{a0, d0, gc.b0, gc.bigK, cfg.warp.t0};

  Outcome out;
  json perPoint = json::array();
  bool bochnerFlat = true;
  for (const auto& x : pts) {
    const CurvatureData cd = wm.field.curvature_at(x);
    const Eigen::MatrixXd J = wm.J(x);
    const Eigen::VectorXd xi = wm.xi(x);
    const QchCoefficients q = qch_fit(cd, J, xi);
    const double s = wm.s_of(x);
    Checks c;
    c.add("qch", q.residual, tol.ad);
    const double bMax = bochner_operator(cd, J, xi).maxModulus;
    c.add("bochner", bMax, tol.ad);
    bochnerFlat = bochnerFlat && bMax < tol.ad;
    c.add("kahler", verify_kahler(wm, x), tol.fd);
    const B0Data bd = b0_data(wm, x);
    c.add("b0", std::max(bd.nablaXiResidual, bd.pStarRelation), tol.fd);
    const XiCurvaturePrediction xp = predicted_xi_curvature(wm, x);
    c.add("xiCurvature", std::max({xp.rXiResidual, xp.rhoXiResidual, xp.kappaResidual, xp.sigmaResidual}), tol.fd);
    const OdeResiduals od = ode_residuals(su.warp, measured, s);
    c.add("riccati", od.riccati, tol.ode);
    c.add("quadratic", od.quadratic, tol.ode);
    json findings = json::object();
    findings["quadraticAsPrinted"] = od.quadraticAsPrinted;
    if (bd.degenerate) {
      c.skip("scalarDistribution", "d tau vanishes");
      findings["divergenceAsPrinted"] = nullptr;
    } else {
      c.guarded("scalarDistribution", tol.relative, [&] {
        const ScalarDistributionData sd = scalar_distribution(wm.field, x);
        const double m = std::max({sd.holomorphicBlock, sd.hermitianBlock, sd.thetaSum, sd.thetaLog, sd.pZero,
                                   sd.pLog, sd.pStarLog, sd.divergenceWithPStar});
        findings["divergenceAsPrinted"] = sd.divergence / sd.scale;
        return m / sd.scale;
      });
    }
    c.guarded("flatQch", tol.fd, [&] { return flat_qch_identities(wm.field, x, gc).max(); });
    c.guarded("xiConsequences", tol.fd, [&] { return xi_consequences(wm.field, x).max(); });
    c.guarded("hessian", tol.relative, [&] {
      const HessianIdentityReport h = hessian_identities(wm, x, gc);
      double m = std::max(h.holomorphicHessian.relative(), h.hessianRicci.relative());
      m = std::max(m, h.analytic ? h.ricciGradientAnalytic.relative() : h.ricciGradient.relative());
      if (h.analytic) findings["laplacianAgreement"] = h.laplacianAgreement;
      return m;
    });
    out.pass = out.pass && c.pass;
    json row{{"coords", coords(x)},
             {"s", s},
             {"p", su.warp.at_s(s).p},
             {"tau", cd.scalar},
             {"kappa", q.kappa},
             {"sigma", q.sigma},
             {"a", q.a},
             {"b", q.b},
             {"c", q.c},
             {"residuals", c.values},
             {"findings", findings},
             {"pass", c.pass}};
    if (!c.skipped.empty()) row["skipped"] = c.skipped;
    perPoint.push_back(row);
    out.rows.push_back(row);
  }

  Checks global;
  global.add("spreadB", gc.spread.B, tol.fd);
  global.add("spreadB0", gc.spread.b0, tol.fd);
  global.add("spreadK", gc.spread.K, tol.fd);
  global.add("bianchi", bianchi_relations(wm.field, pts, gc).max(), tol.fd);
  global.add("KRelation", gc.kRelationResidual / std::max(1.0, std::abs(gc.bigK)), tol.relative);
  global.add("bochnerConstant", bochner_constant_check(wm.field, pts).b0Variation, tol.fd);
  out.pass = out.pass && global.pass;

  const FamilyType fam = classify_measured(measured);
  json classification{{"label", bochnerFlat ? measured_label(fam) : "not Bochner-flat"}};
  if (bochnerFlat) classification["family"] = family_json(fam);
  json report{{"command", "verify-metric"},
              {"metricId", su.metricId},
              {"n", wm.n()},
              {"perPoint", perPoint},
              {"constants",
               {{"B", gc.bochnerB},
                {"b0", gc.b0},
                {"K", gc.bigK},
                {"KFromB", gc.bigKFromB},
                {"KFromBAsPrinted", gc.bigKFromBAsPrinted},
                {"KRelationResidual", gc.kRelationResidual},
                {"KFromFallback", gc.kFromFallback},
                {"d0", d0},
                {"spreads", {{"B", gc.spread.B}, {"b0", gc.spread.b0}, {"K", gc.spread.K}}}}},
              {"global", global.values},
              {"classification", classification},
              {"tolerances", {{"ad", tol.ad}, {"fd", tol.fd}, {"ode", tol.ode}, {"relative", tol.relative}}}};
  if (su.catalog) report["audit"] = audit_json(consistency_audit(su.type, *su.catalog));
  report["pass"] = out.pass;
  report["timings"] = timings(cfg, start, static_cast<int>(pts.size()));
  out.report = std::move(report);
  return out;
}

Outcome cmd_constants(const RunConfig& cfg) {
  const auto start = Clock::now();
  const Setup su = resolve(cfg);
  if (cfg.sample.count < 5) throw InvalidArgument("constants need at least 5 points");
  const WarpedKahlerMetric wm = build_metric(su.base, su.warp, cfg.warp.defect, cfg.warp.sWindow);
  const auto pts = sample_points(wm.field.region, cfg.sample.count, cfg.sample.seed);
  const double d0 = su.base.d0();
  const GeometricConstants gc = geometric_constants(wm.field, pts, d0);
  const FamilyType fam = classify_measured({su.base.alpha0(), d0, gc.b0, gc.bigK, cfg.warp.t0});
  Outcome out;
  out.pass = gc.spread.B < cfg.tol.fd && gc.spread.b0 < cfg.tol.fd && gc.spread.K < cfg.tol.fd;
  json row{{"B", gc.bochnerB}, {"b0", gc.b0}, {"K", gc.bigK}, {"d0", d0}};
  out.rows.push_back(row);
  out.report = {{"command", "constants"},
                {"metricId", su.metricId},
                {"n", wm.n()},
                {"constants",
                 {{"B", gc.bochnerB},
                  {"b0", gc.b0},
                  {"K", gc.bigK},
                  {"KFromB", gc.bigKFromB},
                  {"KFromBAsPrinted", gc.bigKFromBAsPrinted},
                  {"KFromFallback", gc.kFromFallback},
                  {"d0", d0},
                  {"points", gc.points},
                  {"spreads", {{"B", gc.spread.B}, {"b0", gc.spread.b0}, {"K", gc.spread.K}}}}},
                {"classification", {{"label", measured_label(fam)}, {"family", family_json(fam)}}},
                {"pass", out.pass},
                {"timings", timings(cfg, start, static_cast<int>(pts.size()))}};
  return out;
}

namespace {

CatalogParams catalog_params(const RunConfig& cfg, bool needType) {
  const double a0 = cfg.base.alpha0;
  const WarpConfig& w = cfg.warp;
  if (!(a0 > 0.0)) throw InvalidArgument("alpha0 must be positive");
  if (needType && (w.type < 1 || w.type > kCatalogTypes)) throw InvalidArgument("--type 1..13 is required");
  std::optional<CatalogParams> seed;
  if (w.type >= 1 && w.type <= kCatalogTypes) seed = seeded_params(w.type, a0, w.t0);
  double d0 = 0.0, b0 = 0.0;
  if (w.d0)
    d0 = *w.d0;
  else if (cfg.base.H0)
    d0 = d0_of(a0, *cfg.base.H0);
  else if (seed)
    d0 = seed->d0;
  else
    throw InvalidArgument("--d0 is required");
  if (w.b0)
    b0 = *w.b0;
  else if (seed && seed->d0 == d0)
    b0 = seed->b0;
  else
    throw InvalidArgument("--b0 is required");
  CatalogParams c = CatalogParams::derived(a0, d0, b0, w.t0);
  if (w.K) c.bigK = *w.K;
  return c;
}

// p, dp/dt and the curvature coefficients of the resolved profile at p.
json profile_row(double t, double p, const CatalogParams& resolved, int n) {
  const RateJet r = ode_rate(p, resolved);
  WarpJet j;
  j.p = p;
  j.dp = std::sqrt(resolved.alpha0 * r.v);
  j.d2p = 0.5 * resolved.alpha0 * r.dv;
  j.d3p = 0.5 * resolved.alpha0 * r.d2v * j.dp;
  const QchCoefficientsAnalytic q = qch_coefficients_from_jet(resolved.d0, j);
  const double tau = (n + 1) * (n * q.a + q.b) + 2.0 * q.c;
  return {{"t", t}, {"p", p}, {"dp_dt", r.v}, {"a", q.a}, {"b", q.b}, {"c", q.c}, {"tau", tau}};
}

}  // namespace

Outcome cmd_catalog(const RunConfig& cfg, const CatalogArgs& args) {
  cfg.validate();
  Outcome out;
  const std::string& act = args.action;
  if (act == "classify") {
    const CatalogParams c = catalog_params(cfg, false);
    const FamilyType f = classify(c);
    out.report = {{"command", "catalog classify"},
                  {"label", f.label},
                  {"params", catalog_params_json(c)},
                  {"classification", family_json(f)}};
    if (c.d0 != 0.0) out.report["constraintResidual"] = constraint_check(c);
    out.rows.push_back({{"label", f.label}, {"type", f.type}});
    return out;
  }
  if (act == "complete") {
    const CatalogParams c = catalog_params(cfg, false);
    const CompletenessRecord r = complete_families(c);
    json tested = json::array();
    for (const auto& [fam, conds] : r.tested) {
      json cj = json::array();
      for (const auto& x : conds) cj.push_back({{"condition", x.text}, {"holds", x.holds}});
      tested.push_back({{"family", fam}, {"conditions", cj}});
    }
    out.report = {{"command", "catalog complete"},
                  {"params", catalog_params_json(c)},
                  {"label", r.label},
                  {"family", r.family ? json(*r.family) : json(nullptr)},
                  {"profileType", r.profileType},
                  {"tested", tested},
                  {"proviso", r.proviso}};
    out.rows.push_back({{"label", r.label}, {"profileType", r.profileType}});
    return out;
  }
  if (act == "audit") {
    const CatalogParams c = catalog_params(cfg, true);
    const CatalogAudit a = consistency_audit(cfg.warp.type, c);
    out.report = {{"command", "catalog audit"}, {"audit", audit_json(a)}};
    out.rows.push_back({{"type", a.type},
                        {"printedConsistent", a.printed.consistent},
                        {"rederivedBochnerFlat", a.rederived.bochnerFlat},
                        {"signFlip", a.signFlip}});
    return out;
  }
  if (act == "solve") {
    const int type = cfg.warp.type;
    const CatalogParams c = catalog_params(cfg, true);
    const CatalogAudit audit = consistency_audit(type, c);
    if (!audit.effectiveB0) throw PreconditionFailed("audit did not resolve a sign convention for this type");
    CatalogParams resolved = c;
    resolved.b0 = *audit.effectiveB0;
    const ClosedForm variant = audit.printed.consistent ? ClosedForm::Printed : ClosedForm::Rederived;
    std::vector<double> ts;
    if (args.t) {
      ts.push_back(*args.t);
    } else if (args.tFrom && args.tTo) {
      if (args.steps < 2) throw InvalidArgument("--steps must be at least 2");
      for (int i = 0; i < args.steps; ++i) ts.push_back(*args.tFrom + (*args.tTo - *args.tFrom) * i / (args.steps - 1));
    } else {
      throw InvalidArgument("catalog solve needs --t or --t-from/--t-to");
    }
    json rows = json::array();
    double maxDev = 0.0;
    for (double t : ts) {
      const double p = invert_p(t, type, c, variant);
      const double pOde = integrate_p(t, resolved);
      maxDev = std::max(maxDev, std::abs(p - pOde));
      json row = profile_row(t, p, resolved, cfg.base.n);
      out.rows.push_back(row);
      row["pOde"] = pOde;
      rows.push_back(row);
    }
    out.pass = maxDev < cfg.tol.ode;
    out.columns = {"t", "p", "dp_dt", "a", "b", "c", "tau"};
    out.report = {{"command", "catalog solve"},
                  {"type", type},
                  {"params", catalog_params_json(c)},
                  {"effectiveB0", resolved.b0},
                  {"closedForm", to_string(variant)},
                  {"maxClosedFormOdeDeviation", maxDev},
                  {"notes", audit.notes}};
    if (ts.size() == 1) {
      for (auto it = rows[0].begin(); it != rows[0].end(); ++it) out.report[it.key()] = it.value();
    } else {
      out.report["table"] = rows;
    }
    out.report["pass"] = out.pass;
    return out;
  }
  throw InvalidArgument("unknown catalog action " + act);
}

}  // namespace warpgeo::cli
