#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "report.hpp"
#include "warpgeo/errors.hpp"

using namespace warpgeo;
using namespace warpgeo::cli;

namespace {

struct Overrides {
  std::string config;
  std::optional<std::string> out, format, cls, warp;
  std::optional<std::uint64_t> seed;
  std::optional<int> points, n, type;
  std::optional<double> tolAd, tolFd, tolOde, tolRel;
  std::optional<double> alpha0, H0, d0, b0, K, c2, c3, t0, sWindow, defect, domainScale;
  bool canonical = false;
};

template <class T>
void set_if(const std::optional<T>& v, T& dst) {
  if (v) dst = *v;
}
template <class T>
void set_if(const std::optional<T>& v, std::optional<T>& dst) {
  if (v) dst = *v;
}

RunConfig resolve_config(const Overrides& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
  set_if(o.out, c.output.path);
  set_if(o.format, c.output.format);
  if (o.canonical) c.output.canonical = true;
  set_if(o.cls, c.base.cls);
  set_if(o.alpha0, c.base.alpha0);
  set_if(o.H0, c.base.H0);
  set_if(o.n, c.base.n);
  set_if(o.domainScale, c.base.domainScale);
  set_if(o.warp, c.warp.kind);
  if (o.type) {
    c.warp.type = *o.type;
    if (!o.warp) c.warp.kind = "catalog";
  }
  set_if(o.d0, c.warp.d0);
  set_if(o.b0, c.warp.b0);
  set_if(o.K, c.warp.K);
  set_if(o.c2, c.warp.c2);
  set_if(o.c3, c.warp.c3);
  set_if(o.t0, c.warp.t0);
  set_if(o.sWindow, c.warp.sWindow);
  set_if(o.defect, c.warp.defect);
  set_if(o.seed, c.sample.seed);
  set_if(o.points, c.sample.count);
  set_if(o.tolAd, c.tol.ad);
  set_if(o.tolFd, c.tol.fd);
  set_if(o.tolOde, c.tol.ode);
  set_if(o.tolRel, c.tol.relative);
  c.validate();
  return c;
}

void add_common(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config, "JSON config file");
  app.add_option("--out", o.out, "output path (default stdout)");
  app.add_option("--format", o.format, "json or csv");
  app.add_option("--seed", o.seed, "sampling seed");
  app.add_option("--points", o.points, "number of sample points");
  app.add_option("--tol-ad", o.tolAd, "tolerance for exact-derivative residuals");
  app.add_option("--tol-fd", o.tolFd, "tolerance for finite-difference residuals");
  app.add_option("--tol-ode", o.tolOde, "tolerance for profile equation residuals");
  app.add_option("--tol-rel", o.tolRel, "tolerance for scale-normalized identities");
  app.add_flag("--canonical", o.canonical, "omit timings for byte-stable output");
  app.add_option("--class", o.cls, "base class: positive, null or negative");
  app.add_option("--alpha0", o.alpha0, "alpha0 > 0");
  app.add_option("--H0", o.H0, "phi-sectional curvature of the base");
  app.add_option("--n", o.n, "complex dimension of the warped metric");
  app.add_option("--domain-scale", o.domainScale, "chart ball radius of the base");
  app.add_option("--warp", o.warp, "linear, exponential, type9, polynomial or catalog");
  app.add_option("--type", o.type, "catalog type 1..13");
  app.add_option("--d0", o.d0);
  app.add_option("--b0", o.b0);
  app.add_option("--K", o.K);
  app.add_option("--c2", o.c2);
  app.add_option("--c3", o.c3);
  app.add_option("--t0", o.t0);
  app.add_option("--s-window", o.sWindow, "half-width of the sampled s-interval");
  app.add_option("--defect", o.defect, "relative defect of the dilatation factor");
}

void emit(const RunConfig& cfg, const Outcome& r) {
  write_output(cfg.output, cfg.output.format == "csv" ? to_csv(r.rows, r.columns) : dump_json(r.report));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Warped Kahler metrics over Sasakian space forms: construction, curvature and verification"};
  app.require_subcommand(1);
  Overrides o;
  CatalogArgs cat;
  add_common(app, o);

  struct Cmd {
    const char* name;
    const char* help;
    Outcome (*fn)(const RunConfig&);
  };
  const Cmd cmds[] = {
      {"verify-base", "verify the Sasakian space-form base", cmd_verify_base},
      {"build", "metric, complex structure and xi at the sample points", cmd_build},
      {"curvature", "curvature invariants at the sample points", cmd_curvature},
      {"verify-metric", "full identity suite on a warped metric", cmd_verify_metric},
      {"constants", "global constants and classification", cmd_constants},
  };
  const Cmd* chosen = nullptr;
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->fallthrough();
    sub->callback([&chosen, &c] { chosen = &c; });
  }
  CLI::App* catalog = app.add_subcommand("catalog", "profile catalog: classify, solve, audit, complete");
  catalog->fallthrough();
  catalog->require_subcommand(1);
  for (const char* action : {"classify", "solve", "audit", "complete"}) {
    CLI::App* sub = catalog->add_subcommand(action);
    sub->fallthrough();
    sub->callback([&cat, action] { cat.action = action; });
  }
  catalog->add_option("--t", cat.t, "single parameter value");
  catalog->add_option("--t-from", cat.tFrom);
  catalog->add_option("--t-to", cat.tTo);
  catalog->add_option("--steps", cat.steps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const RunConfig cfg = resolve_config(o);
    const Outcome r = chosen ? chosen->fn(cfg) : cmd_catalog(cfg, cat);
    emit(cfg, r);
    return r.pass ? 0 : 1;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
