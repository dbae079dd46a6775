// Acceptance run: one PASS/FAIL line per criterion on stdout, timings on stderr.

#include <fmt/core.h>

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "warpgeo/bochner_identities.hpp"
#include "warpgeo/catalog.hpp"
#include "warpgeo/frame.hpp"
#include "warpgeo/invariant_tensors.hpp"
#include "warpgeo/qch.hpp"
#include "warpgeo/sampling.hpp"
#include "warpgeo/sasakian.hpp"
#include "warpgeo/warped_kahler.hpp"

using namespace warpgeo;

namespace {

constexpr double kAd = 1e-8;
constexpr double kFd = 1e-5;
constexpr double kOde = 1e-6;
constexpr double kRel = 1e-3;
constexpr std::uint64_t kSeed = 42;

struct Verdict {
  bool pass = true;
  std::vector<std::string> failed;
  std::string detail;

  // Records value < bound under a name; keeps the worst ratio for the detail line.
  void below(const std::string& what, double value, double bound) {
    if (!(value < bound)) {
      pass = false;
      failed.push_back(fmt::format("{} = {:.3g} (bound {:.0e})", what, value, bound));
    }
  }
  void require(const std::string& what, bool ok) {
    if (!ok) {
      pass = false;
      failed.push_back(what);
    }
  }
};

SignClass class_of(double d0) {
  if (d0 > 0.0) return SignClass::Positive;
  if (d0 < 0.0) return SignClass::Negative;
  return SignClass::Null;
}

WarpedKahlerMetric catalog_metric(int type, double alpha0 = 1.0) {
  const CatalogParams c = seeded_params(type, alpha0);
  return build_metric(build_model(class_of(c.d0), alpha0, c.d0 - 3.0 * alpha0 * alpha0), make_catalog_warp(type, c));
}

WarpedKahlerMetric type9_metric() {
  return build_metric(build_model(SignClass::Null, 1.0, -3.0), make_warp({"type9", 1.0, 0.0, 0.0, 0.0}));
}

Eigen::MatrixXd standard_j(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    J(2 * a + 1, 2 * a) = 1.0;
    J(2 * a, 2 * a + 1) = -1.0;
  }
  return J;
}

Verdict base_verification() {
  Verdict v;
  double worst = 0.0;
  for (const double H0 : {1.0, -3.0, -7.0}) {
    const SasakianModel m = build_model(class_of(H0 + 3.0), 1.0, H0);
    for (const ChartPoint& x : sample_points(m.sample_region(), 20, kSeed)) {
      const StructureResiduals r = verify_structure(m, x);
      const double all = std::max(r.max_ad(), r.contactForm);
      worst = std::max(worst, all);
      v.below(fmt::format("H0={} structure", H0), all, kAd);
      v.below(fmt::format("H0={} space form", H0), r.spaceForm, kAd);
    }
  }
  v.detail = fmt::format("max residual {:.2e} over 3 models x 20 points", worst);
  return v;
}

Verdict flat_recovery() {
  Verdict v;
  const WarpedKahlerMetric wm =
      build_metric(build_model(SignClass::Positive, 1.0, 1.0), make_warp({"linear", 1.0, 0.0, 0.0, 0.0}));
  double worst = 0.0;
  for (const ChartPoint& x : sample_points(wm.field.region, 20, kSeed)) {
    const double r = wm.field.curvature_at(x).riemann.max_abs();
    worst = std::max(worst, r);
    v.below("|R|_inf", r, kAd);
  }
  v.detail = fmt::format("max |R| {:.2e} at 20 points", worst);
  return v;
}

Verdict type9_end_to_end() {
  Verdict v;
  const WarpedKahlerMetric wm = type9_metric();
  const std::vector<ChartPoint> pts = sample_points(wm.field.region, 10, kSeed);
  double kahler = 0.0, fit = 0.0, bochner = 0.0;
  for (const ChartPoint& x : pts) {
    const double p = wm.warp.at_s(wm.s_of(x)).p;
    const CurvatureData cd = wm.field.curvature_at(x);
    const QchCoefficients q = qch_fit(cd, wm.J(x), wm.xi(x));
    kahler = std::max(kahler, verify_kahler(wm, x));
    fit = std::max({fit, std::abs(q.a + 4.0 * p * p), std::abs(q.b + 8.0 * p * p), std::abs(q.c)});
    bochner = std::max(bochner, bochner_operator(cd, wm.J(x), wm.xi(x)).norm);
  }
  v.below("kahler", kahler, 1e-5);
  v.below("qch coefficients", fit, 1e-6);
  v.below("|B(R)|", bochner, 1e-6);

  const GeometricConstants gc = geometric_constants(wm.field, pts, 0.0);
  v.below("|b0|", std::abs(gc.b0), 1e-6);
  v.below("|K|", std::abs(gc.bigK), 1e-6);
  v.below("spread b0", gc.spread.b0, kFd);
  v.below("spread K", gc.spread.K, kFd);
  v.below("spread B", gc.spread.B, kFd);

  // p = 1 at s = 0
  const ChartPoint o{0.1, -0.05, 0.08, 0.02, 0.3, 0.0};
  const FlatQchReport f = flat_qch_identities(wm.field, o, gc);
  v.require("flat QCH identities not singular", !f.singular);
  v.below("flat QCH identities", f.max(), 1e-6);
  const CurvatureData cd = wm.field.curvature_at(o);
  const QchCoefficients q = qch_fit(cd, wm.J(o), wm.xi(o));
  const B0Data b0 = b0_data(wm, o);
  v.below("kappa + 12", std::abs(*cd.kappa + 12.0), 1e-6);
  v.below("sigma + 20", std::abs(*cd.sigma + 20.0), 1e-6);
  v.below("a + 4", std::abs(q.a + 4.0), 1e-6);
  v.below("b + 8", std::abs(q.b + 8.0), 1e-6);
  v.below("k^2 - 4", std::abs(b0.k * b0.k - 4.0), 1e-6);
  v.below("tau + 80", std::abs(cd.scalar + 80.0), 1e-6);
  v.detail = fmt::format("kahler {:.1e}, fit {:.1e}, |B| {:.1e}, b0 {:.1e}, K {:.1e}, identities {:.1e}", kahler, fit,
                         bochner, gc.b0, gc.bigK, f.max());
  return v;
}

Verdict kahler_iff() {
  Verdict v;
  const SasakianModel base = build_model(SignClass::Null, 1.0, -3.0);
  const WarpFunction w = make_warp({"type9", 1.0, 0.0, 0.0, 0.0});
  std::string detail;
  for (const ChartPoint& x : sample_points(build_metric(base, w).field.region, 3, kSeed)) {
    const double floor = verify_kahler(build_metric(base, w), x);
    const double r3 = verify_kahler(build_metric(base, w, 1e-3), x);
    const double r2 = verify_kahler(build_metric(base, w, 1e-2), x);
    v.require("monotone in eps", r2 > r3 && r3 > floor);
    v.require("eps = 1e-3 above 10x floor", r3 > 10.0 * floor);
    v.require("eps = 1e-2 above 10x floor", r2 > 10.0 * floor);
    if (detail.empty()) detail = fmt::format("floor {:.1e}, eps 1e-3 -> {:.1e}, eps 1e-2 -> {:.1e}", floor, r3, r2);
  }
  v.detail = detail + " (3 points)";
  return v;
}

Verdict bochner_algebra() {
  Verdict v;
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  std::normal_distribution<double> N;
  double worstB = 0.0, worstFit = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 2;
    const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    const Eigen::MatrixXd J = standard_j(n);
    Eigen::VectorXd xi(2 * n);
    for (int i = 0; i < 2 * n; ++i) xi(i) = N(rng);
    xi.normalize();
    const InvariantTensors t = invariant_tensors(g, J, xi);
    const double a = U(rng), b = U(rng), c = U(rng);
    const Tensor R = qch_tensor(t, a, b, c);
    const QchCoefficients q = qch_fit(R, g, J, xi);
    const BcrCpReport r = verify_bcr_cp(R, g, J, adapt_frame(g, J, xi), t, q);
    worstB = std::max(worstB, r.residual);
    worstFit = std::max({worstFit, std::abs(q.a - a), std::abs(q.b - b), std::abs(q.c - c)});
  }
  v.below("|B(R) - cP|", worstB, 1e-9);
  v.below("coefficient recovery", worstFit, 1e-12);
  v.detail = fmt::format("200 tensors (n = 3, 4): |B(R) - cP| {:.1e}, fit {:.1e}", worstB, worstFit);
  return v;
}

Verdict catalog_audit() {
  Verdict v;
  double ode = 0.0, bochner = 0.0, spread = 0.0;
  for (const int type : {1, 5, 7, 9, 10, 12}) {
    const CatalogParams c = seeded_params(type);
    const CatalogParams r = resolved_params(type, c);
    const PInterval iv = anchor_interval(type, c);
    const double lo = std::max(iv.lo, 0.05), hi = std::isfinite(iv.hi) ? std::min(iv.hi, 20.0) : 4.0;
    double dev = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double p = lo + (hi - lo) * (0.05 + 0.9 * i / 19.0);
      dev = std::max(dev, std::abs(integrate_p(closed_form_t(p, type, c, ClosedForm::Printed), r) - p));
    }
    v.below(fmt::format("Type {} ODE vs closed form", type), dev, kOde);
    ode = std::max(ode, dev);

    const WarpedKahlerMetric wm = catalog_metric(type);
    const BochnerConstantReport bc = bochner_constant_check(wm.field, sample_points(wm.field.region, 5, kSeed));
    v.below(fmt::format("Type {} |B(R)|", type), bc.bochnerMax, 1e-6);
    v.below(fmt::format("Type {} 2a-b spread", type), bc.b0Variation, kFd);
    bochner = std::max(bochner, bc.bochnerMax);
    spread = std::max(spread, bc.b0Variation);
  }
  int flips = 0;
  for (int type = 10; type <= 13; ++type) {
    const CatalogAudit a = consistency_audit(type, seeded_params(type));
    const bool noted = std::any_of(a.notes.begin(), a.notes.end(),
                                   [](const std::string& s) { return s.rfind("sign convention", 0) == 0; });
    v.require(fmt::format("Type {} sign finding recorded", type), a.signFlip && noted);
    flips += a.signFlip && noted;
  }
  v.detail = fmt::format("ODE dev {:.1e}, |B| {:.1e}, 2a-b spread {:.1e}, sign finding on {}/4 of Types 10-13", ode,
                         bochner, spread, flips);
  return v;
}

// a + k^2 against d0/p^2 on a metric; returns the worst deviation.
double sign_class_deviation(const WarpedKahlerMetric& wm, double d0) {
  double worst = 0.0;
  for (const ChartPoint& x : sample_points(wm.field.region, 5, kSeed)) {
    const double p = wm.warp.at_s(wm.s_of(x)).p;
    const QchCoefficients q = qch_fit(wm.field.curvature_at(x), wm.J(x), wm.xi(x));
    const double k = b0_data(wm, x).k;
    worst = std::max(worst, std::abs(q.a + k * k - d0 / (p * p)));
  }
  return worst;
}

Verdict sign_class() {
  Verdict v;
  double worst = 0.0;
  for (const int type : {1, 9, 7}) {
    const CatalogParams c = seeded_params(type);
    const double dev = sign_class_deviation(catalog_metric(type), c.d0);
    v.below(fmt::format("d0 = {} a + k^2", c.d0), dev, 1e-6);
    worst = std::max(worst, dev);

    // bihomothety (2, 1): alpha0 -> 1/2, d0 -> d0/4, class unchanged
    const SasakianModel base = build_model(class_of(c.d0), 1.0, c.d0 - 3.0);
    const SasakianModel scaled = bihomothety(base, {2.0, 1.0});
    const CatalogParams cs = seeded_params(type, 0.5);
    v.require(fmt::format("d0 = {} class kept", c.d0), scaled.sign_class() == base.sign_class());
    v.below(fmt::format("d0 = {} scaled d0", c.d0), std::abs(scaled.d0() - c.d0 / 4.0), 1e-12);
    v.below(fmt::format("d0 = {} scaled d0 vs params", c.d0), std::abs(scaled.d0() - cs.d0), 1e-12);
    const double devScaled = sign_class_deviation(build_metric(scaled, make_catalog_warp(type, cs)), scaled.d0());
    v.below(fmt::format("d0 = {} scaled a + k^2", cs.d0), devScaled, 1e-6);
    worst = std::max(worst, devScaled);
  }
  v.detail = fmt::format("max |a + k^2 - d0/p^2| {:.1e} over 3 classes and their (2,1) rescalings", worst);
  return v;
}

Verdict scalar_distribution_properties() {
  Verdict v;
  const WarpedKahlerMetric wm = type9_metric();
  const std::vector<ChartPoint> pts = sample_points(wm.field.region, 5, kSeed);
  const GeometricConstants gc = geometric_constants(wm.field, pts, 0.0);
  double lines[4] = {0.0, 0.0, 0.0, 0.0};
  double corrected = 0.0, gradient = 0.0, agreement = 0.0;
  for (const ChartPoint& x : pts) {
    const ScalarDistributionData sd = scalar_distribution(wm.field, x);
    const double s = sd.scale;
    lines[0] = std::max(lines[0], std::max(sd.holomorphicBlock, sd.hermitianBlock) / s);
    lines[1] = std::max(lines[1], std::max(sd.thetaSum, sd.thetaLog) / s);
    lines[2] = std::max(lines[2], std::max({sd.pZero, sd.pLog, sd.pStarLog}) / s);
    lines[3] = std::max(lines[3], sd.divergence / s);
    corrected = std::max(corrected, sd.divergenceWithPStar / s);
    const HessianIdentityReport h = hessian_identities(wm, x, gc);
    gradient = std::max(gradient, h.ricciGradientAnalytic.relative());
    agreement = std::max(agreement, h.laplacianAgreement);
  }
  for (int i = 0; i < 4; ++i) v.below(fmt::format("scalar distribution line {}", i + 1), lines[i], kRel);
  v.below("ricci gradient identity (analytic Laplacian)", gradient, kRel);
  v.below("analytic Laplacian paths", agreement, 1e-7);
  v.detail = fmt::format("lines {:.1e} {:.1e} {:.1e} {:.3g}; divergence with 2p* {:.1e}; gradient {:.1e}; Laplacian "
                         "paths {:.1e}",
                         lines[0], lines[1], lines[2], lines[3], corrected, gradient, agreement);
  return v;
}

// The four complete families, straight from their printed inequalities.
int family_oracle(double alpha0, double d0, double b0, double K) {
  const double a2 = alpha0 * alpha0;
  if (K == 0.0 && b0 > 0.0 && d0 > 0.0) return 1;
  if (d0 < 0.0 && K >= 0.0 && K >= -16.0 * a2 * d0 && -2.0 * a2 - K / (8.0 * a2) <= b0 && b0 < -std::sqrt(K))
    return 2;
  if (d0 == 0.0 && K >= 0.0 && b0 == -std::sqrt(K) && b0 < 0.0) return 3;
  if (d0 == 0.0 && K >= 0.0 && b0 == std::sqrt(K) && 4.0 * a2 < b0) return 4;
  return 0;
}

Verdict completeness_grid() {
  Verdict v;
  constexpr double d = 1e-3;
  struct P {
    double alpha0, d0, b0, K;
  };
  // Per family, a product of values on both sides of every printed boundary,
  // thinned to 50 evenly spaced entries.
  std::vector<std::vector<P>> grids(4);
  for (double d0 : {-d, 0.0, d, 4.0})
    for (double b0 : {-d, 0.0, d, 1.0})
      for (double K : {-d, 0.0, d}) grids[0].push_back({1.0, d0, b0, K});
  for (double d0 : {d, 0.0, -0.25 + d, -0.25, -0.25 - d})
    for (double K : {4.0 - d, 4.0, 4.0 + d, 9.0}) {
      const double lo = -2.0 - K / 8.0, up = -std::sqrt(K);
      for (double b0 : {lo - d, lo, lo + d, 0.5 * (lo + up), up - d, up, up + d}) grids[1].push_back({1.0, d0, b0, K});
    }
  for (double alpha0 : {1.0, 2.0})
    for (double d0 : {-d, 0.0, d})
      for (double K : {0.0, 1.0, 4.0})
        for (double b0 : {-std::sqrt(K) - d, -std::sqrt(K), -std::sqrt(K) + d, std::sqrt(K)})
          grids[2].push_back({alpha0, d0, b0, K});
  for (double alpha0 : {1.0, 1.5})
    for (double d0 : {-d, 0.0, d})
      for (double K : {9.0, 16.0, 16.0 * alpha0 * alpha0 * alpha0 * alpha0, 25.0 * alpha0 * alpha0 * alpha0 * alpha0})
        for (double b0 : {std::sqrt(K) - d, std::sqrt(K), std::sqrt(K) + d, -std::sqrt(K)})
          grids[3].push_back({alpha0, d0, b0, K});

  int checked = 0, mismatches = 0;
  std::vector<int> members(4, 0);
  for (int f = 0; f < 4; ++f) {
    const std::vector<P>& g = grids[static_cast<std::size_t>(f)];
    for (int i = 0; i < 50; ++i) {
      const P& q = g[static_cast<std::size_t>(i * (static_cast<int>(g.size()) - 1) / 49)];
      const int want = family_oracle(q.alpha0, q.d0, q.b0, q.K);
      const CompletenessRecord r = complete_families({q.alpha0, q.d0, q.b0, q.K, 0.0});
      const int got = r.family.value_or(0);
      ++checked;
      if (want == f + 1) ++members[static_cast<std::size_t>(f)];
      if (got != want) {
        ++mismatches;
        v.require(fmt::format("family {} at (alpha0 {}, d0 {}, b0 {}, K {}): got {}", want, q.alpha0, q.d0, q.b0, q.K,
                              got),
                  false);
      }
    }
    v.require(fmt::format("family {} grid has members and non-members", f + 1),
              members[static_cast<std::size_t>(f)] > 0 && members[static_cast<std::size_t>(f)] < 50);
  }
  v.detail = fmt::format("{} grid points, {} mismatches, members per family {}/{}/{}/{}", checked, mismatches,
                         members[0], members[1], members[2], members[3]);
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {"base-verification", base_verification},
      {"flat-recovery", flat_recovery},
      {"type9-end-to-end", type9_end_to_end},
      {"kahler-iff", kahler_iff},
      {"bochner-operator-algebra", bochner_algebra},
      {"catalog-audit", catalog_audit},
      {"sign-class-invariant", sign_class},
      {"scalar-distribution", scalar_distribution_properties},
      {"completeness-families", completeness_grid},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.failed.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string line = fmt::format("{} {} {} | {}", i + 1, criteria[i].name, v.pass ? "PASS" : "FAIL", v.detail);
    if (!v.pass) {
      line += " | failed:";
      for (const std::string& f : v.failed) line += " " + f + ";";
    }
    fmt::print("{}\n", line);
    std::fflush(stdout);
    fmt::print(stderr, "  criterion {} took {:.1f} s\n", i + 1, secs);
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
