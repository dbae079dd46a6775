#include <doctest.h>

#include <cmath>
#include <limits>

#include "warpgeo/catalog.hpp"
#include "warpgeo/errors.hpp"
#include "warpgeo/warp.hpp"

using namespace warpgeo;

namespace {

const CatalogParams kFlat{1.0, 4.0, 0.0, 0.0, 0.0};

// p values strictly inside the anchor component, both sides of p = 1
std::vector<double> interior_samples(const PInterval& iv, int count) {
  const double lo = std::max(iv.lo, 1e-3), hi = std::isfinite(iv.hi) ? iv.hi : 4.0;
  const double a = lo + 0.05 * (hi - lo), b = hi - 0.05 * (hi - lo);
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(a + (b - a) * i / (count - 1.0));
  return out;
}

}  // namespace

TEST_CASE("ode_rhs examples") {
  CHECK(ode_rhs(1.0, kFlat) == doctest::Approx(1.0));
  CHECK(ode_rhs(2.0, kFlat) == doctest::Approx(1.0));
  const CatalogParams t9{1.0, 0.0, 0.0, 0.0, 0.0};
  for (double p : {0.5, 1.0, 2.0}) CHECK(ode_rhs(p, t9) == doctest::Approx(std::pow(p, 4)));
  const CatalogParams t9a{2.0, 0.0, 0.0, 0.0, 0.0};
  CHECK(ode_rhs(1.5, t9a) == doctest::Approx(2.0 * std::pow(1.5, 4)));
}

TEST_CASE("constraint_check") {
  CHECK(constraint_check(kFlat) == 0.0);
  for (double b0 : {-3.0, 0.5, 8.0}) {
    const CatalogParams c = CatalogParams::derived(1.0, 4.0, b0);
    CHECK(c.bigK == doctest::Approx((b0 - 8.0) * (b0 - 8.0) - 64.0));
    CHECK(constraint_check(c) < 1e-12);
    CatalogParams d = c;
    d.bigK += 1e-3;
    CHECK(constraint_check(d) == doctest::Approx(1e-3).epsilon(1e-9));
  }
}

TEST_CASE("classify examples and seeded types") {
  CHECK(classify({1.0, 0.0, 0.0, 0.0, 0.0}).type == 9);
  const FamilyType flat = classify(kFlat);
  CHECK_FALSE(flat.classified());
  CHECK(flat.label == "unclassified: flat degenerate");
  CHECK(classify({1.0, 0.0, -1.0, 1.0, 0.0}).type == 10);
  for (int t = 1; t <= kCatalogTypes; ++t) {
    const FamilyType f = classify(seeded_params(t));
    CHECK_MESSAGE(f.type == t, "seed of Type ", t, " classified as ", f.label);
  }
  // K != b0^2 at d0 = 0 is never silently labelled
  const FamilyType bad = classify({1.0, 0.0, 1.0, 3.0, 0.0});
  CHECK_FALSE(bad.classified());
  CHECK_FALSE(bad.reason.empty());
}

TEST_CASE("closed-form t(p) examples") {
  const CatalogParams t9 = seeded_params(9);
  CHECK(closed_form_t(1.0, 9, t9) == doctest::Approx(0.0));
  CHECK(closed_form_t(2.0, 9, t9) == doctest::Approx(7.0 / 24.0).epsilon(1e-12));
  CHECK(closed_form_t(2.0, 12, seeded_params(12)) == doctest::Approx(0.5).epsilon(1e-12));
  // anchored at t0
  CHECK(closed_form_t(1.0, 9, seeded_params(9, 1.0, 0.7)) == doctest::Approx(0.7));
  // outside the printed domain
  CHECK_THROWS(closed_form_t(-1.0, 9, t9));
}

TEST_CASE("inversion round trips") {
  CHECK(invert_p(7.0 / 24.0, 9, seeded_params(9)) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(integrate_p(7.0 / 24.0, {1.0, 0.0, 0.0, 0.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(integrate_p(0.3 + 1.0, {1.0, 4.0, 0.0, 0.0, 0.3}) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(integrate_p(0.5, {2.0, 16.0, 0.0, 0.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-9));

  for (int type = 1; type <= kCatalogTypes; ++type) {
    const CatalogParams c = seeded_params(type);
    for (double p : interior_samples(anchor_interval(type, c), 7)) {
      const double t = closed_form_t(p, type, c, ClosedForm::Rederived);
      CHECK_MESSAGE(invert_p(t, type, c, ClosedForm::Rederived) == doctest::Approx(p).epsilon(1e-9), "Type ", type,
                    " p = ", p);
    }
  }
}

TEST_CASE("ODE against closed form after the sign audit") {
  for (int type : {1, 5, 7, 9, 10, 12}) {
    const CatalogParams c = seeded_params(type);
    const CatalogParams r = resolved_params(type, c);
    double worst = 0.0;
    for (double p : interior_samples(anchor_interval(type, c), 20)) {
      const double t = closed_form_t(p, type, c, ClosedForm::Rederived);
      worst = std::max(worst, std::abs(integrate_p(t, r) - p));
    }
    CHECK_MESSAGE(worst < 1e-6, "Type ", type, " max |dp| = ", worst);
  }
}

TEST_CASE("consistency audit") {
  const CatalogAudit t9 = consistency_audit(9, seeded_params(9));
  CHECK(t9.printed.consistent);
  CHECK(t9.printed.bochnerFlat);
  REQUIRE(t9.effectiveB0.has_value());
  CHECK(*t9.effectiveB0 == 0.0);
  CHECK_FALSE(t9.signFlip);

  const CatalogAudit t12 = consistency_audit(12, seeded_params(12));
  CHECK(t12.rederived.cCoefficient < 1e-8);
  CHECK(t12.rederived.asPrinted.riccati > 0.1);
  CHECK(t12.rederived.flipped.riccati < 1e-8);
  REQUIRE(t12.effectiveB0.has_value());
  CHECK(*t12.effectiveB0 == doctest::Approx(-4.0));
  CHECK(t12.signFlip);
  bool noted = false;
  for (const std::string& n : t12.notes) noted |= n.find("-4*alpha0^2") != std::string::npos;
  CHECK(noted);

  // printed forms of Types 6, 11, 13 do not solve their own equation; the rederived ones do
  for (int type : {6, 11, 13}) {
    const CatalogAudit a = consistency_audit(type, seeded_params(type));
    CHECK_FALSE(a.printed.consistent);
    CHECK(a.rederived.consistent);
    CHECK(a.rederived.bochnerFlat);
  }
  for (int type : {1, 2, 3, 4, 5, 7, 8, 9, 10, 12}) {
    const CatalogAudit a = consistency_audit(type, seeded_params(type));
    CHECK_MESSAGE(a.printed.consistent, "Type ", type);
    CHECK_MESSAGE(a.effectiveB0.has_value(), "Type ", type);
  }
}

TEST_CASE("ODE residuals of analytic warps") {
  const WarpFunction lin = make_warp({"linear", 1.0, 0.0, 0.0, 0.0});
  for (double s : {-0.3, 0.0, 0.5}) {
    const OdeResiduals r = ode_residuals(lin, kFlat, s);
    CHECK(r.riccati < 1e-12);
    CHECK(r.quadratic < 1e-12);
    // as printed, the last factor uses (p'/p)' and fails on the flat profile
    CHECK(r.quadraticAsPrinted > 1e-2);
  }
  const WarpFunction t9 = make_warp({"type9", 1.0, 0.0, 0.0, 0.0});
  for (double s : {-0.3, 0.0, 0.2}) {
    const OdeResiduals r = ode_residuals(t9, {1.0, 0.0, 0.0, 0.0, 0.0}, s);
    CHECK(r.riccati < 1e-9);
    CHECK(r.quadratic < 1e-9);
  }
  // p'' perturbed by 2 eps at p = 1 moves the Riccati residual by 2 eps / p
  const double eps = 1e-4;
  const OdeResiduals q = ode_residuals(make_warp({"polynomial", 1.0, 0.0, eps, 0.0}), kFlat, 0.0);
  CHECK(q.riccati == doctest::Approx(2.0 * eps).epsilon(1e-6));
}

TEST_CASE("complete families") {
  const CompletenessRecord f1 = complete_families({1.0, 4.0, 1.0, 0.0, 0.0});
  REQUIRE(f1.family.has_value());
  CHECK(*f1.family == 1);
  CHECK(f1.profileType == 5);
  CHECK(f1.label == "family 1 of 4");
  CHECK_FALSE(f1.proviso.empty());

  const CompletenessRecord f3 = complete_families({1.0, 0.0, -1.0, 1.0, 0.0});
  REQUIRE(f3.family.has_value());
  CHECK(*f3.family == 3);
  CHECK(f3.profileType == 10);

  const CompletenessRecord none = complete_families({1.0, 0.0, 1.0, 1.0, 0.0});
  CHECK_FALSE(none.family.has_value());
  CHECK(none.label == "no complete family");
  CHECK(none.tested.size() == 4);
}

TEST_CASE("catalog warps start at p = 1 with dp/dt = alpha0") {
  for (int type = 1; type <= kCatalogTypes; ++type) {
    const WarpFunction w = make_catalog_warp(type, seeded_params(type));
    CHECK(w.p_of_s(0.0) == doctest::Approx(1.0));
    CHECK(w.dpdt_at_s(0.0) == doctest::Approx(1.0).epsilon(1e-9));
  }
}
