#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "warpgeo/jet.hpp"
#include "warpgeo/warp.hpp"

namespace warpgeo {

// Constants of a Bochner-flat warped profile. bigK is normally derived from
// (alpha0, d0, b0) by the initial-condition relation, or b0^2 when d0 = 0.
struct CatalogParams {
  double alpha0 = 1.0;
  double d0 = 0.0;  // H0 + 3 alpha0^2 of the base
  double b0 = 0.0;  // Bochner constant, 2a - b = 2 b0
  double bigK = 0.0;
  double t0 = 0.0;

  static double derived_k(double alpha0, double d0, double b0);
  static CatalogParams derived(double alpha0, double d0, double b0, double t0 = 0.0);
};

constexpr int kCatalogTypes = 13;

struct Condition {
  std::string text;
  bool holds = false;
};

struct Type6Aux {
  double lambda = 0.0;
  double mu = 0.0;
  double muBar = 0.0;
  double nu = 0.0;
};

struct PInterval {
  double lo = 0.0;
  double hi = 0.0;  // may be +inf
  bool contains(double p, double margin = 0.0) const { return p > lo + margin && p < hi - margin; }
};

struct FamilyType {
  int type = 0;  // 1..13, 0 when unclassified
  std::string label;
  std::vector<Condition> conditions;
  std::vector<PInterval> pDomain;
  std::optional<Type6Aux> auxiliary;
  // Unclassified outcomes only: why, and which types matched if several did.
  std::string reason;
  std::vector<int> overlapping;

  bool classified() const { return type != 0; }
};

// Printed condition set and p-domain of a given type, evaluated on params.
FamilyType family_type(int type, const CatalogParams& c, double tol = 1e-9);
FamilyType classify(const CatalogParams& c, double tol = 1e-9);
// Constants measured on a metric. For d0 = 0 the measured b0 is mapped to the
// printed convention of the d0 = 0 types (sign flipped, see the audit).
FamilyType classify_measured(const CatalogParams& measured, double tol = 1e-6);

// |16 alpha0^2 d0 + K - (b0 - 2 d0)^2|. Requires d0 != 0.
double constraint_check(const CatalogParams& c);

enum class OdeBranch { Auto, Quartic, Degenerate };

// dp/dt of a Bochner-flat profile. Quartic: d0 != 0. Degenerate (d0 = 0): the
// first integral of the second-order equation in t, dp/dt = p^2((4 alpha0^2 +
// b0) p^2 - b0) / (4 alpha0), with b0 in the geometric convention.
double ode_rhs(double p, const CatalogParams& c, OdeBranch branch = OdeBranch::Auto);
RateJet ode_rate(double p, const CatalogParams& c);

// Printed: the formulas exactly as printed. Rederived: antiderivatives of
// the type's own first-order equation (differs for Types 6, 11, 13).
enum class ClosedForm { Printed, Rederived };

std::string to_string(ClosedForm v);

// Boundary exclusion for printed p-domains.
constexpr double kDomainMargin = 1e-6;

// t(p) anchored so that t(1) = t0. p must lie inside the printed domain.
double closed_form_t(double p, int type, const CatalogParams& c, ClosedForm v = ClosedForm::Printed);
// Unanchored t(p) as a 3-jet, for exact derivatives.
Jet closed_form_t_jet(double p, int type, const CatalogParams& c, ClosedForm v = ClosedForm::Printed);

// Component of the printed domain containing the anchor p = 1.
PInterval anchor_interval(int type, const CatalogParams& c);

// Bracketed inversion of closed_form_t on the anchor component.
double invert_p(double t, int type, const CatalogParams& c, ClosedForm v = ClosedForm::Printed);
// Adaptive integration of ode_rhs from (t0, 1), relative tolerance 1e-10.
double integrate_p(double t, const CatalogParams& c);

struct ConventionResiduals {
  double b0 = 0.0;
  double riccati = 0.0;    // (p'/p)' - (p'/p)^2 - b0/4 + d0/(2p^2)
  double quadratic = 0.0;  // {(p'/p)' - (p'/p)^2}^2 - K/16 - (d0/p^2)(p'/p)^2
  // Same with (p'/p)' in the last factor, as printed. Fails even on the
  // flat profile; kept as a finding.
  double quadraticAsPrinted = 0.0;
  std::optional<double> secondOrderT;  // d0 = 0 only: second-order equation in t as printed
};

struct ClosedFormAudit {
  ClosedForm variant = ClosedForm::Printed;
  double ownOdeResidual = 0.0;  // relative mismatch of dt/dp against the type's printed first-order equation
  double cCoefficient = 0.0;    // max |c| along the profile
  double measuredB0 = 0.0;      // (2a - b)/2, averaged
  double measuredB0Spread = 0.0;
  ConventionResiduals asPrinted;
  ConventionResiduals flipped;  // b0 -> -b0
  bool consistent = false;      // own equation satisfied
  bool bochnerFlat = false;     // c = 0 and 2a - b constant
};

struct CatalogAudit {
  int type = 0;
  CatalogParams params;
  std::vector<double> samples;  // p values used
  ClosedFormAudit printed;
  ClosedFormAudit rederived;
  // Convention zeroing the Riccati-type equation and c for the rederived profile.
  std::optional<double> effectiveB0;
  bool signFlip = false;
  std::vector<std::string> notes;
};

CatalogAudit consistency_audit(int type, const CatalogParams& c, double tol = 1e-8);

// Params with b0 replaced by the audit-resolved geometric value.
CatalogParams resolved_params(int type, const CatalogParams& c);

struct OdeResiduals {
  double riccati = 0.0;
  double quadratic = 0.0;
  double quadraticAsPrinted = 0.0;
};

OdeResiduals ode_residuals(const WarpFunction& warp, const CatalogParams& c, double s);

struct CompletenessRecord {
  std::optional<int> family;  // 1..4
  int profileType = 0;
  std::string label;
  std::vector<std::pair<int, std::vector<Condition>>> tested;
  std::string proviso;
};

CompletenessRecord complete_families(const CatalogParams& c, double tol = 1e-9);

// Valid parameters of each type, scaled to alpha0.
CatalogParams seeded_params(int type, double alpha0 = 1.0, double t0 = 0.0);

// Warp whose dp/dt is the resolved first-order equation on the anchor
// component; t(p) from the rederived closed form.
WarpFunction make_catalog_warp(int type, const CatalogParams& c);

}  // namespace warpgeo
