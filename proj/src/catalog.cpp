#include "warpgeo/catalog.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>

#include "warpgeo/errors.hpp"
#include "warpgeo/warped_kahler.hpp"

namespace warpgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_type(int type) {
  if (type < 1 || type > kCatalogTypes) throw InvalidArgument(fmt::format("unknown catalog type {}", type));
}

// Comparisons on the natural scale of the constants; K compared via sqrt scale.
struct Cmp {
  double s;
  double tol;
  bool lt(double a, double b) const { return b - a > tol * s; }
  bool le(double a, double b) const { return b - a >= -tol * s; }
  bool eq(double a, double b) const { return std::abs(a - b) <= tol * s; }
  bool kZero(double k) const { return std::abs(k) <= tol * s * s; }
  bool kPos(double k) const { return k > tol * s * s; }
  bool kNeg(double k) const { return k < -tol * s * s; }
};

Cmp make_cmp(const CatalogParams& c, double tol) {
  const double s = std::max({1.0, std::abs(c.b0), std::sqrt(std::abs(c.bigK)), c.alpha0 * c.alpha0, std::abs(c.d0)});
  return {s, tol};
}

double sqrt_k(const CatalogParams& c) { return std::sqrt(std::max(c.bigK, 0.0)); }

Type6Aux type6_aux(const CatalogParams& c) {
  Type6Aux x;
  x.lambda = std::sqrt(c.b0 * c.b0 - c.bigK);
  x.mu = 2.0 * std::sqrt(c.d0) * std::sqrt(x.lambda + c.b0);
  x.muBar = 2.0 * std::sqrt(c.d0) * std::sqrt(x.lambda - c.b0);
  x.nu = 2.0 * c.d0;
  return x;
}

// Printed first-order equation of the type: the quartic one for d0 != 0, the
// integrand of the printed integral for d0 = 0.
double printed_rate(double p, int type, const CatalogParams& c) {
  if (type <= 8) return ode_rhs(p, c, OdeBranch::Quartic);
  const double a2 = c.alpha0 * c.alpha0;
  return p * p * ((4.0 * a2 - c.b0) * p * p + c.b0) / (4.0 * c.alpha0);
}

}  // namespace

double CatalogParams::derived_k(double alpha0, double d0, double b0) {
  if (d0 == 0.0) return b0 * b0;
  return (b0 - 2.0 * d0) * (b0 - 2.0 * d0) - 16.0 * alpha0 * alpha0 * d0;
}

CatalogParams CatalogParams::derived(double alpha0, double d0, double b0, double t0) {
  if (!(alpha0 > 0.0)) throw InvalidArgument("alpha0 must be positive");
  return {alpha0, d0, b0, derived_k(alpha0, d0, b0), t0};
}

double constraint_check(const CatalogParams& c) {
  if (c.d0 == 0.0) throw InvalidArgument("initial-condition relation needs d0 != 0");
  const double r = c.b0 - 2.0 * c.d0;
  return std::abs(16.0 * c.alpha0 * c.alpha0 * c.d0 + c.bigK - r * r);
}

double ode_rhs(double p, const CatalogParams& c, OdeBranch branch) {
  if (!(p > 0.0)) throw DomainError("catalog equation needs p > 0");
  if (branch == OdeBranch::Auto) branch = c.d0 == 0.0 ? OdeBranch::Degenerate : OdeBranch::Quartic;
  const double p2 = p * p;
  if (branch == OdeBranch::Quartic) {
    if (c.d0 == 0.0) throw InvalidArgument("quartic branch of the catalog equation needs d0 != 0");
    return ((c.b0 * c.b0 - c.bigK) * p2 * p2 - 4.0 * c.b0 * c.d0 * p2 + 4.0 * c.d0 * c.d0) / (16.0 * c.alpha0 * c.d0);
  }
  return p2 * ((4.0 * c.alpha0 * c.alpha0 + c.b0) * p2 - c.b0) / (4.0 * c.alpha0);
}

RateJet ode_rate(double p, const CatalogParams& c) {
  RateJet r;
  r.v = ode_rhs(p, c);
  if (c.d0 != 0.0) {
    const double A = c.b0 * c.b0 - c.bigK, B = 4.0 * c.b0 * c.d0, D = 16.0 * c.alpha0 * c.d0;
    r.dv = (4.0 * A * p * p * p - 2.0 * B * p) / D;
    r.d2v = (12.0 * A * p * p - 2.0 * B) / D;
  } else {
    const double A = 4.0 * c.alpha0 * c.alpha0 + c.b0, D = 4.0 * c.alpha0;
    r.dv = (4.0 * A * p * p * p - 2.0 * c.b0 * p) / D;
    r.d2v = (12.0 * A * p * p - 2.0 * c.b0) / D;
  }
  return r;
}

std::string to_string(ClosedForm v) { return v == ClosedForm::Printed ? "printed" : "rederived"; }

FamilyType family_type(int type, const CatalogParams& c, double tol) {
  check_type(type);
  const Cmp q = make_cmp(c, tol);
  const double a2 = c.alpha0 * c.alpha0, K = c.bigK, b = c.b0, d = c.d0, sK = sqrt_k(c);
  FamilyType f;
  f.type = type;
  f.label = fmt::format("Type {}", type);
  auto add = [&f](std::string text, bool holds) { f.conditions.push_back({std::move(text), holds}); };
  auto dom = [&f](double lo, double hi) { f.pDomain.push_back({lo, hi}); };
  const bool dPos = d > q.tol * q.s, dNeg = d < -q.tol * q.s, dZero = !dPos && !dNeg;
  const double lower7 = -2.0 * a2 - K / (8.0 * a2);
  switch (type) {
    case 1:
      add("d0 > 0", dPos);
      add("K > 0", q.kPos(K));
      add("-sqrt(K) < b0 < sqrt(K)", q.lt(-sK, b) && q.lt(b, sK));
      dom(0.0, std::sqrt(2.0 * d / (sK + b)));
      break;
    case 2:
      add("d0 > 0", dPos);
      add("K > 0", q.kPos(K));
      add("-(16 alpha0^4 + K)/(8 alpha0^2) <= b0 < -sqrt(K)",
          q.le(-(16.0 * a2 * a2 + K) / (8.0 * a2), b) && q.lt(b, -sK));
      dom(0.0, kInf);
      break;
    case 3:
      add("d0 > 0", dPos);
      add("K > 0", q.kPos(K));
      add("b0 > sqrt(K)", q.lt(sK, b));
      dom(0.0, std::sqrt(2.0 * d / (b + sK)));
      dom(std::sqrt(2.0 * d / (b - sK)), kInf);
      break;
    case 4:
      add("d0 > 0", dPos);
      add("K = 0", q.kZero(K));
      add("-2 alpha0^2 <= b0 < 0", q.le(-2.0 * a2, b) && q.lt(b, 0.0));
      dom(0.0, kInf);
      break;
    case 5:
      add("d0 > 0", dPos);
      add("K = 0", q.kZero(K));
      add("b0 > 0", q.lt(0.0, b));
      dom(0.0, std::sqrt(2.0 * d / b));
      dom(std::sqrt(2.0 * d / b), kInf);
      break;
    case 6:
      add("d0 > 0", dPos);
      add("-16 alpha0^2 d0 <= K < 0", q.le(-16.0 * a2 * d, K) && q.kNeg(K));
      add("b0 >= -2 alpha0^2 - K/(8 alpha0^2)", q.le(lower7, b));
      if (dPos && K < b * b) f.auxiliary = type6_aux(c);
      dom(0.0, kInf);
      break;
    case 7:
      add("d0 < 0", dNeg);
      add("K >= -16 alpha0^2 d0", q.le(-16.0 * a2 * d, K));
      add("-2 alpha0^2 - K/(8 alpha0^2) <= b0 < -sqrt(K)", q.le(lower7, b) && q.lt(b, -sK));
      dom(std::sqrt(2.0 * d / (b - sK)), std::sqrt(2.0 * d / (b + sK)));
      break;
    case 8:
      add("d0 < 0", dNeg);
      add("K >= -16 alpha0^2 d0", q.le(-16.0 * a2 * d, K));
      add("-sqrt(K) < b0 < sqrt(K)", q.lt(-sK, b) && q.lt(b, sK));
      dom(std::sqrt(2.0 * d / (b - sK)), kInf);
      break;
    case 9:
      add("d0 = 0", dZero);
      add("b0 = K = 0", q.eq(b, 0.0) && q.kZero(K));
      dom(0.0, kInf);
      break;
    case 10: {
      add("d0 = 0", dZero);
      add("b0 = -sqrt(K) < 0", q.eq(b, -sK) && q.lt(b, 0.0));
      const double r = std::sqrt(-b) / std::sqrt(4.0 * a2 - b);
      dom(0.0, r);
      dom(r, kInf);
      break;
    }
    case 11:
      add("d0 = 0", dZero);
      add("b0 = sqrt(K) > 0", q.eq(b, sK) && q.lt(0.0, b));
      add("4 alpha0^2 - b0 > 0", q.lt(b, 4.0 * a2));
      dom(0.0, kInf);
      break;
    case 12:
      add("d0 = 0", dZero);
      add("b0 = sqrt(K) > 0", q.eq(b, sK) && q.lt(0.0, b));
      add("4 alpha0^2 - b0 = 0", q.eq(b, 4.0 * a2));
      dom(0.0, kInf);
      break;
    case 13: {
      add("d0 = 0", dZero);
      add("b0 = sqrt(K) > 0", q.eq(b, sK) && q.lt(0.0, b));
      add("4 alpha0^2 - b0 < 0", q.lt(4.0 * a2, b));
      const double r = std::sqrt(b) / std::sqrt(b - 4.0 * a2);
      dom(0.0, r);
      dom(r, kInf);
      break;
    }
  }
  return f;
}

namespace {
bool all_hold(const FamilyType& f) {
  return std::all_of(f.conditions.begin(), f.conditions.end(), [](const Condition& x) { return x.holds; });
}
}  // namespace

FamilyType classify(const CatalogParams& c, double tol) {
  std::vector<FamilyType> hits;
  std::vector<FamilyType> all;
  for (int t = 1; t <= kCatalogTypes; ++t) {
    FamilyType f = family_type(t, c, tol);
    if (all_hold(f)) hits.push_back(f);
    all.push_back(std::move(f));
  }
  const Cmp q = make_cmp(c, tol);
  if (hits.size() == 1) return hits.front();

  FamilyType u;
  u.type = 0;
  if (hits.size() > 1) {
    u.reason = "overlapping conditions";
    for (const auto& h : hits) {
      u.overlapping.push_back(h.type);
      for (const auto& x : h.conditions) u.conditions.push_back({h.label + ": " + x.text, x.holds});
    }
  } else {
    const bool dZero = q.eq(c.d0, 0.0);
    if (!dZero && q.kZero(c.bigK) && q.eq(c.b0, 0.0))
      u.reason = "flat degenerate";
    else if (dZero && !q.eq(std::abs(c.b0), std::sqrt(std::abs(c.bigK))))
      u.reason = "K differs from b0^2 with d0 = 0";
    else if (!dZero && c.bigK > 0.0 && q.eq(std::abs(c.b0), std::sqrt(c.bigK)))
      u.reason = "b0^2 = K with d0 != 0 (quartic degenerates)";
    else
      u.reason = "no printed condition set matches";
    // Report the failed conditions of the types in the same d0 sign class.
    for (const auto& f : all) {
      if (f.conditions.empty() || !f.conditions.front().holds) continue;
      for (const auto& x : f.conditions)
        if (!x.holds) u.conditions.push_back({f.label + ": " + x.text, false});
    }
  }
  u.label = "unclassified: " + u.reason;
  return u;
}

FamilyType classify_measured(const CatalogParams& measured, double tol) {
  CatalogParams c = measured;
  if (make_cmp(c, tol).eq(c.d0, 0.0)) {
    c.d0 = 0.0;
    c.b0 = -c.b0;
  }
  return classify(c, tol);
}

Jet closed_form_t_jet(double p, int type, const CatalogParams& c, ClosedForm v) {
  check_type(type);
  const Jet P = Jet::variable(p);
  const double a = c.alpha0, a2 = a * a, b = c.b0, d = c.d0, K = c.bigK, sK = sqrt_k(c);
  const double r2 = std::sqrt(2.0);
  const bool re = v == ClosedForm::Rederived;
  auto logratio = [](const Jet& num, const Jet& den) { return log(abs(num) / den); };
  switch (type) {
    case 1: {
      const double r = std::sqrt(2.0 * d / (sK + b));
      return 2.0 * r2 * a * std::sqrt(sK - b) / std::sqrt(d * K) * atan(std::sqrt(sK - b) / std::sqrt(2.0 * d) * P) -
             r2 * a * std::sqrt(sK + b) / std::sqrt(d * K) * logratio(P - r, P + r);
    }
    case 2:
      return 2.0 * r2 * a * std::sqrt(sK - b) / std::sqrt(d * K) * atan(std::sqrt(sK - b) / std::sqrt(2.0 * d) * P) -
             2.0 * r2 * a * std::sqrt(-(sK + b)) / std::sqrt(d * K) *
                 atan(std::sqrt(-(sK + b)) / std::sqrt(2.0 * d) * P);
    case 3: {
      const double r1 = std::sqrt(2.0 * d / (b - sK)), r2b = std::sqrt(2.0 * d / (b + sK));
      return r2 * a * std::sqrt(b - sK) / std::sqrt(d * K) * logratio(P - r1, P + r1) -
             r2 * a * std::sqrt(b + sK) / std::sqrt(d * K) * logratio(P - r2b, P + r2b);
    }
    case 4:
      return 4.0 * a * P / (2.0 * d - b * P * P) +
             2.0 * r2 * a / std::sqrt(-b * d) * atan(std::sqrt(-b) / std::sqrt(2.0 * d) * P);
    case 5: {
      const double r = std::sqrt(2.0 * d / b);
      return r2 * a / std::sqrt(b * d) * log((P + r) / abs(P - r)) + 4.0 * a * P / (2.0 * d - b * P * P);
    }
    case 6: {
      const Type6Aux x = type6_aux(c);
      const Jet qm = x.lambda * P * P - x.mu * P + x.nu, qp = x.lambda * P * P + x.mu * P + x.nu;
      const double sMinus = std::sqrt(4.0 * x.lambda * x.nu - x.mu * x.mu);
      const double sPlus = re ? sMinus : std::sqrt(4.0 * x.lambda * x.nu + x.mu * x.mu);
      const double sign = re ? -1.0 : 1.0;
      return sign * 2.0 * a / x.mu * log(qm / qp) +
             4.0 * a / x.muBar * (atan((2.0 * x.lambda * P - x.mu) / sMinus) + atan((2.0 * x.lambda * P + x.mu) / sPlus));
    }
    case 7: {
      const double r1 = std::sqrt(2.0 * d / (b - sK)), r2b = std::sqrt(2.0 * d / (b + sK));
      return r2 * a * std::sqrt(sK - b) / std::sqrt(-d * K) * logratio(P - r1, P + r1) -
             r2 * a * std::sqrt(-(b + sK)) / std::sqrt(-d * K) * logratio(P - r2b, P + r2b);
    }
    case 8: {
      const double r1 = std::sqrt(2.0 * d / (b - sK));
      return r2 * a * std::sqrt(sK - b) / std::sqrt(-d * K) * logratio(P - r1, P + r1) -
             2.0 * r2 * a * std::sqrt(sK + b) / std::sqrt(-d * K) * atan(std::sqrt(sK + b) / std::sqrt(-2.0 * d) * P);
    }
    case 9:
      return -1.0 / (3.0 * a) / (P * P * P);
    case 10: {
      const double e = std::sqrt(4.0 * a2 - b), w = std::sqrt(-b);
      return 4.0 * a / (-b * P) + 2.0 * a * e / (-b * w) * logratio(e * P - w, e * P + w);
    }
    case 11: {
      const double e = std::sqrt(4.0 * a2 - b), w = std::sqrt(b);
      const double coef = re ? 4.0 * a * e / (b * w) : e / w;
      return -4.0 * a / (b * P) - coef * atan(e / w * P);
    }
    case 12:
      return -1.0 / (a * P);
    case 13: {
      const double e = std::sqrt(b - 4.0 * a2), w = std::sqrt(b);
      const double coef = re ? 2.0 * a * e / (b * w) : e / (2.0 * w);
      return -4.0 * a / (b * P) - coef * logratio(e * P - w, e * P + w);
    }
  }
  return Jet(0.0);
}

PInterval anchor_interval(int type, const CatalogParams& c) {
  const FamilyType f = family_type(type, c);
  for (const auto& iv : f.pDomain)
    if (iv.contains(1.0, kDomainMargin)) return iv;
  throw PreconditionFailed(fmt::format("anchor p = 1 lies outside the domain of Type {}", type));
}

namespace {

void require_valid(int type, const CatalogParams& c) {
  const FamilyType f = family_type(type, c);
  for (const auto& x : f.conditions)
    if (!x.holds) throw InvalidArgument(fmt::format("parameters violate Type {} condition: {}", type, x.text));
}

double raw_t(double p, int type, const CatalogParams& c, ClosedForm v) {
  const FamilyType f = family_type(type, c);
  bool inside = false;
  for (const auto& iv : f.pDomain) {
    if (iv.contains(p, kDomainMargin)) inside = true;
    const bool nearLo = iv.lo > 0.0 && std::abs(p - iv.lo) <= kDomainMargin;
    const bool nearHi = std::isfinite(iv.hi) && std::abs(p - iv.hi) <= kDomainMargin;
    if (nearLo || nearHi) throw DomainError(fmt::format("p = {} at a singular value of the Type {} profile", p, type));
  }
  if (!inside) throw DomainError(fmt::format("p = {} outside the domain of Type {}", p, type));
  const double t = closed_form_t_jet(p, type, c, v).coeff(0);
  if (!std::isfinite(t)) throw DomainError(fmt::format("Type {} closed form not finite at p = {}", type, p));
  return t;
}

}  // namespace

double closed_form_t(double p, int type, const CatalogParams& c, ClosedForm v) {
  require_valid(type, c);
  anchor_interval(type, c);
  return raw_t(p, type, c, v) - raw_t(1.0, type, c, v) + c.t0;
}

double invert_p(double t, int type, const CatalogParams& c, ClosedForm v) {
  require_valid(type, c);
  const PInterval iv = anchor_interval(type, c);
  const double shift = c.t0 - raw_t(1.0, type, c, v);
  const auto f = [&](double p) { return raw_t(p, type, c, v) + shift - t; };
  const double lo = iv.lo + 2.0 * kDomainMargin;
  double hi = std::isfinite(iv.hi) ? iv.hi - 2.0 * kDomainMargin : 2.0;
  double flo = f(lo);
  double fhi = f(hi);
  while (!std::isfinite(iv.hi) && fhi < 0.0 && hi < 1e9) {
    hi *= 4.0;
    fhi = f(hi);
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo < 0.0 && fhi > 0.0) && !(flo > 0.0 && fhi < 0.0))
    throw DomainError(fmt::format("t = {} outside the reachable range of Type {}", t, type));
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52),
                                                   iters);
  return 0.5 * (r.first + r.second);
}

double integrate_p(double t, const CatalogParams& c) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 1>;
  if (std::abs(ode_rhs(1.0, c) - c.alpha0) > 1e-9 * std::max(1.0, c.alpha0))
    throw PreconditionFailed("dp/dt at p = 1 differs from alpha0; parameters violate the anchor relation");
  State x{1.0};
  if (t == c.t0) return 1.0;
  const auto rhs = [&c](const State& s, State& dsdt, double) {
    if (!(s[0] > 0.0) || !(s[0] < 1e8)) throw DomainError("t outside the reachable range of the profile");
    dsdt[0] = ode_rhs(s[0], c);
  };
  auto stepper = odeint::make_controlled(1e-13, 1e-10, odeint::runge_kutta_dopri5<State>());
  const double dt = (t > c.t0 ? 1e-4 : -1e-4) / std::max(1.0, c.alpha0);
  try {
    odeint::integrate_adaptive(stepper, rhs, x, c.t0, t, dt);
  } catch (const odeint::step_adjustment_error&) {
    throw DomainError("t outside the reachable range of the profile");
  }
  if (!std::isfinite(x[0])) throw DomainError("t outside the reachable range of the profile");
  return x[0];
}

namespace {

struct ProfileSample {
  WarpJet jet;
  double tdot = 0.0;   // dp/dt
  double tddot = 0.0;  // d2p/dt2
  double t1 = 0.0;     // dt/dp
  bool ok = false;
};

ProfileSample sample_profile(double p, int type, const CatalogParams& c, ClosedForm v) {
  const Jet T = closed_form_t_jet(p, type, c, v);
  const double t1 = T.derivative(1), t2 = T.derivative(2), t3 = T.derivative(3);
  ProfileSample s;
  s.t1 = t1;
  if (!(t1 > 0.0) || !std::isfinite(t1)) return s;
  const double F = 1.0 / t1, F1 = -t2 / (t1 * t1), F2 = (2.0 * t2 * t2 - t1 * t3) / (t1 * t1 * t1);
  s.jet.p = p;
  s.jet.dp = std::sqrt(c.alpha0 * F);
  s.jet.d2p = 0.5 * c.alpha0 * F1;
  s.jet.d3p = 0.5 * c.alpha0 * F2 * s.jet.dp;
  s.tdot = F;
  s.tddot = F1 * F;
  s.ok = true;
  return s;
}

ConventionResiduals convention(const std::vector<ProfileSample>& ss, const CatalogParams& c, double b0) {
  ConventionResiduals r;
  r.b0 = b0;
  const double K = c.d0 == 0.0 ? b0 * b0 : c.bigK;
  double e68 = 0.0;
  for (const auto& s : ss) {
    if (!s.ok) {
      r.riccati = r.quadratic = r.quadraticAsPrinted = kInf;
      e68 = kInf;
      continue;
    }
    const WarpJet& j = s.jet;
    const double u = j.dp / j.p, up = j.d2p / j.p - u * u, lhs = up - u * u, p2 = j.p * j.p;
    r.riccati = std::max(r.riccati, std::abs(lhs - b0 / 4.0 + c.d0 / (2.0 * p2)));
    r.quadratic = std::max(r.quadratic, std::abs(lhs * lhs - K / 16.0 - c.d0 / p2 * u * u));
    r.quadraticAsPrinted = std::max(r.quadraticAsPrinted, std::abs(lhs * lhs - K / 16.0 - c.d0 / p2 * up));
    e68 = std::max(e68, std::abs(s.tddot - 4.0 / j.p * s.tdot * s.tdot - b0 / (2.0 * c.alpha0) * j.p * s.tdot));
  }
  if (c.d0 == 0.0) r.secondOrderT = e68;
  return r;
}

ClosedFormAudit audit_variant(const std::vector<double>& ps, int type, const CatalogParams& c, ClosedForm v, double tol) {
  ClosedFormAudit a;
  a.variant = v;
  std::vector<ProfileSample> ss;
  double bMin = kInf, bMax = -kInf, bSum = 0.0;
  int nOk = 0;
  for (double p : ps) {
    ProfileSample s = sample_profile(p, type, c, v);
    a.ownOdeResidual = std::max(a.ownOdeResidual, std::abs(s.t1 * printed_rate(p, type, c) - 1.0));
    if (s.ok) {
      const QchCoefficientsAnalytic q = qch_coefficients_from_jet(c.d0, s.jet);
      a.cCoefficient = std::max(a.cCoefficient, std::abs(q.c));
      const double mb = 0.5 * (2.0 * q.a - q.b);
      bMin = std::min(bMin, mb);
      bMax = std::max(bMax, mb);
      bSum += mb;
      ++nOk;
    } else {
      a.cCoefficient = kInf;
    }
    ss.push_back(s);
  }
  if (!std::isfinite(a.ownOdeResidual)) a.ownOdeResidual = kInf;
  a.measuredB0 = nOk ? bSum / nOk : std::numeric_limits<double>::quiet_NaN();
  a.measuredB0Spread = nOk ? bMax - bMin : kInf;
  a.asPrinted = convention(ss, c, c.b0);
  a.flipped = convention(ss, c, -c.b0);
  const double scale = make_cmp(c, tol).s;
  a.consistent = a.ownOdeResidual < tol;
  a.bochnerFlat = nOk == static_cast<int>(ps.size()) && a.cCoefficient < tol * scale &&
                  a.measuredB0Spread < tol * scale;
  return a;
}

std::string b0_expression(double b0, double alpha0) {
  const double k = b0 / (alpha0 * alpha0);
  if (std::abs(k - std::round(k)) < 1e-9 && std::round(k) != 0.0)
    return fmt::format("{}*alpha0^2 = {:.17g}", std::lround(k), b0);
  return fmt::format("{:.17g}", b0);
}

}  // namespace

CatalogAudit consistency_audit(int type, const CatalogParams& c, double tol) {
  require_valid(type, c);
  CatalogAudit out;
  out.type = type;
  out.params = c;
  const PInterval iv = anchor_interval(type, c);
  const double lo = std::max(iv.lo, 0.0), hi = std::isfinite(iv.hi) ? iv.hi : 3.0;
  const double pa = 1.0 - 0.5 * (1.0 - lo), pb = 1.0 + 0.5 * (std::min(hi, 3.0) - 1.0);
  constexpr int kSamples = 9;
  for (int i = 0; i < kSamples; ++i) out.samples.push_back(pa + (pb - pa) * i / (kSamples - 1));

  out.printed = audit_variant(out.samples, type, c, ClosedForm::Printed, tol);
  out.rederived = audit_variant(out.samples, type, c, ClosedForm::Rederived, tol);

  const double scale = make_cmp(c, tol).s;
  const ClosedFormAudit& g = out.rederived;
  if (g.bochnerFlat) {
    if (g.asPrinted.riccati < tol * scale)
      out.effectiveB0 = c.b0;
    else if (g.flipped.riccati < tol * scale)
      out.effectiveB0 = -c.b0;
  }
  out.signFlip = out.effectiveB0 && c.b0 != 0.0 && *out.effectiveB0 != c.b0;

  if (!out.printed.consistent)
    out.notes.push_back(fmt::format("printed closed form does not solve its own first-order equation (relative "
                                    "mismatch {:.3g}); rederived antiderivative used",
                                    out.printed.ownOdeResidual));
  if (out.signFlip) {
    out.notes.push_back("sign convention: effective b0 = " + b0_expression(*out.effectiveB0, c.alpha0));
    out.notes.push_back(
        "second-order equation in t and its printed integral carry opposite signs of b0; the Riccati-type "
        "equation and c = 0 select the flipped sign");
  }
  if (!out.effectiveB0) out.notes.push_back("no sign convention zeroes the Riccati-type equation for this profile");
  if (!g.bochnerFlat) out.notes.push_back("rederived profile is not Bochner-flat along the samples");
  return out;
}

CatalogParams resolved_params(int type, const CatalogParams& c) {
  const CatalogAudit a = consistency_audit(type, c);
  if (!a.effectiveB0) throw PreconditionFailed(fmt::format("Type {} audit did not resolve a sign convention", type));
  CatalogParams r = c;
  r.b0 = *a.effectiveB0;
  return r;
}

OdeResiduals ode_residuals(const WarpFunction& warp, const CatalogParams& c, double s) {
  const WarpJet j = warp.at_s(s);
  const double u = j.dp / j.p, up = j.d2p / j.p - u * u, lhs = up - u * u, p2 = j.p * j.p;
  return {std::abs(lhs - c.b0 / 4.0 + c.d0 / (2.0 * p2)), std::abs(lhs * lhs - c.bigK / 16.0 - c.d0 / p2 * u * u),
          std::abs(lhs * lhs - c.bigK / 16.0 - c.d0 / p2 * up)};
}

CompletenessRecord complete_families(const CatalogParams& c, double tol) {
  const Cmp q = make_cmp(c, tol);
  const double a2 = c.alpha0 * c.alpha0, K = c.bigK, b = c.b0, d = c.d0, sK = sqrt_k(c);
  const bool dPos = d > tol * q.s, dNeg = d < -tol * q.s, dZero = !dPos && !dNeg;
  CompletenessRecord r;
  r.tested.push_back({1, {{"K = 0", q.kZero(K)}, {"b0 > 0", q.lt(0.0, b)}, {"d0 > 0", dPos}}});
  r.tested.push_back({2,
                      {{"K >= -16 alpha0^2 d0", q.le(-16.0 * a2 * d, K)},
                       {"-2 alpha0^2 - K/(8 alpha0^2) <= b0 < -sqrt(K)",
                        K >= 0.0 && q.le(-2.0 * a2 - K / (8.0 * a2), b) && q.lt(b, -sK)},
                       {"d0 < 0", dNeg}}});
  r.tested.push_back({3, {{"b0 = -sqrt(K) < 0", K >= 0.0 && q.eq(b, -sK) && q.lt(b, 0.0)}, {"d0 = 0", dZero}}});
  r.tested.push_back({4, {{"4 alpha0^2 < b0 = sqrt(K)", K >= 0.0 && q.eq(b, sK) && q.lt(4.0 * a2, b)}, {"d0 = 0", dZero}}});
  static constexpr std::array<int, 4> kProfile{5, 7, 10, 13};
  for (const auto& [fam, conds] : r.tested) {
    if (std::all_of(conds.begin(), conds.end(), [](const Condition& x) { return x.holds; })) {
      r.family = fam;
      r.profileType = kProfile[fam - 1];
      break;
    }
  }
  r.label = r.family ? fmt::format("family {} of 4", *r.family) : "no complete family";
  r.proviso = "completeness also requires a complete alpha0-Sasakian space form as base (assumed, not verified)";
  return r;
}

CatalogParams seeded_params(int type, double alpha0, double t0) {
  check_type(type);
  // (d0, b0) at alpha0 = 1; the conditions are homogeneous under
  // (alpha0, d0, b0, K) -> (s alpha0, s^2 d0, s^2 b0, s^4 K).
  static constexpr std::array<std::array<double, 2>, kCatalogTypes> kSeeds{{{4.0, -1.0},
                                                                            {1.0, -2.5},
                                                                            {1.0, 10.0},
                                                                            {2.25, -1.5},
                                                                            {9.0, 6.0},
                                                                            {4.0, 1.0},
                                                                            {-1.0, -5.5},
                                                                            {-1.0, 0.0},
                                                                            {0.0, 0.0},
                                                                            {0.0, -1.0},
                                                                            {0.0, 1.0},
                                                                            {0.0, 4.0},
                                                                            {0.0, 8.0}}};
  const double a2 = alpha0 * alpha0;
  const auto& s = kSeeds[type - 1];
  return CatalogParams::derived(alpha0, s[0] * a2, s[1] * a2, t0);
}

WarpFunction make_catalog_warp(int type, const CatalogParams& c) {
  const CatalogParams g = resolved_params(type, c);
  const PInterval iv = anchor_interval(type, c);
  auto rate = [g](double p) { return ode_rate(p, g); };
  auto tOfP = [type, c](double p) { return closed_form_t(p, type, c, ClosedForm::Rederived); };
  return WarpFunction::autonomous(c.alpha0, rate, iv.lo, iv.hi, fmt::format("Type {}", type), c.t0, tOfP);
}

}  // namespace warpgeo
