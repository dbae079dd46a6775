#include "warpgeo/warp.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>

#include "warpgeo/errors.hpp"

namespace warpgeo {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEdgeMargin = 1e-6;
// p-window used to bound the chart of autonomous profiles.
constexpr double kPMin = 0.05;
constexpr double kPMax = 20.0;
}  // namespace

std::string to_string(WarpKind k) {
  switch (k) {
    case WarpKind::Linear:
      return "linear";
    case WarpKind::Exponential:
      return "exponential";
    case WarpKind::Type9:
      return "type9";
    case WarpKind::Polynomial:
      return "polynomial";
    case WarpKind::Autonomous:
      return "autonomous";
  }
  return "?";
}

double integrate(const std::function<double(double)>& f, double a, double b, int /*panels*/) {
  if (a == b) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-15, &err);
}

struct WarpFunction::Impl {
  WarpKind kind = WarpKind::Linear;
  std::string label;
  double alpha0 = 1.0;
  double t0 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  RateFn rate;
  std::function<double(double)> tOfP;
  double pA = 0.0;
  double pB = kInf;
  double sLo = -kInf;
  double sHi = kInf;

  mutable std::mutex cacheMutex;
  mutable std::optional<std::pair<double, WarpJet>> cache;

  double prime_of_p(double p) const { return std::sqrt(alpha0 * rate(p).v); }

  double s_of_p(double p) const {
    if (!(p > pA && p < pB)) throw DomainError("warp profile evaluated outside its p-range");
    return integrate([this](double u) { return 1.0 / prime_of_p(u); }, 1.0, p);
  }

  WarpJet jet_from_p(double p) const {
    const RateJet r = rate(p);
    if (!(r.v > 0.0)) throw DomainError("warp profile has dp/dt <= 0");
    WarpJet j;
    j.p = p;
    j.dp = std::sqrt(alpha0 * r.v);
    j.d2p = 0.5 * alpha0 * r.dv;
    j.d3p = 0.5 * alpha0 * r.d2v * j.dp;
    return j;
  }

  double p_of_s_autonomous(double s) const {
    const auto f = [this, s](double p) { return std::make_pair(s_of_p(p) - s, 1.0 / prime_of_p(p)); };
    double guess = 1.0 + alpha0 * s;
    if (!(guess > pA && guess < pB)) guess = 1.0;
    std::uintmax_t iters = 60;
    const double p = boost::math::tools::newton_raphson_iterate(f, guess, pA, pB, 52, iters);
    if (iters >= 60) throw DomainError("warp profile inversion p(s) did not converge");
    return p;
  }

  WarpJet at_s(double s) const {
    if (!(s > sLo && s < sHi)) throw DomainError("warp profile evaluated outside its s-domain");
    const double a = alpha0;
    WarpJet j;
    switch (kind) {
      case WarpKind::Linear:
        j = {1.0 + a * s, a, 0.0, 0.0};
        break;
      case WarpKind::Exponential: {
        const double p = std::exp(a * s);
        j = {p, a * p, a * a * p, a * a * a * p};
        break;
      }
      case WarpKind::Type9: {
        const double p = 1.0 / (1.0 - a * s);
        j = {p, a * p * p, 2.0 * a * a * p * p * p, 6.0 * a * a * a * p * p * p * p};
        break;
      }
      case WarpKind::Polynomial:
        j = {1.0 + s * (a + s * (c2 + s * c3)), a + s * (2.0 * c2 + 3.0 * c3 * s), 2.0 * c2 + 6.0 * c3 * s, 6.0 * c3};
        break;
      case WarpKind::Autonomous: {
        {
          std::lock_guard<std::mutex> lock(cacheMutex);
          if (cache && cache->first == s) return cache->second;
        }
        j = jet_from_p(p_of_s_autonomous(s));
        std::lock_guard<std::mutex> lock(cacheMutex);
        cache = std::make_pair(s, j);
        break;
      }
    }
    return j;
  }

  double t_of_s(double s) const {
    const double a = alpha0;
    switch (kind) {
      case WarpKind::Linear:
        if (!(s > sLo && s < sHi)) throw DomainError("warp profile evaluated outside its s-domain");
        return t0 + s;
      case WarpKind::Exponential:
        return t0 + (1.0 - std::exp(-a * s)) / a;
      case WarpKind::Type9: {
        const double p = at_s(s).p;
        return t0 + (1.0 - 1.0 / (p * p * p)) / (3.0 * a);
      }
      case WarpKind::Polynomial:
        if (!(s > sLo && s < sHi)) throw DomainError("warp profile evaluated outside its s-domain");
        return t0 + integrate([this](double u) { return alpha0 / at_s(u).dp; }, 0.0, s);
      case WarpKind::Autonomous: {
        const double p = at_s(s).p;
        if (tOfP) return tOfP(p);
        return t0 + integrate([this](double u) { return 1.0 / rate(u).v; }, 1.0, p);
      }
    }
    return t0;
  }
};

WarpFunction WarpFunction::linear(double alpha0, double t0) {
  if (!(alpha0 > 0.0)) throw InvalidArgument("alpha0 must be positive");
  auto im = std::make_shared<Impl>();
  im->kind = WarpKind::Linear;
  im->label = "linear";
  im->alpha0 = alpha0;
  im->t0 = t0;
  im->sLo = -1.0 / alpha0 + kEdgeMargin;
  return WarpFunction(im);
}

WarpFunction WarpFunction::exponential(double alpha0, double t0) {
  if (!(alpha0 > 0.0)) throw InvalidArgument("alpha0 must be positive");
  auto im = std::make_shared<Impl>();
  im->kind = WarpKind::Exponential;
  im->label = "exponential";
  im->alpha0 = alpha0;
  im->t0 = t0;
  return WarpFunction(im);
}

WarpFunction WarpFunction::type9(double alpha0, double t0) {
  if (!(alpha0 > 0.0)) throw InvalidArgument("alpha0 must be positive");
  auto im = std::make_shared<Impl>();
  im->kind = WarpKind::Type9;
  im->label = "type9";
  im->alpha0 = alpha0;
  im->t0 = t0;
  im->sHi = 1.0 / alpha0 - kEdgeMargin;
  return WarpFunction(im);
}

WarpFunction WarpFunction::polynomial(double alpha0, double c2, double c3, double t0) {
  if (!(alpha0 > 0.0)) throw InvalidArgument("alpha0 must be positive");
  auto im = std::make_shared<Impl>();
  im->kind = WarpKind::Polynomial;
  im->label = "polynomial";
  im->alpha0 = alpha0;
  im->t0 = t0;
  im->c2 = c2;
  im->c3 = c3;
  // Component of {p > 0, p' > 0} around 0, located by scanning then bisection.
  const auto ok = [&](double s) {
    const double p = 1.0 + s * (alpha0 + s * (c2 + s * c3));
    const double dp = alpha0 + s * (2.0 * c2 + 3.0 * c3 * s);
    return p > 0.0 && dp > 0.0;
  };
  const auto edge = [&](double dir) {
    const double step = 1e-3;
    double inside = 0.0;
    for (int k = 1; k <= 10000; ++k) {
      const double s = dir * step * k;
      if (!ok(s)) {
        double lo = inside, hi = s;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          (ok(mid) ? lo : hi) = mid;
        }
        return lo - dir * kEdgeMargin;
      }
      inside = s;
    }
    return dir * kInf;
  };
  im->sLo = edge(-1.0);
  im->sHi = edge(1.0);
  return WarpFunction(im);
}

WarpFunction WarpFunction::autonomous(double alpha0, RateFn rate, double pLo, double pHi, std::string label,
                                      double t0, std::function<double(double)> tOfP) {
  if (!(alpha0 > 0.0)) throw InvalidArgument("alpha0 must be positive");
  if (!(pLo < 1.0 && 1.0 < pHi)) throw InvalidArgument("autonomous warp: p-range must contain 1");
  const RateJet r1 = rate(1.0);
  if (std::abs(r1.v - alpha0) > 1e-10 * std::max(1.0, alpha0))
    throw InvalidArgument("inconsistent anchors: dp/dt at p = 1 differs from alpha0");
  auto im = std::make_shared<Impl>();
  im->kind = WarpKind::Autonomous;
  im->label = std::move(label);
  im->alpha0 = alpha0;
  im->t0 = t0;
  im->rate = std::move(rate);
  im->tOfP = std::move(tOfP);
  im->pA = std::max(pLo + kEdgeMargin, kPMin);
  im->pB = std::min(pHi - kEdgeMargin, kPMax);
  im->sLo = -kInf;
  im->sHi = kInf;
  const double sA = im->s_of_p(im->pA * (1.0 + 1e-12));
  const double sB = im->s_of_p(im->pB * (1.0 - 1e-12));
  im->sLo = sA;
  im->sHi = sB;
  return WarpFunction(im);
}

WarpKind WarpFunction::kind() const { return impl_->kind; }
const std::string& WarpFunction::label() const { return impl_->label; }
double WarpFunction::alpha0() const { return impl_->alpha0; }
double WarpFunction::t0() const { return impl_->t0; }
std::pair<double, double> WarpFunction::s_domain() const { return {impl_->sLo, impl_->sHi}; }
bool WarpFunction::contains_s(double s) const { return s > impl_->sLo && s < impl_->sHi; }
WarpJet WarpFunction::at_s(double s) const { return impl_->at_s(s); }

double WarpFunction::dpdt_at_s(double s) const {
  const WarpJet j = at_s(s);
  return j.dp * j.dp / impl_->alpha0;
}

double WarpFunction::t_of_s(double s) const { return impl_->t_of_s(s); }

double WarpFunction::s_of_t(double t) const {
  const Impl& im = *impl_;
  const double a = im.alpha0;
  const double u = t - im.t0;
  switch (im.kind) {
    case WarpKind::Linear:
      return u;
    case WarpKind::Exponential:
      if (!(a * u < 1.0)) throw DomainError("t outside the range of the exponential profile");
      return -std::log1p(-a * u) / a;
    case WarpKind::Type9: {
      if (!(3.0 * a * u < 1.0)) throw DomainError("t outside the range of the type 9 profile");
      const double p = 1.0 / std::cbrt(1.0 - 3.0 * a * u);
      return (1.0 - 1.0 / p) / a;
    }
    default:
      break;
  }
  // Monotone: dt/ds = alpha0 / p' > 0.
  double lo = std::isfinite(im.sLo) ? im.sLo : -50.0;
  double hi = std::isfinite(im.sHi) ? im.sHi : 50.0;
  lo += 1e-9 * std::max(1.0, std::abs(lo));
  hi -= 1e-9 * std::max(1.0, std::abs(hi));
  const auto f = [this, t](double s) { return t_of_s(s) - t; };
  const double flo = f(lo), fhi = f(hi);
  if (flo > 0.0 || fhi < 0.0) throw DomainError("t outside the reachable range of the profile");
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(50),
                                                   iters);
  return 0.5 * (r.first + r.second);
}

double WarpFunction::s_of_p(double p) const {
  const Impl& im = *impl_;
  const double a = im.alpha0;
  switch (im.kind) {
    case WarpKind::Linear:
      if (!(p > 0.0)) throw DomainError("p must be positive");
      return (p - 1.0) / a;
    case WarpKind::Exponential:
      if (!(p > 0.0)) throw DomainError("p must be positive");
      return std::log(p) / a;
    case WarpKind::Type9:
      if (!(p > 0.0)) throw DomainError("p must be positive");
      return (1.0 - 1.0 / p) / a;
    case WarpKind::Autonomous:
      return im.s_of_p(p);
    case WarpKind::Polynomial: {
      const auto f = [this, p](double s) { return at_s(s).p - p; };
      const double lo = std::isfinite(im.sLo) ? im.sLo : -50.0;
      const double hi = std::isfinite(im.sHi) ? im.sHi : 50.0;
      const double flo = f(lo), fhi = f(hi);
      if (flo > 0.0 || fhi < 0.0) throw DomainError("p outside the range of the polynomial profile");
      std::uintmax_t iters = 200;
      const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                       boost::math::tools::eps_tolerance<double>(50), iters);
      return 0.5 * (r.first + r.second);
    }
  }
  return 0.0;
}

WarpFunction make_warp(const WarpSpec& spec) {
  if (spec.kind == "linear") return WarpFunction::linear(spec.alpha0, spec.t0);
  if (spec.kind == "exponential") return WarpFunction::exponential(spec.alpha0, spec.t0);
  if (spec.kind == "type9") return WarpFunction::type9(spec.alpha0, spec.t0);
  if (spec.kind == "polynomial") return WarpFunction::polynomial(spec.alpha0, spec.c2, spec.c3, spec.t0);
  throw InvalidArgument("unknown warp kind '" + spec.kind + "' (expected linear, exponential, type9, polynomial)");
}

}  // namespace warpgeo
