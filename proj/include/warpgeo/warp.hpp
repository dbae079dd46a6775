#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>

namespace warpgeo {

// p and its first three derivatives in the arclength parameter s.
struct WarpJet {
  double p = 1.0;
  double dp = 0.0;
  double d2p = 0.0;
  double d3p = 0.0;
};

// dp/dt as a function of p, with its first two p-derivatives.
struct RateJet {
  double v = 0.0;
  double dv = 0.0;
  double d2v = 0.0;
};

using RateFn = std::function<RateJet(double p)>;

enum class WarpKind { Linear, Exponential, Type9, Polynomial, Autonomous };

std::string to_string(WarpKind k);

// Warp profile p(s) with p(0) = 1, p'(0) = alpha0, p > 0 and p' > 0, together
// with the t-parameterization dt = (alpha0 / p') ds, t(0) = t0.
// Not to be confused with the constant bihomothety pair (p, q) of the base.
class WarpFunction {
 public:
  static WarpFunction linear(double alpha0, double t0 = 0.0);
  static WarpFunction exponential(double alpha0, double t0 = 0.0);
  // dp/dt = alpha0 p^4, i.e. p(s) = 1/(1 - alpha0 s).
  static WarpFunction type9(double alpha0, double t0 = 0.0);
  // p(s) = 1 + alpha0 s + c2 s^2 + c3 s^3 on the component of {p > 0, p' > 0}
  // containing 0. Generic QCH profile, not Bochner-flat in general.
  static WarpFunction polynomial(double alpha0, double c2, double c3, double t0 = 0.0);
  // dp/dt = rate(p) on the open p-interval (pLo, pHi) containing 1; rate(1)
  // must equal alpha0. tOfP, when given, is the exact t(p) and replaces
  // quadrature of dp/rate.
  static WarpFunction autonomous(double alpha0, RateFn rate, double pLo, double pHi, std::string label,
                                 double t0 = 0.0, std::function<double(double)> tOfP = {});

  WarpKind kind() const;
  const std::string& label() const;
  double alpha0() const;
  double t0() const;

  // Open s-interval the profile is evaluated on.
  std::pair<double, double> s_domain() const;
  bool contains_s(double s) const;

  WarpJet at_s(double s) const;
  double p_of_s(double s) const { return at_s(s).p; }
  // q = p'/alpha0, so that q^2 = (1/alpha0) dp/dt.
  double q(double s) const { return at_s(s).dp / alpha0(); }
  double dpdt_at_s(double s) const;

  double t_of_s(double s) const;
  double s_of_t(double t) const;
  // Inverse of p(s); throws DomainError outside the range.
  double s_of_p(double p) const;

 private:
  struct Impl;
  explicit WarpFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Parameter record for the analytic kinds: "linear", "exponential", "type9",
// "polynomial". Catalog kinds are built by make_catalog_warp.
struct WarpSpec {
  std::string kind = "linear";
  double alpha0 = 1.0;
  double t0 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

WarpFunction make_warp(const WarpSpec& spec);

// Composite Gauss-Legendre quadrature of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, int panels = 8);

}  // namespace warpgeo
