#pragma once

#include <cmath>

namespace warpgeo {

// a + b1*e1 + b2*e2 + b12*e1*e2 with e1^2 = e2^2 = 0.
// Seeding e1 along x_i and e2 along x_j gives f, f_i, f_j and f_ij exactly.
struct HyperDual {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d12 = 0.0;

  constexpr HyperDual() = default;
  constexpr HyperDual(double value) : v(value) {}  // NOLINT: implicit lift of constants
  constexpr HyperDual(double value, double e1, double e2, double e12)
      : v(value), d1(e1), d2(e2), d12(e12) {}

  HyperDual& operator+=(const HyperDual& o) {
    v += o.v;
    d1 += o.d1;
    d2 += o.d2;
    d12 += o.d12;
    return *this;
  }
  HyperDual& operator-=(const HyperDual& o) {
    v -= o.v;
    d1 -= o.d1;
    d2 -= o.d2;
    d12 -= o.d12;
    return *this;
  }
  HyperDual& operator*=(const HyperDual& o) {
    *this = HyperDual(v * o.v, v * o.d1 + d1 * o.v, v * o.d2 + d2 * o.v,
                      v * o.d12 + d1 * o.d2 + d2 * o.d1 + d12 * o.v);
    return *this;
  }
  HyperDual& operator/=(const HyperDual& o);
};

// Chain rule for a scalar function with value f0, first derivative f1 and
// second derivative f2 at x.v.
inline HyperDual lift(const HyperDual& x, double f0, double f1, double f2) {
  return {f0, f1 * x.d1, f1 * x.d2, f1 * x.d12 + f2 * x.d1 * x.d2};
}

inline HyperDual operator-(const HyperDual& a) { return {-a.v, -a.d1, -a.d2, -a.d12}; }
inline HyperDual operator+(HyperDual a, const HyperDual& b) { return a += b; }
inline HyperDual operator-(HyperDual a, const HyperDual& b) { return a -= b; }
inline HyperDual operator*(HyperDual a, const HyperDual& b) { return a *= b; }

inline HyperDual inverse(const HyperDual& a) {
  const double r = 1.0 / a.v;
  return lift(a, r, -r * r, 2.0 * r * r * r);
}
inline HyperDual& HyperDual::operator/=(const HyperDual& o) { return *this *= inverse(o); }
inline HyperDual operator/(HyperDual a, const HyperDual& b) { return a /= b; }

inline HyperDual sqrt(const HyperDual& a) {
  const double s = std::sqrt(a.v);
  return lift(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline HyperDual log(const HyperDual& a) {
  return lift(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}
inline HyperDual exp(const HyperDual& a) {
  const double e = std::exp(a.v);
  return lift(a, e, e, e);
}
inline HyperDual atan(const HyperDual& a) {
  const double q = 1.0 / (1.0 + a.v * a.v);
  return lift(a, std::atan(a.v), q, -2.0 * a.v * q * q);
}
inline HyperDual pow(const HyperDual& a, double r) {
  const double f = std::pow(a.v, r);
  return lift(a, f, r * f / a.v, r * (r - 1.0) * f / (a.v * a.v));
}

inline double value_of(double x) { return x; }
inline double value_of(const HyperDual& x) { return x.v; }

}  // namespace warpgeo
