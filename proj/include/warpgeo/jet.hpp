#pragma once

#include <array>

namespace warpgeo {

// Univariate truncated Taylor series of order 3: c[k] = f^(k)(x0)/k!.
// Used to differentiate closed-form profiles t(p) three times exactly.
class Jet {
 public:
  static constexpr int kOrder = 3;

  Jet() = default;
  Jet(double constant) { c_[0] = constant; }  // NOLINT: implicit lift of constants

  static Jet variable(double x0) {
    Jet j(x0);
    j.c_[1] = 1.0;
    return j;
  }

  double coeff(int k) const { return c_[k]; }
  // k-th derivative at the expansion point.
  double derivative(int k) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);

  friend Jet operator-(const Jet& a);
  friend Jet sqrt(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet exp(const Jet& a);
  friend Jet atan(const Jet& a);
  friend Jet abs(const Jet& a);

 private:
  std::array<double, kOrder + 1> c_{};
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }

}  // namespace warpgeo
