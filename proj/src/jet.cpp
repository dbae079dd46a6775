#include "warpgeo/jet.hpp"

#include <cmath>

namespace warpgeo {

namespace {
constexpr int N = Jet::kOrder;
constexpr double kFactorial[] = {1.0, 1.0, 2.0, 6.0};
}  // namespace

double Jet::derivative(int k) const { return c_[k] * kFactorial[k]; }

Jet& Jet::operator+=(const Jet& o) {
  for (int k = 0; k <= N; ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  for (int k = 0; k <= N; ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  std::array<double, N + 1> r{};
  for (int k = 0; k <= N; ++k)
    for (int i = 0; i <= k; ++i) r[k] += c_[i] * o.c_[k - i];
  c_ = r;
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  std::array<double, N + 1> q{};
  for (int k = 0; k <= N; ++k) {
    double s = c_[k];
    for (int i = 1; i <= k; ++i) s -= o.c_[i] * q[k - i];
    q[k] = s / o.c_[0];
  }
  c_ = q;
  return *this;
}

Jet operator-(const Jet& a) {
  Jet r;
  for (int k = 0; k <= N; ++k) r.c_[k] = -a.c_[k];
  return r;
}

Jet sqrt(const Jet& a) {
  Jet r;
  r.c_[0] = std::sqrt(a.c_[0]);
  for (int k = 1; k <= N; ++k) {
    double s = a.c_[k];
    for (int i = 1; i < k; ++i) s -= r.c_[i] * r.c_[k - i];
    r.c_[k] = s / (2.0 * r.c_[0]);
  }
  return r;
}

Jet log(const Jet& a) {
  Jet r;
  r.c_[0] = std::log(a.c_[0]);
  for (int k = 1; k <= N; ++k) {
    double s = a.c_[k];
    for (int i = 1; i < k; ++i) s -= (double(i) / k) * r.c_[i] * a.c_[k - i];
    r.c_[k] = s / a.c_[0];
  }
  return r;
}

Jet exp(const Jet& a) {
  Jet r;
  r.c_[0] = std::exp(a.c_[0]);
  for (int k = 1; k <= N; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += (double(i) / k) * a.c_[i] * r.c_[k - i];
    r.c_[k] = s;
  }
  return r;
}

Jet atan(const Jet& a) {
  // atan(a)' = a' / (1 + a^2), integrated term by term.
  Jet da;
  for (int k = 0; k < N; ++k) da.c_[k] = (k + 1) * a.c_[k + 1];
  Jet w = da / (Jet(1.0) + a * a);
  Jet r;
  r.c_[0] = std::atan(a.c_[0]);
  for (int k = 1; k <= N; ++k) r.c_[k] = w.c_[k - 1] / k;
  return r;
}

Jet abs(const Jet& a) { return a.c_[0] < 0.0 ? -a : a; }

}  // namespace warpgeo
