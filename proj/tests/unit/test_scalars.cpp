#include <doctest.h>

#include <cmath>

#include "warpgeo/hyperdual.hpp"
#include "warpgeo/jet.hpp"

using namespace warpgeo;

TEST_CASE("hyper-dual arithmetic gives exact first and mixed second partials") {
  // f(x, y) = x^2 y + sin-free rational part x / y at (1.5, 0.7)
  const double x0 = 1.5, y0 = 0.7;
  const HyperDual x(x0, 1.0, 0.0, 0.0), y(y0, 0.0, 1.0, 0.0);
  const HyperDual f = x * x * y + x / y;
  CHECK(f.v == doctest::Approx(x0 * x0 * y0 + x0 / y0).epsilon(1e-15));
  CHECK(f.d1 == doctest::Approx(2 * x0 * y0 + 1 / y0).epsilon(1e-15));
  CHECK(f.d2 == doctest::Approx(x0 * x0 - x0 / (y0 * y0)).epsilon(1e-15));
  CHECK(f.d12 == doctest::Approx(2 * x0 - 1 / (y0 * y0)).epsilon(1e-15));
}

TEST_CASE("hyper-dual elementary functions") {
  const double x0 = 0.8;
  const HyperDual x(x0, 1.0, 1.0, 0.0);  // both directions along x: d12 is f''
  const HyperDual e = exp(x), l = log(x), s = sqrt(x), a = atan(x), p = pow(x, 2.5);
  CHECK(e.d12 == doctest::Approx(std::exp(x0)));
  CHECK(l.d1 == doctest::Approx(1 / x0));
  CHECK(l.d12 == doctest::Approx(-1 / (x0 * x0)));
  CHECK(s.d12 == doctest::Approx(-0.25 * std::pow(x0, -1.5)));
  CHECK(a.d1 == doctest::Approx(1 / (1 + x0 * x0)));
  CHECK(a.d12 == doctest::Approx(-2 * x0 / ((1 + x0 * x0) * (1 + x0 * x0))));
  CHECK(p.d12 == doctest::Approx(2.5 * 1.5 * std::pow(x0, 0.5)));
}

TEST_CASE("jets carry three exact derivatives") {
  const double x0 = 0.6;
  const Jet x = Jet::variable(x0);
  const Jet f = log(x) * x + atan(x) / (x + 1.0);
  auto ref = [](double t) { return std::log(t) * t + std::atan(t) / (t + 1.0); };
  const double h = 1e-3;
  CHECK(f.derivative(0) == doctest::Approx(ref(x0)).epsilon(1e-15));
  const double d1 = (ref(x0 - 2 * h) - 8 * ref(x0 - h) + 8 * ref(x0 + h) - ref(x0 + 2 * h)) / (12 * h);
  CHECK(f.derivative(1) == doctest::Approx(d1).epsilon(1e-9));

  // closed form for a simple case: d^3/dx^3 of sqrt(x) = (3/8) x^{-5/2}
  const Jet s = sqrt(x);
  CHECK(s.derivative(3) == doctest::Approx(0.375 * std::pow(x0, -2.5)).epsilon(1e-13));
  const Jet e = exp(2.0 * x);
  CHECK(e.derivative(3) == doctest::Approx(8 * std::exp(2 * x0)).epsilon(1e-13));
  const Jet a = abs(-1.0 * x);
  CHECK(a.derivative(1) == doctest::Approx(1.0));
}
