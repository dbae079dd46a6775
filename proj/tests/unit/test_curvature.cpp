#include <doctest.h>

#include <cmath>

#include "warpgeo/curvature.hpp"
#include "warpgeo/metric_field.hpp"
#include "warpgeo/sasakian.hpp"
#include "warpgeo/warped_kahler.hpp"

using namespace warpgeo;

TEST_CASE("Christoffel symbols of flat charts") {
  const MetricField e = euclidean_metric(6);
  CHECK(christoffel(e, ChartPoint{0.1, 0.2, 0.3, 0.4, 0.5, 0.6}).max_abs() == 0.0);

  const MetricField polar = polar_plane_metric();
  const ChartPoint x{2.0, 0.3};
  const Tensor G = christoffel(polar, x);
  CHECK(G(0, 1, 1) == doctest::Approx(-2.0));
  CHECK(G(1, 0, 1) == doctest::Approx(0.5));
  CHECK(G(1, 1, 0) == doctest::Approx(0.5));
  CHECK(G(0, 0, 0) == 0.0);
  CHECK(curvature(polar, x).riemann.max_abs() < 1e-14);
}

TEST_CASE("flat space has zero curvature") {
  const CurvatureData cd = curvature(euclidean_metric(6), ChartPoint{0, 0, 0, 0, 0, 0});
  CHECK(cd.riemann.max_abs() == 0.0);
  CHECK(cd.scalar == 0.0);
  CHECK(fd_oracle(euclidean_metric(6), ChartPoint{0.1, 0, 0, 0, 0, 0}).riemann.max_abs() < 1e-10);
}

TEST_CASE("unit sphere has scalar curvature 2, exactly and by the oracle") {
  const MetricField s2 = round_sphere_metric();
  for (double th : {0.4, 1.0, 2.2}) {
    const ChartPoint x{th, 0.7};
    const CurvatureData cd = curvature(s2, x);
    CHECK(cd.scalar == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(cd.riemann(0, 1, 1, 0) == doctest::Approx(std::sin(th) * std::sin(th)).epsilon(1e-13));
    const CurvatureData fd = fd_oracle(s2, x, 1e-3);
    CHECK(std::abs(fd.scalar - 2.0) < 1e-5);
  }
}

TEST_CASE("metric is parallel") {
  const MetricField s2 = round_sphere_metric();
  const ChartPoint x{1.1, 0.2};
  const Tensor ng = covariant_derivative_field(
      s2, [&](const ChartPoint& y) { return Tensor::from_matrix(s2.value(y), {Slot::Co, Slot::Co}); }, x, 1e-3);
  CHECK(ng.rank() == 3);
  CHECK(ng.max_abs() < 1e-8);
}

TEST_CASE("FD Laplacian of a known function") {
  // f = cos(theta) on the unit sphere is an eigenfunction: Laplacian f = -2 f
  const MetricField s2 = round_sphere_metric();
  const ChartPoint x{0.9, -0.4};
  const double lap = fd_laplacian(s2, [](const ChartPoint& y) { return std::cos(y[0]); }, x);
  CHECK(lap == doctest::Approx(-2.0 * std::cos(0.9)).epsilon(1e-8));
}

TEST_CASE("warped flat-recovery metric: exact Christoffels agree with the oracle") {
  const SasakianModel base = build_model(SignClass::Positive, 1.0, 1.0, 3);
  const WarpedKahlerMetric wm = build_metric(base, make_warp({"linear", 1.0, 0.0, 0.0, 0.0}));
  const ChartPoint x{0.1, -0.05, 0.08, 0.02, 0.3, 0.05};
  const CurvatureData ad = curvature(wm.field.metric, x);
  const CurvatureData fd = fd_oracle(wm.field.metric, x);
  CHECK((ad.gamma - fd.gamma).max_abs() < 1e-8);
  CHECK(ad.riemann.max_abs() < 1e-8);
  CHECK(fd.riemann.max_abs() < 1e-5);
  CHECK(ad.rawSymmetryDefect < 1e-10);
}

TEST_CASE("the oracle agrees with exact curvature on a curved base") {
  const SasakianModel base = build_model(SignClass::Negative, 1.0, -7.0, 3);
  const ChartPoint x{0.1, 0.05, -0.1, 0.02, 0.3};
  const CurvatureData ad = curvature(base.metric(), x);
  const CurvatureData fd = fd_oracle(base.metric(), x);
  CHECK((ad.riemann - fd.riemann).max_abs() < 1e-5);
  CHECK(std::abs(ad.scalar - fd.scalar) < 1e-5);
}

TEST_CASE("points outside the chart are rejected") {
  const MetricField polar = polar_plane_metric();
  CHECK_THROWS(curvature(polar, ChartPoint{-1.0, 0.0}));
}
