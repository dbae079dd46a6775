#include <doctest.h>

#include <Eigen/Dense>

#include "warpgeo/errors.hpp"
#include "warpgeo/sampling.hpp"
#include "warpgeo/sasakian.hpp"

using namespace warpgeo;

namespace {

double eval4(const Tensor& T, const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
             const Eigen::VectorXd& d) {
  const int n = T.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s += T(i, j, k, l) * a(i) * b(j) * c(k) * d(l);
  return s;
}

// Unit vectors orthogonal to xi (and to each other), from the coordinate axes.
std::vector<Eigen::VectorXd> horizontal_frame(const Eigen::MatrixXd& g, const Eigen::VectorXd& xi) {
  std::vector<Eigen::VectorXd> out{xi};
  for (int i = 0; i < g.rows(); ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(g.rows(), i);
    for (const auto& w : out) v -= v.dot(g * w) * w;
    const double nv = std::sqrt(v.dot(g * v));
    if (nv > 1e-6) out.push_back(v / nv);
  }
  out.erase(out.begin());
  return out;
}

struct Case {
  SignClass sign;
  double H0;
};

}  // namespace

TEST_CASE("built space forms satisfy the structure identities at 20 points") {
  for (const Case c : {Case{SignClass::Null, -3.0}, Case{SignClass::Positive, 1.0}, Case{SignClass::Negative, -7.0}}) {
    const SasakianModel m = build_model(c.sign, 1.0, c.H0, 3);
    CHECK(m.dim() == 5);
    CHECK(m.alpha0() == doctest::Approx(1.0));
    CHECK(m.H0() == doctest::Approx(c.H0));
    CHECK(m.d0() == doctest::Approx(c.H0 + 3.0));
    for (const ChartPoint& x : sample_points(m.sample_region(), 20, 42)) {
      const StructureResiduals r = verify_structure(m, x);
      CHECK(r.max_ad() < 1e-9);
      CHECK(r.contactForm < 1e-8);
      CHECK(r.pass());
      CHECK(measured_phi_sectional_curvature(m, x) == doctest::Approx(c.H0).epsilon(1e-10));
      CHECK(measured_xi_sectional_curvature(m, x) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("sign mismatch and bad parameters are rejected") {
  CHECK_THROWS_WITH_AS(build_model(SignClass::Positive, 1.0, -7.0), doctest::Contains("sign mismatch"),
                       InvalidArgument);
  CHECK_THROWS_AS(build_model(SignClass::Null, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(build_model(SignClass::Null, -1.0, -3.0), InvalidArgument);
}

TEST_CASE("a miscalibrated alpha in the xi-derivative check is detected at its own scale") {
  const SasakianModel m = build_model(SignClass::Null, 1.0, -3.0);
  const ChartPoint x = sample_points(m.sample_region(), 1, 5).front();
  const StructureResiduals r = verify_structure(m, x, 1.0 + 1e-3);
  CHECK(r.xiDerivative > 3e-4);
  CHECK(r.xiDerivative < 3e-3);
  CHECK_FALSE(r.pass());
}

TEST_CASE("basic invariant tensors on horizontal vectors") {
  const SasakianModel m = build_model(SignClass::Positive, 1.0, 1.0);
  const ChartPoint x{0.1, -0.2, 0.15, 0.05, 0.3};
  const Pi0Tensors t = pi0_tensors(m, x);
  const Eigen::MatrixXd g = m.metric().value(x);
  const auto h = horizontal_frame(g, m.xi(x));
  REQUIRE(h.size() == 4);
  CHECK(eval4(t.pi1, h[0], h[1], h[1], h[0]) == doctest::Approx(1.0));
  CHECK(eval4(t.pi3, h[0], h[1], h[2], h[3]) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(eval4(t.pi3, h[0], h[2], h[1], h[0])) < 1e-14);

  const Tensor K = space_form_curvature(t, 1.0, 1.0);
  const CurvatureData cd = curvature(m.metric(), x);
  CHECK((cd.riemann - K).max_abs() < 1e-8);
}

TEST_CASE("bihomothety transforms alpha and H, keeping the sign of H + 3 alpha^2") {
  const SasakianModel m = build_model(SignClass::Positive, 1.0, 1.0);
  const SasakianModel same = bihomothety(m, {1.0, 1.0});
  CHECK(same.alpha0() == doctest::Approx(1.0));
  CHECK(same.H0() == doctest::Approx(1.0));

  const SasakianModel t = bihomothety(m, {2.0, 1.0});
  CHECK(t.alpha0() == doctest::Approx(0.5));
  CHECK(t.H0() == doctest::Approx(0.25));
  CHECK(t.d0() == doctest::Approx(m.d0() / 4.0));
  const ChartPoint x = sample_points(t.sample_region(), 1, 9).front();
  CHECK(verify_structure(t, x).max_ad() < 1e-9);
  CHECK(measured_phi_sectional_curvature(t, x) == doctest::Approx(0.25).epsilon(1e-9));

  const SasakianModel neg = build_model(SignClass::Negative, 1.0, -7.0);
  for (const BihomothetyParams pq : {BihomothetyParams{2.0, 1.0}, BihomothetyParams{0.5, 3.0}}) {
    const SasakianModel b = bihomothety(neg, pq);
    CHECK(b.d0() < 0.0);
    CHECK(b.sign_class() == SignClass::Negative);
  }
}
