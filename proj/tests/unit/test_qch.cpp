#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "warpgeo/bochner_identities.hpp"
#include "warpgeo/frame.hpp"
#include "warpgeo/invariant_tensors.hpp"
#include "warpgeo/qch.hpp"
#include "warpgeo/sampling.hpp"
#include "warpgeo/sasakian.hpp"
#include "warpgeo/warped_kahler.hpp"

using namespace warpgeo;

namespace {

Eigen::MatrixXd standard_j(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    J(2 * a + 1, 2 * a) = 1.0;
    J(2 * a, 2 * a + 1) = -1.0;
  }
  return J;
}

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

struct Euclidean {
  int n;
  Eigen::MatrixXd g, J;
  Eigen::VectorXd xi;
  explicit Euclidean(int n_, const Eigen::VectorXd& dir = {}) : n(n_) {
    g = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    J = standard_j(n);
    xi = dir.size() ? dir.normalized() : Eigen::VectorXd::Unit(2 * n, 0);
  }
  CurvatureData curvature_of(const Tensor& R) const {
    CurvatureData cd;
    cd.g = g;
    cd.gInv = g;
    cd.riemann = R;
    cd.ricci = ricci_trace(R, g);
    cd.scalar = cd.ricci.matrix().trace();
    attach_xi_invariants(cd, xi, J);
    return cd;
  }
};

}  // namespace

TEST_CASE("invariant tensors on xi, J xi and the distribution") {
  const Euclidean E(3);
  const InvariantTensors t = invariant_tensors(E.g, E.J, E.xi);
  const Eigen::VectorXd jxi = E.J * E.xi;
  CHECK(eval4(t.pi, E.xi, jxi, jxi, E.xi) == doctest::Approx(1.0));
  CHECK(eval4(t.phi, E.xi, jxi, jxi, E.xi) == doctest::Approx(1.0));
  CHECK(eval4(t.psi, E.xi, jxi, jxi, E.xi) == doctest::Approx(1.0));
  const Eigen::VectorXd x0 = Eigen::VectorXd::Unit(6, 2), jx0 = E.J * x0;
  CHECK(eval4(t.phi, x0, jx0, jx0, x0) == doctest::Approx(0.0));
  CHECK(eval4(t.psi, x0, jx0, jx0, x0) == doctest::Approx(0.0));
  CHECK(eval4(t.pi, x0, jx0, jx0, x0) == doctest::Approx(1.0));
}

TEST_CASE("P has zero Ricci trace in dimensions 6 and 8") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> N;
  for (int n : {3, 4}) {
    Eigen::VectorXd d(2 * n);
    for (int i = 0; i < 2 * n; ++i) d(i) = N(rng);
    const Euclidean E(n, d);
    const InvariantTensors t = invariant_tensors(E.g, E.J, E.xi);
    CHECK(ricci_trace(t.pTensor, E.g).max_abs() < 1e-10);
    CHECK(t.pTensor.max_abs() > 1e-2);
  }
}

TEST_CASE("invariant tensors reject a non-unit xi") {
  const Euclidean E(3);
  CHECK_THROWS(invariant_tensors(E.g, E.J, 2.0 * E.xi));
}

TEST_CASE("QCH fit of constant holomorphic curvature and of zero") {
  const Euclidean E(3);
  const InvariantTensors t = invariant_tensors(E.g, E.J, E.xi);
  const CurvatureData cd = E.curvature_of(t.pi);
  CHECK(cd.scalar == doctest::Approx(12.0));
  CHECK(*cd.sigma == doctest::Approx(2.0));
  CHECK(*cd.kappa == doctest::Approx(1.0));
  const QchCoefficients q = qch_fit(cd, E.J, E.xi);
  CHECK(q.a == doctest::Approx(1.0));
  CHECK(std::abs(q.b) < 1e-12);
  CHECK(std::abs(q.c) < 1e-12);
  CHECK(q.residual < 1e-9);

  const QchCoefficients z = qch_fit(E.curvature_of(Tensor::covariant(6, 4, Symmetry::Riemann)), E.J, E.xi);
  CHECK(z.a == 0.0);
  CHECK(z.b == 0.0);
  CHECK(z.c == 0.0);
  CHECK(z.residual == 0.0);
}

TEST_CASE("Type 9 curvature is (a, b, c) = (-4, -8, 0) at p = 1") {
  const WarpedKahlerMetric wm =
      build_metric(build_model(SignClass::Null, 1.0, -3.0), make_warp({"type9", 1.0, 0.0, 0.0, 0.0}));
  const ChartPoint x{0.1, -0.05, 0.08, 0.02, 0.3, 0.0};
  const CurvatureData cd = wm.field.curvature_at(x);
  CHECK(cd.scalar == doctest::Approx(-80.0));
  CHECK(*cd.sigma == doctest::Approx(-20.0));
  CHECK(*cd.kappa == doctest::Approx(-12.0));
  const QchCoefficients q = qch_fit(cd, wm.J(x), wm.xi(x));
  CHECK(q.a == doctest::Approx(-4.0));
  CHECK(q.b == doctest::Approx(-8.0));
  CHECK(std::abs(q.c) < 1e-9);
  CHECK(q.residual < 1e-6);
  CHECK(bochner_operator(cd, wm.J(x), wm.xi(x)).norm < 1e-7);
}

TEST_CASE("Bochner operator vanishes on flat space and complex space forms") {
  const Euclidean E(3);
  CHECK(bochner_operator(E.curvature_of(Tensor::covariant(6, 4, Symmetry::Riemann)), E.J, E.xi).norm == 0.0);
  const InvariantTensors t = invariant_tensors(E.g, E.J, E.xi);
  CHECK(bochner_operator(E.curvature_of(t.pi), E.J, E.xi).norm < 1e-9);

  const HermitianField csf = complex_space_form(3, 1.0);
  for (const ChartPoint& x : sample_points(csf.region, 3, 5)) {
    const CurvatureData cd = csf.curvature_at(x);
    CHECK(bochner_operator(cd, csf.J(x), csf.xi(x)).norm < 1e-9);
    const QchCoefficients q = qch_fit(cd, csf.J(x), csf.xi(x));
    CHECK(q.a == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("B(R) = cP for algebraic QCH tensors, linear in R") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  std::normal_distribution<double> N;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 2;
    Eigen::VectorXd d(2 * n);
    for (int i = 0; i < 2 * n; ++i) d(i) = N(rng);
    const Euclidean E(n, d);
    const InvariantTensors t = invariant_tensors(E.g, E.J, E.xi);
    const double a = U(rng), b = U(rng), c = trial == 0 ? 1.0 : U(rng);
    const Tensor R = qch_tensor(t, a, b, c);
    const AdaptedFrame f = adapt_frame(E.g, E.J, E.xi);
    const QchCoefficients q = qch_fit(R, E.g, E.J, E.xi);
    CHECK(q.a == doctest::Approx(a).epsilon(1e-12));
    CHECK(q.b == doctest::Approx(b).epsilon(1e-12));
    CHECK(q.c == doctest::Approx(c).epsilon(1e-12));
    const BcrCpReport r = verify_bcr_cp(R, E.g, E.J, f, t, q);
    CHECK(r.residual < 1e-9);
    CHECK(r.bochnerNorm == doctest::Approx(std::abs(c) * complexify(t.pTensor, f).norm).epsilon(1e-10));
    const BcrCpReport r2 = verify_bcr_cp(2.0 * R, E.g, E.J, f, t, qch_fit(2.0 * R, E.g, E.J, E.xi));
    CHECK(r2.bochnerNorm == doctest::Approx(2.0 * r.bochnerNorm));
    CHECK(r2.residual < 1e-9);
  }
}

TEST_CASE("B(R) = cP for a c = 0 catalog-style curvature") {
  const Euclidean E(3);
  const InvariantTensors t = invariant_tensors(E.g, E.J, E.xi);
  const Tensor R = qch_tensor(t, -4.0, -8.0, 0.0);
  const AdaptedFrame f = adapt_frame(E.g, E.J, E.xi);
  const BcrCpReport r = verify_bcr_cp(R, E.g, E.J, f, t, qch_fit(R, E.g, E.J, E.xi));
  CHECK(r.bochnerNorm < 1e-12);
  CHECK(r.cpNorm < 1e-12);
}

TEST_CASE("covariant derivative identities of Bochner-flat metrics") {
  const HermitianField flat = euclidean_hermitian(3);
  const ChartPoint o{0.1, 0.2, 0.3, 0.1, 0.0, -0.1};
  CHECK(nabla_rho_check(flat, o).residual < 1e-12);
  CHECK(nabla_R_check(flat, o).residual < 1e-12);

  const HermitianField csf = complex_space_form(3, -1.0);
  const ChartPoint y = sample_points(csf.region, 1, 2).front();
  CHECK(nabla_rho_check(csf, y).residual < 1e-6);
  CHECK(nabla_R_check(csf, y).residual < 1e-6);

  const WarpedKahlerMetric wm =
      build_metric(build_model(SignClass::Null, 1.0, -3.0), make_warp({"type9", 1.0, 0.0, 0.0, 0.0}));
  for (const ChartPoint& x : sample_points(wm.field.region, 2, 42)) {
    CHECK(nabla_rho_check(wm.field, x).residual < 1e-5);
    CHECK(nabla_R_check(wm.field, x).residual < 1e-4);
  }
}
