#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "warpgeo/errors.hpp"
#include "warpgeo/frame.hpp"
#include "warpgeo/invariant_tensors.hpp"
#include "warpgeo/tensor.hpp"

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

// Real form of a random positive Hermitian matrix: J-invariant and SPD.
Eigen::MatrixXd random_hermitian_metric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  Eigen::MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = {N(rng), N(rng)};
  const Eigen::MatrixXcd H = A * A.adjoint() + Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXd g(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g(2 * i, 2 * j) = H(i, j).real();
      g(2 * i + 1, 2 * j + 1) = H(i, j).real();
      g(2 * i, 2 * j + 1) = -H(i, j).imag();
      g(2 * i + 1, 2 * j) = H(i, j).imag();
    }
  return g;
}

}  // namespace

TEST_CASE("contracting the identity endomorphism gives the dimension") {
  const Tensor I = Tensor::from_matrix(Eigen::MatrixXd::Identity(6, 6), {Slot::Contra, Slot::Co});
  CHECK(contract(I, 0, 1)() == doctest::Approx(6.0));
}

TEST_CASE("Ricci trace of the zero curvature tensor vanishes") {
  const Tensor g = Tensor::from_matrix(Eigen::MatrixXd::Identity(6, 6), {Slot::Co, Slot::Co}, Symmetry::Symmetric);
  const Tensor R = Tensor::covariant(6, 4, Symmetry::Riemann);
  const Tensor rho = contract(R, 0, 3, &g);
  CHECK(rho.rank() == 2);
  CHECK(rho.max_abs() == 0.0);
}

TEST_CASE("trace of pi over slots 1 and 4 is (n+1)/2 g") {
  const int n = 3;
  const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(2 * n);
  xi(0) = 1.0;
  const InvariantTensors t = invariant_tensors(g, standard_j(n), xi);
  const Tensor gt = Tensor::from_matrix(g, {Slot::Co, Slot::Co}, Symmetry::Symmetric);
  const Tensor r = contract(t.pi, 0, 3, &gt);
  CHECK((r.matrix() - 2.0 * g).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((ricci_trace(t.pi, g).matrix() - 2.0 * g).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("contraction requires a metric for two covariant slots") {
  const Tensor g = Tensor::from_matrix(Eigen::MatrixXd::Identity(3, 3), {Slot::Co, Slot::Co});
  CHECK_THROWS_AS(contract(g, 0, 1), InvalidArgument);
}

TEST_CASE("Frobenius norms") {
  const Tensor zero = Tensor::covariant(6, 4);
  const Eigen::MatrixXd gm = Eigen::MatrixXd::Identity(6, 6);
  const Tensor g = Tensor::from_matrix(gm, {Slot::Co, Slot::Co}, Symmetry::Symmetric);
  CHECK(frobenius_norm(zero, g) == 0.0);
  CHECK(frobenius_norm_squared(g, g) == doctest::Approx(6.0));

  // non-Euclidean metric: |g|^2 = dim still
  std::mt19937_64 rng(7);
  const Eigen::MatrixXd h = random_hermitian_metric(3, rng);
  const Tensor ht = Tensor::from_matrix(h, {Slot::Co, Slot::Co}, Symmetry::Symmetric);
  CHECK(frobenius_norm_squared(ht, ht) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("inverse_metric rejects indefinite and ill-conditioned input") {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2, 2);
  g(1, 1) = -1.0;
  CHECK_THROWS_AS(inverse_metric(g), SingularMetric);
  g(1, 1) = 1e-14;
  CHECK_THROWS_AS(inverse_metric(g), SingularMetric);
}

TEST_CASE("symmetry enforcement is idempotent and keeps Riemann symmetries") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N;
  Tensor R = Tensor::covariant(4, 4, Symmetry::Riemann);
  for (double& v : R.data()) v = N(rng);
  R.enforce_symmetry();
  const Tensor once = R;
  R.enforce_symmetry();
  CHECK((R - once).max_abs() < 1e-15);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          CHECK(R(i, j, k, l) == doctest::Approx(-R(j, i, k, l)));
          CHECK(R(i, j, k, l) == doctest::Approx(R(k, l, i, j)));
          CHECK(R(i, j, k, l) + R(j, k, i, l) + R(k, i, j, l) == doctest::Approx(0.0).epsilon(1e-12));
        }
}

TEST_CASE("adapted frame on Euclidean space with xi on the first axis") {
  const int n = 3;
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(2 * n);
  xi(0) = 1.0;
  const AdaptedFrame f = adapt_frame(Eigen::MatrixXd::Identity(2 * n, 2 * n), standard_j(n), xi);
  CHECK((f.e(0) - xi).norm() < 1e-15);
  CHECK((f.je(0) - standard_j(n) * xi).norm() < 1e-15);
  CHECK(f.vectors.cwiseAbs().isApprox(Eigen::MatrixXd::Identity(2 * n, 2 * n)));
}

TEST_CASE("adapted frame on random Hermitian metrics is orthonormal") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> N;
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + trial % 2;
    const Eigen::MatrixXd g = random_hermitian_metric(n, rng);
    const Eigen::MatrixXd J = standard_j(n);
    Eigen::VectorXd v(2 * n);
    for (int i = 0; i < 2 * n; ++i) v(i) = N(rng);
    const Eigen::VectorXd xi = v / std::sqrt(v.dot(g * v));
    const AdaptedFrame f = adapt_frame(g, J, xi);
    CHECK(frame_orthonormality_defect(f) < 1e-12);
    CHECK(frame_pairing_defect(f, J) < 1e-12);
    CHECK((f.e(0) - xi).norm() < 1e-12);
  }
}
