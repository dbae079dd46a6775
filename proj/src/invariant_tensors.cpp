#include "warpgeo/invariant_tensors.hpp"

#include <cmath>

#include "warpgeo/errors.hpp"

namespace warpgeo {

namespace {

void check_structure(const Eigen::MatrixXd& g, const Eigen::MatrixXd& J) {
  const int D = static_cast<int>(g.rows());
  if (D % 2 != 0 || J.rows() != D || J.cols() != D) throw InvalidArgument("invariant tensors: bad dimensions");
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  const double sq = (J * J + Eigen::MatrixXd::Identity(D, D)).cwiseAbs().maxCoeff();
  const double orth = (J.transpose() * g * J - g).cwiseAbs().maxCoeff() / scale;
  if (sq > 1e-8 || orth > 1e-8) throw InvalidArgument("invariant tensors: J not compatible with g");
}

}  // namespace

Tensor pi_tensor(const Eigen::MatrixXd& g, const Eigen::MatrixXd& J) {
  check_structure(g, J);
  const int D = static_cast<int>(g.rows());
  const Eigen::MatrixXd Om = J.transpose() * g;  // Om(x,u) = g(Jx, u)
  Tensor t = Tensor::covariant(D, 4, Symmetry::Riemann);
  for (int x = 0; x < D; ++x)
    for (int y = 0; y < D; ++y)
      for (int z = 0; z < D; ++z)
        for (int u = 0; u < D; ++u)
          t(x, y, z, u) = 0.25 * (g(y, z) * g(x, u) - g(x, z) * g(y, u) - 2.0 * Om(x, y) * Om(z, u) +
                                  Om(y, z) * Om(x, u) - Om(x, z) * Om(y, u));
  t.enforce_symmetry();
  return t;
}

InvariantTensors invariant_tensors(const Eigen::MatrixXd& g, const Eigen::MatrixXd& J, const Eigen::VectorXd& xi) {
  check_structure(g, J);
  const int D = static_cast<int>(g.rows());
  if (xi.size() != D) throw InvalidArgument("invariant tensors: xi has wrong dimension");
  const double nx = xi.dot(g * xi);
  if (std::abs(nx - 1.0) > 1e-8) throw InvalidArgument("invariant tensors: xi is not unit");

  const Eigen::MatrixXd Om = J.transpose() * g;
  const Eigen::VectorXd e = g * xi;
  const Eigen::VectorXd et = g * (J * xi);

  InvariantTensors r;
  r.n = D / 2;
  r.pi = pi_tensor(g, J);
  r.phi = Tensor::covariant(D, 4, Symmetry::Riemann);
  r.psi = Tensor::covariant(D, 4, Symmetry::Riemann);
  // s(a,b) = eta_a eta_b + eta~_a eta~_b, w(a,b) = eta_a eta~_b - eta~_a eta_b.
  auto s = [&](int a, int b) { return e[a] * e[b] + et[a] * et[b]; };
  auto w = [&](int a, int b) { return e[a] * et[b] - et[a] * e[b]; };
  for (int x = 0; x < D; ++x)
    for (int y = 0; y < D; ++y)
      for (int z = 0; z < D; ++z)
        for (int u = 0; u < D; ++u) {
          const double v = g(y, z) * s(x, u) - g(x, z) * s(y, u) + Om(y, z) * w(x, u) - Om(x, z) * w(y, u) -
                           2.0 * Om(x, y) * w(z, u) + s(y, z) * g(x, u) - s(x, z) * g(y, u) +
                           w(y, z) * Om(x, u) - w(x, z) * Om(y, u) - 2.0 * w(x, y) * Om(z, u);
          r.phi(x, y, z, u) = 0.125 * v;
          r.psi(x, y, z, u) = w(x, y) * -w(z, u);
        }
  r.phi.enforce_symmetry();
  r.psi.enforce_symmetry();
  const double n = r.n;
  r.pTensor = (2.0 / ((n + 1) * (n + 2))) * r.pi - (4.0 / (n + 2)) * r.phi + r.psi;
  return r;
}

Tensor ricci_trace(const Tensor& R, const Eigen::MatrixXd& gInv) {
  const int D = R.dim();
  Tensor rho = Tensor::covariant(D, 2, Symmetry::Symmetric);
  for (int j = 0; j < D; ++j)
    for (int k = 0; k < D; ++k) {
      double acc = 0.0;
      for (int i = 0; i < D; ++i)
        for (int l = 0; l < D; ++l) acc += gInv(i, l) * R(i, j, k, l);
      rho(j, k) = acc;
    }
  rho.enforce_symmetry();
  return rho;
}

Tensor qch_tensor(const InvariantTensors& t, double a, double b, double c) {
  return a * t.pi + b * t.phi + c * t.psi;
}

}  // namespace warpgeo
