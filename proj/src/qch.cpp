#include "warpgeo/qch.hpp"

#include <algorithm>
#include <cmath>

#include "warpgeo/errors.hpp"

namespace warpgeo {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

BochnerResult finish(int n, std::vector<cplx> comps) {
  BochnerResult r;
  r.n = n;
  double s = 0.0;
  for (const cplx& z : comps) {
    r.maxModulus = std::max(r.maxModulus, std::abs(z));
    s += std::norm(z);
  }
  r.norm = std::sqrt(s);
  r.components = std::move(comps);
  return r;
}

}  // namespace

QchCoefficients qch_fit(const Tensor& R, const Eigen::MatrixXd& g, const Eigen::MatrixXd& J,
                        const Eigen::VectorXd& xi) {
  const int D = R.dim();
  const int n = D / 2;
  if (n < 2) throw InvalidArgument("qch_fit: n must be >= 2");
  const Eigen::MatrixXd gInv = inverse_metric(g);
  const Tensor rho = ricci_trace(R, gInv);
  const Eigen::VectorXd jx = J * xi;

  QchCoefficients q;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      q.tau += gInv(i, j) * rho(i, j);
      q.sigma += xi[i] * xi[j] * rho(i, j);
      for (int k = 0; k < D; ++k)
        for (int l = 0; l < D; ++l) q.kappa += xi[i] * jx[j] * jx[k] * xi[l] * R(i, j, k, l);
    }
  const double nn = n * (n - 1.0);
  q.a = (q.tau - 4.0 * q.sigma + 2.0 * q.kappa) / nn;
  q.b = (-2.0 * q.tau + 4.0 * (n + 2) * q.sigma - 4.0 * (n + 1) * q.kappa) / nn;
  q.c = (q.tau - 4.0 * (n + 1) * q.sigma + (n + 1.0) * (n + 2.0) * q.kappa) / nn;

  const InvariantTensors t = invariant_tensors(g, J, xi);
  const Tensor gt = Tensor::from_matrix(g, {Slot::Co, Slot::Co}, Symmetry::Symmetric);
  const double nr = frobenius_norm(R, gt);
  q.residual = frobenius_norm(R - qch_tensor(t, q.a, q.b, q.c), gt) / std::max(1.0, nr);
  return q;
}

QchCoefficients qch_fit(const CurvatureData& cd, const Eigen::MatrixXd& J, const Eigen::VectorXd& xi) {
  return qch_fit(cd.riemann, cd.g, J, xi);
}

BochnerResult complexify(const Tensor& T, const AdaptedFrame& frame) {
  return finish(frame.n(), complex_components4(frame_components(T, frame)));
}

BochnerResult bochner_operator(const Tensor& R, const Eigen::MatrixXd& g, const Eigen::MatrixXd& J,
                               const AdaptedFrame& frame) {
  (void)J;
  const int n = frame.n();
  const Eigen::MatrixXd gInv = inverse_metric(g);
  const Tensor rho = ricci_trace(R, gInv);
  double tau = 0.0;
  for (int i = 0; i < R.dim(); ++i)
    for (int j = 0; j < R.dim(); ++j) tau += gInv(i, j) * rho(i, j);

  const std::vector<cplx> Rc = complex_components4(frame_components(R, frame));
  const std::vector<cplx> rc = complex_components2(frame_components(rho, frame));
  // g_{a b~} = delta/2 in the unitary frame.
  auto gc = [](int a, int b) { return a == b ? 0.5 : 0.0; };
  auto rh = [&rc, n](int a, int b) { return rc[sz(a * n + b)]; };
  const double k1 = 1.0 / (n + 2.0);
  const double k2 = tau / (2.0 * (n + 1.0) * (n + 2.0));
  std::vector<cplx> out(Rc.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const std::size_t i = sz(((a * n + b) * n + c) * n + d);
          out[i] = Rc[i] - k1 * (gc(a, b) * rh(c, d) + gc(c, b) * rh(a, d) + gc(c, d) * rh(a, b) + gc(a, d) * rh(c, b)) +
                   k2 * (gc(a, b) * gc(c, d) + gc(c, b) * gc(a, d));
        }
  return finish(n, std::move(out));
}

BochnerResult bochner_operator(const CurvatureData& cd, const Eigen::MatrixXd& J, const Eigen::VectorXd& xi) {
  return bochner_operator(cd.riemann, cd.g, J, adapt_frame(cd.g, J, xi));
}

BcrCpReport verify_bcr_cp(const Tensor& R, const Eigen::MatrixXd& g, const Eigen::MatrixXd& J,
                          const AdaptedFrame& frame, const InvariantTensors& tensors, const QchCoefficients& coeffs,
                          double fitTol) {
  if (!(coeffs.residual <= fitTol)) throw PreconditionFailed("verify_bcr_cp: curvature is not QCH at this point");
  const BochnerResult B = bochner_operator(R, g, J, frame);
  const BochnerResult P = complexify(tensors.pTensor, frame);
  BcrCpReport r;
  r.bochnerNorm = B.norm;
  r.cpNorm = std::abs(coeffs.c) * P.norm;
  double s = 0.0;
  for (std::size_t i = 0; i < B.components.size(); ++i) s += std::norm(B.components[i] - coeffs.c * P.components[i]);
  r.residual = std::sqrt(s);
  return r;
}

}  // namespace warpgeo
