#pragma once

#include <Eigen/Dense>
#include <vector>

#include "warpgeo/curvature.hpp"
#include "warpgeo/frame.hpp"
#include "warpgeo/invariant_tensors.hpp"
#include "warpgeo/tensor.hpp"

namespace warpgeo {

struct QchCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double tau = 0.0;
  double sigma = 0.0;
  double kappa = 0.0;
  // |R - (a pi + b Phi + c Psi)| / max(1, |R|), Frobenius norms with g.
  double residual = 0.0;
};

// (a, b, c) from tau, sigma = rho(xi, xi) and kappa = R(xi, J xi, J xi, xi).
// Throws InvalidArgument for n < 2.
QchCoefficients qch_fit(const Tensor& R, const Eigen::MatrixXd& g, const Eigen::MatrixXd& J, const Eigen::VectorXd& xi);
QchCoefficients qch_fit(const CurvatureData& cd, const Eigen::MatrixXd& J, const Eigen::VectorXd& xi);

// Complex components of a Bochner-type tensor in an adapted frame. Norm is
// sqrt(sum |B_{a b~ c d~}|^2) over the unitary frame Z_a = (e_a - i J e_a)/2.
struct BochnerResult {
  int n = 0;
  std::vector<cplx> components;
  double maxModulus = 0.0;
  double norm = 0.0;
};

BochnerResult bochner_operator(const Tensor& R, const Eigen::MatrixXd& g, const Eigen::MatrixXd& J,
                               const AdaptedFrame& frame);
// Frame seeded with xi.
BochnerResult bochner_operator(const CurvatureData& cd, const Eigen::MatrixXd& J, const Eigen::VectorXd& xi);

// Same complexification for any covariant rank-4 tensor, no trace removal.
BochnerResult complexify(const Tensor& T, const AdaptedFrame& frame);

struct BcrCpReport {
  double bochnerNorm = 0.0;
  double cpNorm = 0.0;
  double residual = 0.0;  // |B(R) - c P|
};

// B(R) = c P for a QCH curvature. Throws PreconditionFailed when the fit
// residual exceeds fitTol.
BcrCpReport verify_bcr_cp(const Tensor& R, const Eigen::MatrixXd& g, const Eigen::MatrixXd& J,
                          const AdaptedFrame& frame, const InvariantTensors& tensors, const QchCoefficients& coeffs,
                          double fitTol = 1e-6);

}  // namespace warpgeo
