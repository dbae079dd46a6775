#pragma once

#include <Eigen/Dense>

#include "warpgeo/tensor.hpp"

namespace warpgeo {

// Invariant curvature-type tensors of a Kahler structure (g, J) with a unit
// vector field xi: pi (constant holomorphic curvature 1), Phi and Psi built
// with eta = g(xi, .) and eta~ = g(J xi, .), and the Ricci-traceless
// combination P. All four are fully covariant with Riemann symmetries.
struct InvariantTensors {
  int n = 0;
  Tensor pi;
  Tensor phi;
  Tensor psi;
  Tensor pTensor;
};

// Throws InvalidArgument if xi is not unit to 1e-8 or J is not
// g-orthogonal with J^2 = -1.
InvariantTensors invariant_tensors(const Eigen::MatrixXd& g, const Eigen::MatrixXd& J, const Eigen::VectorXd& xi);

Tensor pi_tensor(const Eigen::MatrixXd& g, const Eigen::MatrixXd& J);

// rho(j,k) = g^{il} R(i,j,k,l).
Tensor ricci_trace(const Tensor& R, const Eigen::MatrixXd& gInv);

// a pi + b Phi + c Psi.
Tensor qch_tensor(const InvariantTensors& t, double a, double b, double c);

}  // namespace warpgeo
