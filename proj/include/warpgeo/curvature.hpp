#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "warpgeo/metric_field.hpp"
#include "warpgeo/tensor.hpp"

namespace warpgeo {

// Default finite-difference step on O(1)-scaled charts.
inline constexpr double kDefaultStep = 1e-3;

// Conventions: R(X,Y)Z = [nabla_X, nabla_Y]Z - nabla_[X,Y]Z,
// riemann(i,j,k,l) = g(R(d_i,d_j)d_k, d_l), ricci(j,k) = g^{il} R(i,j,k,l).
struct CurvatureData {
  ChartPoint point;
  Eigen::MatrixXd g;
  Eigen::MatrixXd gInv;
  Tensor gamma;    // gamma(k,i,j) = Gamma^k_ij
  Tensor riemann;  // fully covariant
  Tensor ricci;
  double scalar = 0.0;
  std::optional<double> kappa;  // R(xi, J xi, J xi, xi)
  std::optional<double> sigma;  // rho(xi, xi)
  // Largest violation of the Riemann symmetries before they were enforced.
  double rawSymmetryDefect = 0.0;
};

Tensor christoffel(const MetricField& m, const ChartPoint& x);

CurvatureData curvature(const MetricField& m, const ChartPoint& x);
CurvatureData curvature(const MetricField& m, const ChartPoint& x, const Eigen::VectorXd& xi,
                        const Eigen::MatrixXd& J);

// Same outputs with every derivative of g taken by central differences of g
// alone (fourth-order stencils) and the Riemann tensor assembled from second
// partials of g rather than from derivatives of Gamma.
CurvatureData fd_oracle(const MetricField& m, const ChartPoint& x, double step = kDefaultStep);

// Cyclic sum R_ijkl + R_jkil + R_kijl, largest component.
double bianchi_residual(const Tensor& riemann);

// Fill kappa and sigma from a computed curvature; xi must be unit.
void attach_xi_invariants(CurvatureData& c, const Eigen::VectorXd& xi, const Eigen::MatrixXd& J);

using TensorFieldFn = std::function<Tensor(const ChartPoint&)>;
using ScalarFieldFn = std::function<double(const ChartPoint&)>;

// nabla T with the derivative slot first: out(d, i, ...) = (nabla_d T)_{i...}.
// The result must have rank <= 4.
Tensor covariant_derivative_field(const MetricField& m, const TensorFieldFn& field, const ChartPoint& x,
                                  double step = kDefaultStep);

// nabla_v T, same rank as T. Gamma is taken from the exact jet at x.
Tensor covariant_derivative_along(const MetricField& m, const TensorFieldFn& field, const ChartPoint& x,
                                  const Eigen::VectorXd& v, double step = kDefaultStep);

// Partial derivatives of a scalar field by fourth-order central differences.
Eigen::VectorXd fd_gradient(const MetricField& m, const ScalarFieldFn& f, const ChartPoint& x,
                            double step = kDefaultStep);
// Matrix of second partials d_i d_j f.
Eigen::MatrixXd fd_second_partials(const MetricField& m, const ScalarFieldFn& f, const ChartPoint& x,
                                   double step = kDefaultStep);
// Derivative of f along v.
double fd_directional(const MetricField& m, const ScalarFieldFn& f, const ChartPoint& x, const Eigen::VectorXd& v,
                      double step = kDefaultStep);

// Hessian (nabla d f)(d_i, d_j) and Laplacian g^{ij} (nabla d f)_ij.
Eigen::MatrixXd fd_hessian(const MetricField& m, const ScalarFieldFn& f, const ChartPoint& x,
                           double step = kDefaultStep);
double fd_laplacian(const MetricField& m, const ScalarFieldFn& f, const ChartPoint& x, double step = kDefaultStep);

}  // namespace warpgeo
