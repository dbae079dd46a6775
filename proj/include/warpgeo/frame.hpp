#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "warpgeo/tensor.hpp"

namespace warpgeo {

using cplx = std::complex<double>;

// Orthonormal frame e_1, Je_1, ..., e_n, Je_n stored as matrix columns in
// chart components. Column 2a is e_a, column 2a+1 is J e_a.
struct AdaptedFrame {
  Eigen::MatrixXd vectors;
  Eigen::MatrixXd metric;

  int n() const { return static_cast<int>(vectors.cols()) / 2; }
  Eigen::VectorXd e(int a) const { return vectors.col(2 * a); }
  Eigen::VectorXd je(int a) const { return vectors.col(2 * a + 1); }
};

// Gram-Schmidt seeded with xi, then the coordinate axes in order.
AdaptedFrame adapt_frame(const Eigen::MatrixXd& g, const Eigen::MatrixXd& J, const Eigen::VectorXd& xi);
AdaptedFrame adapt_frame(const Tensor& g, const Tensor& J, const Eigen::VectorXd& xi);

// Largest deviation from g-orthonormality and from the J-pairing.
double frame_orthonormality_defect(const AdaptedFrame& f);
double frame_pairing_defect(const AdaptedFrame& f, const Eigen::MatrixXd& J);

// Same frame with its unitary part rotated: U acts on the complex
// coordinates of the frame vectors (e_a - i J e_a)/2.
AdaptedFrame rotate_frame(const AdaptedFrame& f, const Eigen::MatrixXcd& U);

// Covariant components in the real frame: T(E_a, E_b, ...).
Tensor frame_components(const Tensor& t, const AdaptedFrame& f);

// Complex components with alternating unbarred/barred slots,
// T(Z_a, Zbar_b) and T(Z_a, Zbar_b, Z_c, Zbar_d), from frame components.
// Z_a = (e_a - i J e_a)/2.
std::vector<cplx> complex_components2(const Tensor& frameT);
std::vector<cplx> complex_components4(const Tensor& frameT);

// Unbarred complex components T(Z_a, Z_b) of a frame-component rank-2 tensor.
std::vector<cplx> holomorphic_components2(const Tensor& frameT);

// Components of a real 1-form on Z_a (frame components in).
std::vector<cplx> complex_components1(const Eigen::VectorXd& frameForm);

}  // namespace warpgeo
