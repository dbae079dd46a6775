#include "warpgeo/frame.hpp"

#include <cmath>

#include "warpgeo/errors.hpp"

namespace warpgeo {

namespace {

// Complex weight of real frame slot q (0..2n-1) in Z_a (barred=false) or
// Zbar_a (barred=true). Nonzero only for q = 2a, 2a+1.
cplx zweight(int a, int q, bool barred) {
  if (q == 2 * a) return {0.5, 0.0};
  if (q == 2 * a + 1) return {0.0, barred ? 0.5 : -0.5};
  return {0.0, 0.0};
}

}  // namespace

AdaptedFrame adapt_frame(const Eigen::MatrixXd& g, const Eigen::MatrixXd& J, const Eigen::VectorXd& xi) {
  const int dim = static_cast<int>(g.rows());
  if (dim % 2 != 0) throw InvalidArgument("adapted frames need even dimension");
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(dim, dim);
  const double gscale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((J * J + I).cwiseAbs().maxCoeff() > 1e-10) throw InvalidArgument("J does not square to -1");
  if ((J.transpose() * g * J - g).cwiseAbs().maxCoeff() > 1e-10 * gscale)
    throw InvalidArgument("J is not an isometry of g");
  (void)inverse_metric(g);  // rejects degenerate g
  const double xn = std::sqrt(xi.dot(g * xi));
  if (!(xn > 1e-14)) throw InvalidArgument("xi has zero norm");

  AdaptedFrame f;
  f.metric = g;
  f.vectors.resize(dim, dim);
  int filled = 0;
  auto push_pair = [&](const Eigen::VectorXd& e) {
    f.vectors.col(filled++) = e;
    f.vectors.col(filled++) = J * e;
  };
  push_pair(xi / xn);
  for (int axis = 0; axis < dim && filled < dim; ++axis) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(dim, axis);
    // Two passes of modified Gram-Schmidt keep the result orthogonal to 1e-15.
    for (int pass = 0; pass < 2; ++pass)
      for (int c = 0; c < filled; ++c) {
        const Eigen::VectorXd u = f.vectors.col(c);
        v -= u.dot(g * v) * u;
      }
    const double vn = std::sqrt(std::max(0.0, v.dot(g * v)));
    if (vn < 1e-8) continue;
    push_pair(v / vn);
  }
  if (filled != dim) throw InvalidArgument("frame construction did not span the tangent space");
  return f;
}

AdaptedFrame adapt_frame(const Tensor& g, const Tensor& J, const Eigen::VectorXd& xi) {
  return adapt_frame(g.matrix(), J.matrix(), xi);
}

double frame_orthonormality_defect(const AdaptedFrame& f) {
  const Eigen::MatrixXd G = f.vectors.transpose() * f.metric * f.vectors;
  return (G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
}

double frame_pairing_defect(const AdaptedFrame& f, const Eigen::MatrixXd& J) {
  double d = 0.0;
  for (int a = 0; a < f.n(); ++a) d = std::max(d, (J * f.e(a) - f.je(a)).cwiseAbs().maxCoeff());
  return d;
}

AdaptedFrame rotate_frame(const AdaptedFrame& f, const Eigen::MatrixXcd& U) {
  // Identify e_a + i J e_a ... with C^n: real vector v = sum x_a e_a + y_a Je_a
  // corresponds to z_a = x_a + i y_a, and J acts as multiplication by i.
  const int n = f.n();
  AdaptedFrame r = f;
  for (int b = 0; b < n; ++b) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(f.vectors.rows());
    Eigen::VectorXd je = Eigen::VectorXd::Zero(f.vectors.rows());
    for (int a = 0; a < n; ++a) {
      const cplx u = U(a, b);
      e += u.real() * f.e(a) + u.imag() * f.je(a);
      je += -u.imag() * f.e(a) + u.real() * f.je(a);
    }
    r.vectors.col(2 * b) = e;
    r.vectors.col(2 * b + 1) = je;
  }
  return r;
}

Tensor frame_components(const Tensor& t, const AdaptedFrame& f) {
  const int dim = t.dim();
  const int r = t.rank();
  const Eigen::MatrixXd& E = f.vectors;
  // For contravariant slots use the dual coframe: E^{-1}.
  const Eigen::MatrixXd Einv = E.inverse();
  std::vector<double> cur = t.data();
  std::vector<double> nxt(cur.size());
  for (int s = 0; s < r; ++s) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    const bool co = t.variance()[static_cast<std::size_t>(s)] == Slot::Co;
    std::size_t stride = 1;
    for (int q = s + 1; q < r; ++q) stride *= static_cast<std::size_t>(dim);
    const std::size_t block = stride * static_cast<std::size_t>(dim);
    for (std::size_t base = 0; base < cur.size(); base += block)
      for (std::size_t inner = 0; inner < stride; ++inner)
        for (int A = 0; A < dim; ++A) {
          double acc = 0.0;
          for (int i = 0; i < dim; ++i) {
            const double w = co ? E(i, A) : Einv(A, i);
            acc += w * cur[base + static_cast<std::size_t>(i) * stride + inner];
          }
          nxt[base + static_cast<std::size_t>(A) * stride + inner] = acc;
        }
    cur.swap(nxt);
  }
  Tensor out(dim, t.variance(), t.symmetry());
  out.data() = cur;
  return out;
}

std::vector<cplx> complex_components2(const Tensor& T) {
  const int n = T.dim() / 2;
  std::vector<cplx> out(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cplx acc = 0.0;
      for (int p = 2 * a; p <= 2 * a + 1; ++p)
        for (int q = 2 * b; q <= 2 * b + 1; ++q) acc += zweight(a, p, false) * zweight(b, q, true) * T(p, q);
      out[static_cast<std::size_t>(a * n + b)] = acc;
    }
  return out;
}

std::vector<cplx> holomorphic_components2(const Tensor& T) {
  const int n = T.dim() / 2;
  std::vector<cplx> out(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      cplx acc = 0.0;
      for (int p = 2 * a; p <= 2 * a + 1; ++p)
        for (int q = 2 * b; q <= 2 * b + 1; ++q) acc += zweight(a, p, false) * zweight(b, q, false) * T(p, q);
      out[static_cast<std::size_t>(a * n + b)] = acc;
    }
  return out;
}

std::vector<cplx> complex_components4(const Tensor& T) {
  const int n = T.dim() / 2;
  std::vector<cplx> out(static_cast<std::size_t>(n * n * n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          cplx acc = 0.0;
          for (int p = 2 * a; p <= 2 * a + 1; ++p)
            for (int q = 2 * b; q <= 2 * b + 1; ++q)
              for (int r = 2 * c; r <= 2 * c + 1; ++r)
                for (int s = 2 * d; s <= 2 * d + 1; ++s)
                  acc += zweight(a, p, false) * zweight(b, q, true) * zweight(c, r, false) * zweight(d, s, true) *
                         T(p, q, r, s);
          out[static_cast<std::size_t>(((a * n + b) * n + c) * n + d)] = acc;
        }
  return out;
}

std::vector<cplx> complex_components1(const Eigen::VectorXd& w) {
  const int n = static_cast<int>(w.size()) / 2;
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) out[static_cast<std::size_t>(a)] = zweight(a, 2 * a, false) * w[2 * a] + zweight(a, 2 * a + 1, false) * w[2 * a + 1];
  return out;
}

}  // namespace warpgeo
