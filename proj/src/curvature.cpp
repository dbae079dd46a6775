#include "warpgeo/curvature.hpp"

#include <array>
#include <cmath>

#include "warpgeo/errors.hpp"

namespace warpgeo {

namespace {

constexpr std::array<double, 4> kOffsets = {2.0, 1.0, -1.0, -2.0};
constexpr std::array<double, 4> kFirstWeights = {-1.0 / 12.0, 8.0 / 12.0, -8.0 / 12.0, 1.0 / 12.0};

void require_step(double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
}

ChartPoint stencil_point(const MetricField& m, const ChartPoint& x, const Eigen::VectorXd& dir, double off) {
  ChartPoint p = x.shifted(dir, off);
  if (!m.contains(p)) throw DomainError("finite-difference stencil leaves the chart domain of " + m.label());
  return p;
}

Eigen::VectorXd axis(int dim, int i) { return Eigen::VectorXd::Unit(dim, i); }

Tensor gamma_from(const Eigen::MatrixXd& gInv, const std::vector<Eigen::MatrixXd>& dg, std::vector<double>& lowered) {
  const int n = static_cast<int>(gInv.rows());
  lowered.assign(static_cast<std::size_t>(n * n * n), 0.0);
  auto L = [&](int l, int i, int j) -> double& { return lowered[static_cast<std::size_t>((l * n + i) * n + j)]; };
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        L(l, i, j) = 0.5 * (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                            dg[static_cast<std::size_t>(l)](i, j));
  Tensor G(n, {Slot::Contra, Slot::Co, Slot::Co});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += gInv(k, l) * L(l, i, j);
        G(k, i, j) = acc;
        G(k, j, i) = acc;
      }
  return G;
}

void finish(CurvatureData& c) {
  const int n = c.riemann.dim();
  Tensor raw = c.riemann;
  c.riemann.enforce_symmetry();
  c.rawSymmetryDefect = (raw - c.riemann).max_abs();
  c.ricci = Tensor::covariant(n, 2, Symmetry::Symmetric);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) acc += c.gInv(i, l) * c.riemann(i, j, k, l);
      c.ricci(j, k) = acc;
    }
  c.ricci.enforce_symmetry();
  double tau = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) tau += c.gInv(j, k) * c.ricci(j, k);
  c.scalar = tau;
}

}  // namespace

Tensor christoffel(const MetricField& m, const ChartPoint& x) {
  const MetricJet J = m.jet(x);
  std::vector<double> lowered;
  return gamma_from(inverse_metric(J.g), J.dg, lowered);
}

CurvatureData curvature(const MetricField& m, const ChartPoint& x) {
  const MetricJet J = m.jet(x);
  const int n = m.dim();
  CurvatureData c;
  c.point = x;
  c.g = J.g;
  c.gInv = inverse_metric(J.g);
  std::vector<double> lowered;
  c.gamma = gamma_from(c.gInv, J.dg, lowered);

  // dGamma[m][k][i][j] = d_m Gamma^k_ij
  //   = g^{kl} d_m Gamma_{l,ij} - g^{ka} (d_m g_ab) Gamma^b_ij
  std::vector<double> dGamma(static_cast<std::size_t>(n * n * n * n));
  auto DG = [&](int mm, int k, int i, int j) -> double& {
    return dGamma[static_cast<std::size_t>(((mm * n + k) * n + i) * n + j)];
  };
  std::vector<double> dLow(static_cast<std::size_t>(n * n * n));
  for (int mm = 0; mm < n; ++mm) {
    const auto& dd = J.ddg[static_cast<std::size_t>(mm)];
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          dLow[static_cast<std::size_t>((l * n + i) * n + j)] =
              0.5 * (dd[static_cast<std::size_t>(i)](j, l) + dd[static_cast<std::size_t>(j)](i, l) -
                     dd[static_cast<std::size_t>(l)](i, j));
    const Eigen::MatrixXd& dgm = J.dg[static_cast<std::size_t>(mm)];
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l) acc += c.gInv(k, l) * dLow[static_cast<std::size_t>((l * n + i) * n + j)];
          for (int a = 0; a < n; ++a) {
            double t = 0.0;
            for (int b = 0; b < n; ++b) t += dgm(a, b) * c.gamma(b, i, j);
            acc -= c.gInv(k, a) * t;
          }
          DG(mm, k, i, j) = acc;
        }
  }

  // R^l_{kij} = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik
  c.riemann = Tensor::covariant(n, 4, Symmetry::Riemann);
  std::vector<double> up(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double r = DG(i, l, j, k) - DG(j, l, i, k);
          for (int mm = 0; mm < n; ++mm) r += c.gamma(l, i, mm) * c.gamma(mm, j, k) - c.gamma(l, j, mm) * c.gamma(mm, i, k);
          up[static_cast<std::size_t>(l)] = r;
        }
        for (int u = 0; u < n; ++u) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l) acc += c.g(u, l) * up[static_cast<std::size_t>(l)];
          c.riemann(i, j, k, u) = acc;
        }
      }
  finish(c);
  return c;
}

CurvatureData curvature(const MetricField& m, const ChartPoint& x, const Eigen::VectorXd& xi, const Eigen::MatrixXd& J) {
  CurvatureData c = curvature(m, x);
  attach_xi_invariants(c, xi, J);
  return c;
}

void attach_xi_invariants(CurvatureData& c, const Eigen::VectorXd& xi, const Eigen::MatrixXd& J) {
  const int n = c.riemann.dim();
  if (xi.size() != n || J.rows() != n) throw InvalidArgument("xi or J has the wrong dimension");
  if (std::abs(xi.dot(c.g * xi) - 1.0) > 1e-8) throw InvalidArgument("xi is not a unit vector");
  const Eigen::VectorXd jx = J * xi;
  double kappa = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) kappa += xi[i] * jx[j] * jx[k] * xi[l] * c.riemann(i, j, k, l);
  c.kappa = kappa;
  c.sigma = xi.dot(c.ricci.matrix() * xi);
}

CurvatureData fd_oracle(const MetricField& m, const ChartPoint& x, double h) {
  require_step(h);
  m.require_inside(x);
  const int n = m.dim();
  auto gval = [&](const ChartPoint& p) { return m.value(p); };

  std::vector<Eigen::MatrixXd> dg(static_cast<std::size_t>(n));
  std::vector<std::vector<Eigen::MatrixXd>> ddg(static_cast<std::size_t>(n),
                                                std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(n)));
  const Eigen::MatrixXd g0 = gval(x);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd ei = axis(n, i);
    Eigen::MatrixXd d1 = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd d2 = -30.0 * g0;
    for (std::size_t q = 0; q < 4; ++q) {
      const Eigen::MatrixXd gq = gval(stencil_point(m, x, ei, kOffsets[q] * h));
      d1 += kFirstWeights[q] * gq;
      d2 += (std::abs(kOffsets[q]) == 1.0 ? 16.0 : -1.0) * gq;
    }
    dg[static_cast<std::size_t>(i)] = d1 / h;
    ddg[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = d2 / (12.0 * h * h);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
          Eigen::VectorXd dir = kOffsets[a] * axis(n, i) + kOffsets[b] * axis(n, j);
          acc += kFirstWeights[a] * kFirstWeights[b] * gval(stencil_point(m, x, dir, h));
        }
      ddg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc / (h * h);
      ddg[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = acc / (h * h);
    }

  CurvatureData c;
  c.point = x;
  c.g = g0;
  c.gInv = inverse_metric(g0);
  std::vector<double> lowered;
  c.gamma = gamma_from(c.gInv, dg, lowered);
  auto L = [&](int l, int i, int j) { return lowered[static_cast<std::size_t>((l * n + i) * n + j)]; };
  auto D2 = [&](int a, int b, int p, int q) {
    return ddg[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)](p, q);
  };
  // R(a,b,c,d) = 1/2 (g_bd,ac + g_ac,bd - g_bc,ad - g_ad,bc)
  //              - Gamma_{m,ad} Gamma^m_bc + Gamma_{m,bd} Gamma^m_ac
  c.riemann = Tensor::covariant(n, 4, Symmetry::Riemann);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d) {
          double r = 0.5 * (D2(a, cc, b, d) + D2(b, d, a, cc) - D2(a, d, b, cc) - D2(b, cc, a, d));
          for (int mm = 0; mm < n; ++mm) r += -L(mm, a, d) * c.gamma(mm, b, cc) + L(mm, b, d) * c.gamma(mm, a, cc);
          c.riemann(a, b, cc, d) = r;
        }
  finish(c);
  return c;
}

double bianchi_residual(const Tensor& R) {
  const int n = R.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          worst = std::max(worst, std::abs(R(i, j, k, l) + R(j, k, i, l) + R(k, i, j, l)));
  return worst;
}

namespace {

Tensor fd_tensor_along(const MetricField& m, const TensorFieldFn& field, const ChartPoint& x, const Eigen::VectorXd& v,
                       double h) {
  Tensor acc;
  for (std::size_t q = 0; q < 4; ++q) {
    Tensor t = field(stencil_point(m, x, v, kOffsets[q] * h));
    t *= kFirstWeights[q] / h;
    if (q == 0)
      acc = t;
    else
      acc += t;
  }
  return acc;
}

// Adds the connection terms of nabla_v to a partial derivative dT of T.
void add_connection_terms(Tensor& dT, const Tensor& T, const Tensor& gamma, const Eigen::VectorXd& v) {
  const int n = T.dim();
  const int r = T.rank();
  // Gv(a, b) = sum_d v^d Gamma^a_{d b}
  Eigen::MatrixXd Gv = Eigen::MatrixXd::Zero(n, n);
  for (int d = 0; d < n; ++d)
    if (v[d] != 0.0)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) Gv(a, b) += v[d] * gamma(a, d, b);
  std::array<int, Tensor::kMaxRank> ix{};
  for (std::size_t f = 0; f < T.size(); ++f) {
    std::size_t rem = f;
    for (int s = r - 1; s >= 0; --s) {
      ix[static_cast<std::size_t>(s)] = static_cast<int>(rem % static_cast<std::size_t>(n));
      rem /= static_cast<std::size_t>(n);
    }
    double corr = 0.0;
    for (int s = 0; s < r; ++s) {
      const int orig = ix[static_cast<std::size_t>(s)];
      std::size_t stride = 1;
      for (int q = s + 1; q < r; ++q) stride *= static_cast<std::size_t>(n);
      const std::size_t base = f - static_cast<std::size_t>(orig) * stride;
      const bool co = T.variance()[static_cast<std::size_t>(s)] == Slot::Co;
      for (int mm = 0; mm < n; ++mm) {
        const double tv = T.data()[base + static_cast<std::size_t>(mm) * stride];
        corr += co ? -Gv(mm, orig) * tv : Gv(orig, mm) * tv;
      }
    }
    dT.data()[f] += corr;
  }
}

}  // namespace

Tensor covariant_derivative_along(const MetricField& m, const TensorFieldFn& field, const ChartPoint& x,
                                  const Eigen::VectorXd& v, double h) {
  require_step(h);
  m.require_inside(x);
  const Tensor gamma = christoffel(m, x);
  const Tensor T = field(x);
  Tensor dT = fd_tensor_along(m, field, x, v, h);
  add_connection_terms(dT, T, gamma, v);
  return dT;
}

Tensor covariant_derivative_field(const MetricField& m, const TensorFieldFn& field, const ChartPoint& x, double h) {
  require_step(h);
  m.require_inside(x);
  const Tensor gamma = christoffel(m, x);
  const Tensor T = field(x);
  if (T.rank() + 1 > Tensor::kMaxRank) throw InvalidArgument("covariant derivative would exceed rank 4");
  const int n = m.dim();
  std::vector<Slot> var{Slot::Co};
  var.insert(var.end(), T.variance().begin(), T.variance().end());
  Tensor out(n, var);
  for (int d = 0; d < n; ++d) {
    const Eigen::VectorXd v = axis(n, d);
    Tensor dT = fd_tensor_along(m, field, x, v, h);
    add_connection_terms(dT, T, gamma, v);
    std::copy(dT.data().begin(), dT.data().end(), out.data().begin() + static_cast<std::ptrdiff_t>(d * T.size()));
  }
  return out;
}

double fd_directional(const MetricField& m, const ScalarFieldFn& f, const ChartPoint& x, const Eigen::VectorXd& v,
                      double h) {
  require_step(h);
  double acc = 0.0;
  for (std::size_t q = 0; q < 4; ++q) acc += kFirstWeights[q] * f(stencil_point(m, x, v, kOffsets[q] * h));
  return acc / h;
}

Eigen::VectorXd fd_gradient(const MetricField& m, const ScalarFieldFn& f, const ChartPoint& x, double h) {
  const int n = m.dim();
  Eigen::VectorXd g(n);
  for (int i = 0; i < n; ++i) g[i] = fd_directional(m, f, x, axis(n, i), h);
  return g;
}

Eigen::MatrixXd fd_second_partials(const MetricField& m, const ScalarFieldFn& f, const ChartPoint& x, double h) {
  require_step(h);
  const int n = m.dim();
  Eigen::MatrixXd H(n, n);
  const double f0 = f(x);
  for (int i = 0; i < n; ++i) {
    double acc = -30.0 * f0;
    for (std::size_t q = 0; q < 4; ++q)
      acc += (std::abs(kOffsets[q]) == 1.0 ? 16.0 : -1.0) * f(stencil_point(m, x, axis(n, i), kOffsets[q] * h));
    H(i, i) = acc / (12.0 * h * h);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
          const Eigen::VectorXd dir = kOffsets[a] * axis(n, i) + kOffsets[b] * axis(n, j);
          acc += kFirstWeights[a] * kFirstWeights[b] * f(stencil_point(m, x, dir, h));
        }
      H(i, j) = H(j, i) = acc / (h * h);
    }
  return H;
}

Eigen::MatrixXd fd_hessian(const MetricField& m, const ScalarFieldFn& f, const ChartPoint& x, double h) {
  const int n = m.dim();
  const Tensor gamma = christoffel(m, x);
  const Eigen::VectorXd df = fd_gradient(m, f, x, h);
  Eigen::MatrixXd H = fd_second_partials(m, f, x, h);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) H(i, j) -= gamma(k, i, j) * df[k];
  return H;
}

double fd_laplacian(const MetricField& m, const ScalarFieldFn& f, const ChartPoint& x, double h) {
  const Eigen::MatrixXd gi = inverse_metric(m.value(x));
  return (gi.cwiseProduct(fd_hessian(m, f, x, h))).sum();
}

}  // namespace warpgeo
