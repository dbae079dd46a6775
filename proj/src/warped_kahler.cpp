#include "warpgeo/warped_kahler.hpp"

#include <algorithm>
#include <cmath>

#include "warpgeo/errors.hpp"

namespace warpgeo {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Tensor endo(const Eigen::MatrixXd& J) { return Tensor::from_matrix(J, {Slot::Contra, Slot::Co}); }

// Standard J on R^{2n}: J d_{x_j} = d_{y_j}.
Eigen::MatrixXd standard_j(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    J(2 * a + 1, 2 * a) = 1.0;
    J(2 * a, 2 * a + 1) = -1.0;
  }
  return J;
}

}  // namespace

CurvatureData HermitianField::curvature_at(const ChartPoint& x) const {
  return curvature(metric, x, xi(x), J(x));
}

HermitianField euclidean_hermitian(int n) {
  if (n < 1) throw InvalidArgument("euclidean_hermitian: n must be >= 1");
  const int D = 2 * n;
  HermitianField f{euclidean_metric(D), n, nullptr, nullptr, nullptr, nullptr, {}, "flat C^n"};
  const Eigen::MatrixXd J = standard_j(n);
  f.J = [J](const ChartPoint&) { return J; };
  f.xi = [D](const ChartPoint&) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(D);
    v[0] = 1.0;
    return v;
  };
  f.region.box = f.metric.box();
  return f;
}

HermitianField complex_space_form(int n, double c) {
  if (n < 1) throw InvalidArgument("complex_space_form: n must be >= 1");
  const int D = 2 * n;
  auto fn = [n, c, D](std::span<const HyperDual> x, std::span<HyperDual> out) {
    std::vector<HyperDual> g;
    transverse_metric<HyperDual>(n, c, x, g);
    for (int i = 0; i < D * D; ++i) out[sz(i)] = g[sz(i)];
  };
  const double lim = c < 0.0 ? -4.0 / c : 1e300;
  auto domain = [lim, D](const ChartPoint& x) {
    double r2 = 0.0;
    for (int i = 0; i < D; ++i) r2 += x[i] * x[i];
    return r2 < lim;
  };
  const double r = std::min(0.5, 0.9 * std::sqrt(lim));
  ChartBox box{std::vector<double>(sz(D), -r), std::vector<double>(sz(D), r)};
  MetricField metric(D, fn, domain, box, "complex space form");
  HermitianField f{metric, n, nullptr, nullptr, nullptr, nullptr, {}, "complex space form"};
  const Eigen::MatrixXd J = standard_j(n);
  f.J = [J](const ChartPoint&) { return J; };
  f.xi = [metric, D](const ChartPoint& x) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(D);
    v[0] = 1.0 / std::sqrt(metric.value(x)(0, 0));
    return v;
  };
  f.region.box = box;
  f.region.accept = [r, D](const ChartPoint& x) {
    double r2 = 0.0;
    for (int i = 0; i < D; ++i) r2 += x[i] * x[i];
    return r2 < r * r;
  };
  return f;
}

Eigen::VectorXd WarpedKahlerMetric::eta(const ChartPoint& x) const {
  return field.metric.value(x) * xi(x);
}

Eigen::VectorXd WarpedKahlerMetric::xi_tilde(const ChartPoint& x) const { return J(x) * xi(x); }

Eigen::VectorXd WarpedKahlerMetric::eta_tilde(const ChartPoint& x) const {
  return field.metric.value(x) * xi_tilde(x);
}

Eigen::MatrixXd WarpedKahlerMetric::omega(const ChartPoint& x) const {
  return J(x).transpose() * field.metric.value(x);
}

WarpedKahlerMetric build_metric(const SasakianModel& base, const WarpFunction& warp, double dilationDefect,
                                double sWindow) {
  const double a0 = base.alpha0();
  if (std::abs(a0 - warp.alpha0()) > 1e-12 * std::max(1.0, a0))
    throw InvalidArgument("build_metric: base/warp alpha0 mismatch");
  if (!(sWindow > 0.0)) throw InvalidArgument("build_metric: sWindow must be positive");
  if (!(1.0 + dilationDefect > 0.0)) throw InvalidArgument("build_metric: dilation defect must exceed -1");

  const int D0 = base.dim();
  const int D = D0 + 1;
  const int n = base.n();
  const double e1 = 1.0 + dilationDefect;
  const SasakianChart chart = base.chart();

  auto fn = [chart, warp, D0, D, e1, a0](std::span<const HyperDual> x, std::span<HyperDual> out) {
    BaseFields<HyperDual> bf;
    chart.fields<HyperDual>(x.first(sz(D0)), bf);
    const HyperDual& s = x[sz(D0)];
    const WarpJet j = warp.at_s(s.v);
    const HyperDual p = lift(s, j.p, j.dp, j.d2p);
    const HyperDual Qh = (e1 / a0) * lift(s, j.dp, j.d2p, j.d3p);
    const HyperDual p2 = p * p;
    const HyperDual w = Qh * Qh - HyperDual(1.0);
    for (int i = 0; i < D; ++i)
      for (int k = 0; k < D; ++k) out[sz(i * D + k)] = HyperDual(0.0);
    for (int i = 0; i < D0; ++i)
      for (int k = 0; k < D0; ++k)
        out[sz(i * D + k)] = p2 * (bf.g[sz(i * D0 + k)] + w * bf.eta[sz(i)] * bf.eta[sz(k)]);
    out[sz(D0 * D + D0)] = HyperDual(e1 * e1);
  };

  const auto [sLo, sHi] = warp.s_domain();
  const double sA = std::max(sLo + 0.01, -sWindow);
  const double sB = std::min(sHi - 0.01, sWindow);
  if (!(sA < sB)) throw InvalidArgument("build_metric: empty s-window");

  const MetricField& bm = base.metric();
  auto domain = [bm, warp, D0](const ChartPoint& x) {
    ChartPoint b(std::vector<double>(x.coords.begin(), x.coords.begin() + D0));
    return bm.contains(b) && warp.contains_s(x[D0]);
  };
  const SampleRegion breg = base.sample_region();
  ChartBox box = breg.box;
  box.lo.push_back(sA);
  box.hi.push_back(sB);
  MetricField metric(D, fn, domain, box, "warped " + to_string(base.sign_class()) + " / " + warp.label());

  WarpedKahlerMetric wm{base, warp, dilationDefect, HermitianField{metric, n, nullptr, nullptr, nullptr, nullptr,
                                                                   {}, metric.label()}};

  // J ignores the defect: it is the structure the unperturbed metric is Kahler for.
  wm.field.J = [base, warp, D0, D, a0](const ChartPoint& x) {
    const ChartPoint b(std::vector<double>(x.coords.begin(), x.coords.begin() + D0));
    const BaseFields<double> bf = base.fields_at(b);
    const WarpJet j = warp.at_s(x[D0]);
    const double pq = j.p * j.dp / a0;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(D, D);
    for (int i = 0; i < D0; ++i) {
      for (int k = 0; k < D0; ++k) J(i, k) = bf.phi[sz(i * D0 + k)];
      J(i, D0) = bf.xi[sz(i)] / pq;
      J(D0, i) = -pq * bf.eta[sz(i)];
    }
    return J;
  };
  wm.field.xi = [D, D0, e1](const ChartPoint&) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(D);
    v[D0] = 1.0 / e1;
    return v;
  };
  wm.field.k = [warp, D0](const ChartPoint& x) {
    const WarpJet j = warp.at_s(x[D0]);
    return 2.0 * j.dp / j.p;
  };
  wm.field.pStar = [warp, D0](const ChartPoint& x) {
    const WarpJet j = warp.at_s(x[D0]);
    return -(j.dp * j.dp + j.p * j.d2p) / (j.p * j.dp);
  };
  wm.field.region.box = box;
  auto bacc = breg.accept;
  wm.field.region.accept = [bacc, D0](const ChartPoint& x) {
    if (!bacc) return true;
    return bacc(ChartPoint(std::vector<double>(x.coords.begin(), x.coords.begin() + D0)));
  };
  return wm;
}

double nabla_j_norm(const HermitianField& f, const ChartPoint& x, double step) {
  const TensorFieldFn Jf = [&f](const ChartPoint& y) { return endo(f.J(y)); };
  const Tensor dJ = covariant_derivative_field(f.metric, Jf, x, step);
  const Tensor g = Tensor::from_matrix(f.metric.value(x), {Slot::Co, Slot::Co}, Symmetry::Symmetric);
  return frobenius_norm(dJ, g);
}

double verify_kahler(const WarpedKahlerMetric& wm, const ChartPoint& x, double step) {
  return nabla_j_norm(wm.field, x, step);
}

TProfile constant_profile() {
  return {[](double) { return std::array<double, 3>{1.0, 0.0, 0.0}; }, "constant"};
}

TProfile exponential_t_profile(double rate) {
  return {[rate](double t) {
            const double e = std::exp(rate * t);
            return std::array<double, 3>{e, rate * e, rate * rate * e};
          },
          "exp(" + std::to_string(rate) + " t)"};
}

HermitianField lck_field(const SasakianModel& base, const TProfile& prof, double tWindow) {
  const int D0 = base.dim();
  const int D = D0 + 1;
  const SasakianChart chart = base.chart();
  auto fn = [chart, prof, D0, D](std::span<const HyperDual> x, std::span<HyperDual> out) {
    BaseFields<HyperDual> bf;
    chart.fields<HyperDual>(x.first(sz(D0)), bf);
    const HyperDual& t = x[sz(D0)];
    const auto pv = prof.eval(t.v);
    const HyperDual p = lift(t, pv[0], pv[1], pv[2]);
    const HyperDual p2 = p * p;
    for (int i = 0; i < D; ++i)
      for (int k = 0; k < D; ++k) out[sz(i * D + k)] = HyperDual(0.0);
    for (int i = 0; i < D0; ++i)
      for (int k = 0; k < D0; ++k) out[sz(i * D + k)] = p2 * bf.g[sz(i * D0 + k)];
    out[sz(D0 * D + D0)] = HyperDual(1.0);
  };
  const MetricField& bm = base.metric();
  auto domain = [bm, D0](const ChartPoint& x) {
    return bm.contains(ChartPoint(std::vector<double>(x.coords.begin(), x.coords.begin() + D0)));
  };
  const SampleRegion breg = base.sample_region();
  ChartBox box = breg.box;
  box.lo.push_back(-tWindow);
  box.hi.push_back(tWindow);
  MetricField metric(D, fn, domain, box, "lck " + prof.label);
  HermitianField f{metric, base.n(), nullptr, nullptr, nullptr, nullptr, {}, metric.label()};
  f.J = [base, prof, D0, D](const ChartPoint& x) {
    const BaseFields<double> bf =
        base.fields_at(ChartPoint(std::vector<double>(x.coords.begin(), x.coords.begin() + D0)));
    const double p = prof.eval(x[D0])[0];
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(D, D);
    for (int i = 0; i < D0; ++i) {
      for (int k = 0; k < D0; ++k) J(i, k) = bf.phi[sz(i * D0 + k)];
      J(i, D0) = bf.xi[sz(i)] / p;
      J(D0, i) = -p * bf.eta[sz(i)];
    }
    return J;
  };
  f.xi = [D, D0](const ChartPoint&) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(D);
    v[D0] = 1.0;
    return v;
  };
  f.region.box = box;
  auto bacc = breg.accept;
  f.region.accept = [bacc, D0](const ChartPoint& x) {
    if (!bacc) return true;
    return bacc(ChartPoint(std::vector<double>(x.coords.begin(), x.coords.begin() + D0)));
  };
  return f;
}

LckReport verify_lck(const SasakianModel& base, const TProfile& prof, const ChartPoint& x, double step) {
  const HermitianField f = lck_field(base, prof, 1.0);
  f.metric.require_inside(x);
  const int D = f.metric.dim();
  const int T = D - 1;
  const TensorFieldFn Jf = [&f](const ChartPoint& y) { return endo(f.J(y)); };
  const Tensor dJ = covariant_derivative_field(f.metric, Jf, x, step);

  const Eigen::MatrixXd G = f.metric.value(x);
  const Eigen::MatrixXd J = f.J(x);
  const Eigen::VectorXd xi = f.xi(x);
  const Eigen::VectorXd xt = J * xi;
  const Eigen::VectorXd etaT = G * xt;
  const Eigen::MatrixXd Om = J.transpose() * G;  // Om(d,j) = G(J d_d, d_j)
  const auto pv = prof.eval(x[T]);
  const double fac = pv[1] / pv[0] - base.alpha0() / pv[0];

  Tensor pred(D, {Slot::Co, Slot::Contra, Slot::Co});
  for (int d = 0; d < D; ++d)
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) {
        double v = G(d, j) * xt[i] + Om(d, j) * xi[i] - etaT[j] * (i == d ? 1.0 : 0.0) - (j == T ? 1.0 : 0.0) * J(i, d);
        pred(d, i, j) = fac * v;
      }
  const Tensor g = Tensor::from_matrix(G, {Slot::Co, Slot::Co}, Symmetry::Symmetric);
  LckReport r;
  r.nablaJResidual = frobenius_norm(dJ - pred, g);
  r.nablaJNorm = frobenius_norm(dJ, g);
  r.predictedNorm = frobenius_norm(pred, g);
  const double a0 = base.alpha0();
  auto lee = [prof, a0, T, D](const ChartPoint& y) {
    const auto q = prof.eval(y[T]);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(D);
    w[T] = a0 / q[0] - q[1] / q[0];
    return w;
  };
  r.leeForm = lee(x);
  // d(lee)_ij = d_i w_j - d_j w_i.
  Eigen::MatrixXd dw(D, D);
  for (int j = 0; j < D; ++j)
    dw.col(j) = fd_gradient(f.metric, [&lee, j](const ChartPoint& y) { return lee(y)[j]; }, x, step);
  const double closed = max_abs(dw - dw.transpose());
  r.leeClosedness = closed;
  return r;
}

B0Data b0_data(const WarpedKahlerMetric& wm, const ChartPoint& x, double step) {
  const MetricField& m = wm.field.metric;
  m.require_inside(x);
  const int D = wm.dim();
  const WarpJet j = wm.warp.at_s(wm.s_of(x));
  B0Data r;
  r.k = 2.0 * j.dp / j.p;
  r.pStar = -(j.dp * j.dp + j.p * j.d2p) / (j.p * j.dp);
  r.xiK = 2.0 * (j.d2p / j.p - j.dp * j.dp / (j.p * j.p));
  r.pStarRelation = std::abs(r.pStar + (r.xiK + r.k * r.k) / r.k);

  const ScalarFieldFn tau = [&m](const ChartPoint& y) { return curvature(m, y).scalar; };
  const Eigen::VectorXd xi = wm.xi(x);
  const double dtau = fd_directional(m, tau, x, xi, step);
  const double tauAbs = std::abs(tau(x));
  r.degenerate = std::abs(dtau) < 1e-7 * std::max(1.0, tauAbs);
  r.orientation = (r.degenerate || dtau > 0.0) ? 1 : -1;

  const TensorFieldFn xif = [&wm](const ChartPoint& y) { return from_vector(wm.xi(y)); };
  const Tensor dxi = covariant_derivative_field(m, xif, x, step);
  const Eigen::VectorXd xt = wm.xi_tilde(x);
  const Eigen::VectorXd et = wm.eta_tilde(x);
  const Eigen::VectorXd e = wm.eta(x);
  const double A = j.dp / j.p;
  const double B = (j.dp * j.dp + j.p * j.d2p) / (j.p * j.dp);
  double res = 0.0;
  for (int d = 0; d < D; ++d)
    for (int i = 0; i < D; ++i) {
      const double pred = A * ((i == d ? 1.0 : 0.0) - et[d] * xt[i] - e[d] * xi[i]) + B * et[d] * xt[i];
      res = std::max(res, std::abs(dxi(d, i) - pred));
    }
  r.nablaXiResidual = res;
  return r;
}

XiCurvaturePrediction predicted_xi_curvature(const WarpedKahlerMetric& wm, const ChartPoint& x) {
  const CurvatureData cd = wm.field.curvature_at(x);
  const int D = wm.dim();
  const int n = wm.n();
  const WarpJet j = wm.warp.at_s(wm.s_of(x));
  const double A = j.d2p / j.p;
  const double C = (j.p * j.d3p - j.dp * j.d2p) / (j.p * j.dp);
  const Eigen::MatrixXd& g = cd.g;
  const Eigen::VectorXd xi = wm.xi(x);
  const Eigen::VectorXd e = g * xi;
  const Eigen::VectorXd et = g * (wm.J(x) * xi);
  const Eigen::MatrixXd Om = wm.J(x).transpose() * g;

  XiCurvaturePrediction r;
  r.kappa = -(C + 4.0 * A);
  r.sigma = -(C + 2.0 * (n + 1) * A);
  double rx = 0.0;
  double rh = 0.0;
  for (int a = 0; a < D; ++a) {
    for (int b = 0; b < D; ++b)
      for (int u = 0; u < D; ++u) {
        double ad = 0.0;
        for (int k = 0; k < D; ++k) ad += xi[k] * cd.riemann(a, b, k, u);
        const double pred = A * (e[a] * g(b, u) - e[b] * g(a, u) - et[a] * Om(b, u) + et[b] * Om(a, u) +
                                 2.0 * Om(a, b) * et[u]) +
                            C * (e[a] * et[b] - e[b] * et[a]) * et[u];
        rx = std::max(rx, std::abs(ad - pred));
      }
    double rho = 0.0;
    for (int k = 0; k < D; ++k) rho += cd.ricci(a, k) * xi[k];
    rh = std::max(rh, std::abs(rho - r.sigma * e[a]));
  }
  r.rXiResidual = rx;
  r.rhoXiResidual = rh;
  r.kappaResidual = std::abs(cd.kappa.value_or(0.0) - r.kappa);
  r.sigmaResidual = std::abs(cd.sigma.value_or(0.0) - r.sigma);
  return r;
}

QchCoefficientsAnalytic qch_coefficients_from_jet(double d0, const WarpJet& j) {
  const double p2 = j.p * j.p;
  const double H = (d0 - 3.0 * j.dp * j.dp) / p2;
  QchCoefficientsAnalytic r;
  r.a = H - j.dp * j.dp / p2;
  r.b = -2.0 * (r.a + 4.0 * j.d2p / j.p);
  r.c = r.a + 5.0 * j.d2p / j.p - j.d3p / j.dp;
  return r;
}

QchCoefficientsAnalytic qch_coefficients_warped(const WarpedKahlerMetric& wm, double s) {
  return qch_coefficients_from_jet(wm.base.d0(), wm.warp.at_s(s));
}

LeafData leaf_params(const WarpedKahlerMetric& wm, const ChartPoint& x, double step) {
  const MetricField& m = wm.field.metric;
  const CurvatureData cd = curvature(m, x);
  const int D = wm.dim();
  const int D0 = wm.s_index();
  const WarpJet j = wm.warp.at_s(wm.s_of(x));
  LeafData r;
  r.s = wm.s_of(x);
  r.alphaLeaf = j.dp / j.p;
  r.HLeaf = (wm.base.d0() - 3.0 * j.dp * j.dp) / (j.p * j.p);

  const Eigen::MatrixXd& g = cd.g;
  const Eigen::VectorXd xi = wm.xi(x);
  const Eigen::VectorXd e = g * xi;
  const Eigen::MatrixXd Jm = wm.J(x);
  const Eigen::VectorXd xt = Jm * xi;
  const Eigen::VectorXd et = g * xt;

  // Second fundamental form of the level set of s.
  double gauss = 0.0;
  for (int a = 0; a < D0; ++a)
    for (int b = 0; b < D0; ++b) {
      double nrm = 0.0;
      for (int k = 0; k < D; ++k) nrm += cd.gamma(k, a, b) * e[k];
      const double pred = -(r.alphaLeaf * g(a, b) + (j.d2p / j.dp) * et[a] * et[b]);
      gauss = std::max(gauss, std::abs(nrm - pred));
    }
  r.gaussResidual = gauss;

  auto Fmat = [&wm](const ChartPoint& y) {
    const Eigen::MatrixXd Jy = wm.J(y);
    const Eigen::VectorXd xy = wm.xi(y);
    const Eigen::MatrixXd gy = wm.field.metric.value(y);
    const Eigen::VectorXd xty = Jy * xy;
    return Eigen::MatrixXd(Jy - xty * (gy * xy).transpose() + xy * (gy * xty).transpose());
  };
  const Eigen::MatrixXd F = Fmat(x);

  const TensorFieldFn xtf = [&wm](const ChartPoint& y) { return from_vector(wm.xi_tilde(y)); };
  const Tensor dxt = covariant_derivative_field(m, xtf, x, step);
  double xr = 0.0;
  for (int d = 0; d < D0; ++d) {
    Eigen::VectorXd v(D);
    for (int i = 0; i < D; ++i) v[i] = dxt(d, i);
    v -= e.dot(v) * xi;
    xr = std::max(xr, max_abs(v - r.alphaLeaf * F.col(d)));
  }
  r.xiTildeResidual = xr;

  const TensorFieldFn Ff = [&Fmat](const ChartPoint& y) { return endo(Fmat(y)); };
  const Tensor dF = covariant_derivative_field(m, Ff, x, step);
  double pr = 0.0;
  for (int d = 0; d < D0; ++d)
    for (int b = 0; b < D0; ++b) {
      Eigen::VectorXd w(D);
      for (int i = 0; i < D; ++i) w[i] = dF(d, i, b);
      w -= e.dot(w) * xi;
      Eigen::VectorXd pred = -g(d, b) * xt;
      pred[d] += et[b];
      pr = std::max(pr, max_abs(w - r.alphaLeaf * pred));
    }
  r.phiResidual = pr;

  const Eigen::MatrixXd gL = g.topLeftCorner(D0, D0);
  const Eigen::MatrixXd FL = F.topLeftCorner(D0, D0);
  const Eigen::VectorXd etL = et.head(D0);
  const Pi0Tensors pt = contact_invariant_tensors(gL, FL, etL);
  const double h = r.HLeaf - r.alphaLeaf * r.alphaLeaf;
  const double c1 = 0.25 * h;
  const double c3 = -0.25 * (h + 4.0 * j.d2p / j.p);
  double cr = 0.0;
  for (int a = 0; a < D0; ++a)
    for (int b = 0; b < D0; ++b)
      for (int c = 0; c < D0; ++c)
        for (int d = 0; d < D0; ++d) {
          const double pred = c1 * (pt.pi1(a, b, c, d) + pt.pi2(a, b, c, d)) + c3 * pt.pi3(a, b, c, d);
          cr = std::max(cr, std::abs(cd.riemann(a, b, c, d) - pred));
        }
  r.curvatureResidual = cr;
  return r;
}

}  // namespace warpgeo
