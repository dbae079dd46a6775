#include "warpgeo/sasakian.hpp"

#include <cmath>
#include <limits>

#include "warpgeo/errors.hpp"

namespace warpgeo {

std::string to_string(SignClass s) {
  switch (s) {
    case SignClass::Positive:
      return "positive";
    case SignClass::Null:
      return "null";
    case SignClass::Negative:
      return "negative";
  }
  return "?";
}

SignClass sign_class_from_string(const std::string& s) {
  if (s == "positive") return SignClass::Positive;
  if (s == "null") return SignClass::Null;
  if (s == "negative") return SignClass::Negative;
  throw InvalidArgument("unknown sign class '" + s + "' (expected positive, null or negative)");
}

double SasakianChart::radius_limit_sq() const {
  return c < 0.0 ? -4.0 / c : std::numeric_limits<double>::infinity();
}

template <class S>
void transverse_metric(int m, double c, std::span<const S> x, std::vector<S>& out) {
  const int D = 2 * m;
  out.assign(static_cast<std::size_t>(D * D), S(0.0));
  S w2(0.0);
  for (int u = 0; u < D; ++u) w2 += x[static_cast<std::size_t>(u)] * x[static_cast<std::size_t>(u)];
  const S iL = S(1.0) / (S(1.0) + (0.25 * c) * w2);
  const S iL2 = iL * iL;
  const auto at = [D](int i, int j) { return static_cast<std::size_t>(i * D + j); };
  // Real and imaginary parts of d d-bar of (4/c) log(1 + (c/4)|w|^2).
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      const S& xj = x[static_cast<std::size_t>(2 * j)];
      const S& yj = x[static_cast<std::size_t>(2 * j + 1)];
      const S& xk = x[static_cast<std::size_t>(2 * k)];
      const S& yk = x[static_cast<std::size_t>(2 * k + 1)];
      S A = -(0.25 * c) * (xj * xk + yj * yk) * iL2;
      if (j == k) A += iL;
      const S B = -(0.25 * c) * (xj * yk - yj * xk) * iL2;
      out[at(2 * j, 2 * k)] = A;
      out[at(2 * j + 1, 2 * k + 1)] = A;
      out[at(2 * j, 2 * k + 1)] = B;
      out[at(2 * j + 1, 2 * k)] = -B;
    }
}

template void transverse_metric<double>(int, double, std::span<const double>, std::vector<double>&);
template void transverse_metric<HyperDual>(int, double, std::span<const HyperDual>, std::vector<HyperDual>&);

template <class S>
void SasakianChart::fields(std::span<const S> x, BaseFields<S>& out) const {
  const int D = dim();
  const auto at = [D](int i, int j) { return static_cast<std::size_t>(i * D + j); };
  out.g.assign(static_cast<std::size_t>(D * D), S(0.0));
  out.phi.assign(static_cast<std::size_t>(D * D), S(0.0));
  out.xi.assign(static_cast<std::size_t>(D), S(0.0));
  out.eta.assign(static_cast<std::size_t>(D), S(0.0));

  S w2(0.0);
  for (int u = 0; u < 2 * m; ++u) w2 += x[static_cast<std::size_t>(u)] * x[static_cast<std::size_t>(u)];
  const S L = S(1.0) + (0.25 * c) * w2;
  const S iL = S(1.0) / L;

  // Primitive of 2*alpha*omega_T: sigma = -(alpha/2) dF o J_T.
  std::vector<S> etac(static_cast<std::size_t>(D), S(0.0));
  for (int j = 0; j < m; ++j) {
    const S& xj = x[static_cast<std::size_t>(2 * j)];
    const S& yj = x[static_cast<std::size_t>(2 * j + 1)];
    etac[static_cast<std::size_t>(2 * j)] = -alpha * yj * iL;
    etac[static_cast<std::size_t>(2 * j + 1)] = alpha * xj * iL;
  }
  etac[static_cast<std::size_t>(D - 1)] = S(1.0);

  std::vector<S> gT2;
  transverse_metric<S>(m, c, x.first(static_cast<std::size_t>(2 * m)), gT2);
  std::vector<S> gT(static_cast<std::size_t>(D * D), S(0.0));
  for (int i = 0; i < 2 * m; ++i)
    for (int j = 0; j < 2 * m; ++j) gT[at(i, j)] = gT2[static_cast<std::size_t>(i * 2 * m + j)];

  const double P2 = P * P;
  const double Q2 = Q * Q;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      out.g[at(i, j)] = P2 * (gT[at(i, j)] + Q2 * etac[static_cast<std::size_t>(i)] * etac[static_cast<std::size_t>(j)]);
  out.xi[static_cast<std::size_t>(D - 1)] = S(1.0 / (P * Q));
  for (int i = 0; i < D; ++i) out.eta[static_cast<std::size_t>(i)] = (P * Q) * etac[static_cast<std::size_t>(i)];

  // phi = horizontal lift of J_T: phi(d_u) = J_T d_u - sigma(J_T d_u) d_z, phi(d_z) = 0.
  for (int j = 0; j < m; ++j) {
    const int xj = 2 * j;
    const int yj = 2 * j + 1;
    out.phi[at(yj, xj)] = S(1.0);
    out.phi[at(xj, yj)] = S(-1.0);
    out.phi[at(D - 1, xj)] = -etac[static_cast<std::size_t>(yj)];
    out.phi[at(D - 1, yj)] = etac[static_cast<std::size_t>(xj)];
  }
}

template void SasakianChart::fields<double>(std::span<const double>, BaseFields<double>&) const;
template void SasakianChart::fields<HyperDual>(std::span<const HyperDual>, BaseFields<HyperDual>&) const;

namespace {

MetricField make_base_metric(const SasakianChart& chart, SignClass sign) {
  const int D = chart.dim();
  auto fn = [chart](std::span<const HyperDual> x, std::span<HyperDual> out) {
    BaseFields<HyperDual> f;
    chart.fields<HyperDual>(x, f);
    std::copy(f.g.begin(), f.g.end(), out.begin());
  };
  const double lim = chart.radius_limit_sq();
  const int m = chart.m;
  auto dom = [lim, m](const ChartPoint& p) {
    double r2 = 0.0;
    for (int u = 0; u < 2 * m; ++u) r2 += p[u] * p[u];
    return r2 < lim;
  };
  ChartBox box{std::vector<double>(static_cast<std::size_t>(D), -1.0), std::vector<double>(static_cast<std::size_t>(D), 1.0)};
  return MetricField(D, fn, dom, box, "sasakian space form (" + to_string(sign) + ")");
}

Eigen::MatrixXd as_matrix(const std::vector<double>& v, int D) {
  Eigen::MatrixXd M(D, D);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) M(i, j) = v[static_cast<std::size_t>(i * D + j)];
  return M;
}

Eigen::VectorXd as_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

SasakianModel::SasakianModel(SasakianChart chart, SignClass sign, double sampleRadius)
    : chart_(chart), sign_(sign), sampleRadius_(sampleRadius), metric_(make_base_metric(chart, sign)) {}

SampleRegion SasakianModel::sample_region() const {
  const int D = dim();
  const double r = sampleRadius_;
  SampleRegion reg;
  reg.box.lo.assign(static_cast<std::size_t>(D), -r);
  reg.box.hi.assign(static_cast<std::size_t>(D), r);
  reg.box.lo.back() = -0.5;
  reg.box.hi.back() = 0.5;
  const int m = chart_.m;
  reg.accept = [r, m](const ChartPoint& p) {
    double r2 = 0.0;
    for (int u = 0; u < 2 * m; ++u) r2 += p[u] * p[u];
    return r2 < r * r;
  };
  return reg;
}

BaseFields<double> SasakianModel::fields_at(const ChartPoint& x) const {
  metric_.require_inside(x);
  BaseFields<double> f;
  chart_.fields<double>(std::span<const double>(x.coords), f);
  return f;
}

Eigen::MatrixXd SasakianModel::phi(const ChartPoint& x) const { return as_matrix(fields_at(x).phi, dim()); }
Eigen::VectorXd SasakianModel::xi(const ChartPoint& x) const { return as_vector(fields_at(x).xi); }
Eigen::VectorXd SasakianModel::eta(const ChartPoint& x) const { return as_vector(fields_at(x).eta); }

SasakianModel build_model(SignClass sign, double alpha0, double H0, int n, double sampleRadius) {
  if (!(alpha0 > 0.0)) throw InvalidArgument("alpha0 must be positive");
  if (n < 3) throw InvalidArgument("complex dimension n must be at least 3 (base dimension >= 5)");
  double d0 = H0 + 3.0 * alpha0 * alpha0;
  if (std::abs(d0) <= 1e-12 * std::max(1.0, 3.0 * alpha0 * alpha0)) d0 = 0.0;
  const SignClass actual = d0 > 0.0 ? SignClass::Positive : (d0 < 0.0 ? SignClass::Negative : SignClass::Null);
  if (actual != sign)
    throw InvalidArgument("sign mismatch: H0 + 3 alpha0^2 = " + std::to_string(d0) + " is " + to_string(actual) +
                          ", class " + to_string(sign) + " requested");
  SasakianChart chart;
  chart.m = n - 1;
  chart.c = d0;
  chart.alpha = alpha0;
  const double lim = chart.radius_limit_sq();
  if (sampleRadius <= 0.0) {
    sampleRadius = 0.5;
    if (std::isfinite(lim)) sampleRadius = std::min(sampleRadius, 0.9 * std::sqrt(lim));
  } else if (std::isfinite(lim) && sampleRadius * sampleRadius >= lim) {
    throw InvalidArgument("requested domain radius violates the chart bound |u|^2 < -4/c");
  }
  return SasakianModel(chart, sign, sampleRadius);
}

SasakianModel bihomothety(const SasakianModel& model, BihomothetyParams params) {
  if (!(params.p > 0.0) || !(params.q > 0.0)) throw InvalidArgument("bihomothety constants must be positive");
  SasakianChart chart = model.chart();
  chart.P *= params.p;
  chart.Q *= params.q;
  return SasakianModel(chart, model.sign_class(), model.sample_radius());
}

double StructureResiduals::max_ad() const {
  return std::max({algebraic, xiDerivative, phiDerivative, xiCurvature, spaceForm});
}

bool StructureResiduals::pass(double tolAD, double tolFD) const { return max_ad() < tolAD && contactForm < tolFD; }

Pi0Tensors contact_invariant_tensors(const Eigen::MatrixXd& g, const Eigen::MatrixXd& phi, const Eigen::VectorXd& eta) {
  const int D = static_cast<int>(g.rows());
  // gp(i, j) = g(phi e_i, e_j)
  const Eigen::MatrixXd gp = phi.transpose() * g;
  Pi0Tensors t{Tensor::covariant(D, 4, Symmetry::Riemann), Tensor::covariant(D, 4, Symmetry::Riemann),
               Tensor::covariant(D, 4, Symmetry::Riemann)};
  for (int x = 0; x < D; ++x)
    for (int y = 0; y < D; ++y)
      for (int z = 0; z < D; ++z)
        for (int u = 0; u < D; ++u) {
          t.pi1(x, y, z, u) = g(y, z) * g(x, u) - g(x, z) * g(y, u);
          t.pi2(x, y, z, u) = gp(y, z) * gp(x, u) - gp(x, z) * gp(y, u) - 2.0 * gp(x, y) * gp(z, u);
          t.pi3(x, y, z, u) = g(y, z) * eta[x] * eta[u] - g(x, z) * eta[y] * eta[u] + eta[y] * eta[z] * g(x, u) -
                              eta[x] * eta[z] * g(y, u);
        }
  t.pi1.enforce_symmetry();
  t.pi2.enforce_symmetry();
  t.pi3.enforce_symmetry();
  return t;
}

Pi0Tensors pi0_tensors(const SasakianModel& model, const ChartPoint& x) {
  const BaseFields<double> f = model.fields_at(x);
  const int D = model.dim();
  return contact_invariant_tensors(as_matrix(f.g, D), as_matrix(f.phi, D), as_vector(f.eta));
}

Tensor space_form_curvature(const Pi0Tensors& t, double alpha, double H) {
  Tensor K = ((H + 3.0 * alpha * alpha) / 4.0) * t.pi1;
  K += ((H - alpha * alpha) / 4.0) * (t.pi2 - t.pi3);
  return K;
}

StructureResiduals verify_structure(const SasakianModel& model, const ChartPoint& x, std::optional<double> alphaCheck) {
  const int D = model.dim();
  const BaseFields<double> f = model.fields_at(x);
  const Eigen::MatrixXd g = as_matrix(f.g, D);
  const Eigen::MatrixXd phi = as_matrix(f.phi, D);
  const Eigen::VectorXd xi = as_vector(f.xi);
  const Eigen::VectorXd eta = as_vector(f.eta);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(D, D);
  const double alpha = model.alpha0();
  const double alphaXi = alphaCheck.value_or(alpha);

  StructureResiduals r;
  r.algebraic = std::abs(eta.dot(xi) - 1.0);
  r.algebraic = std::max(r.algebraic, (phi * xi).cwiseAbs().maxCoeff());
  r.algebraic = std::max(r.algebraic, (phi * phi + I - xi * eta.transpose()).cwiseAbs().maxCoeff());
  r.algebraic = std::max(r.algebraic, (phi.transpose() * g * phi - g + eta * eta.transpose()).cwiseAbs().maxCoeff());
  r.algebraic = std::max(r.algebraic, (g * xi - eta).cwiseAbs().maxCoeff());

  // Exact partials of phi and xi: one hyper-dual pass per coordinate.
  std::vector<Eigen::MatrixXd> dphi(static_cast<std::size_t>(D));
  std::vector<Eigen::VectorXd> dxi(static_cast<std::size_t>(D));
  for (int i = 0; i < D; ++i) {
    std::vector<HyperDual> xs(static_cast<std::size_t>(D));
    for (int k = 0; k < D; ++k) xs[static_cast<std::size_t>(k)] = HyperDual(x[k], k == i ? 1.0 : 0.0, 0.0, 0.0);
    BaseFields<HyperDual> fh;
    model.chart().fields<HyperDual>(xs, fh);
    dphi[static_cast<std::size_t>(i)].resize(D, D);
    dxi[static_cast<std::size_t>(i)].resize(D);
    for (int a = 0; a < D; ++a) {
      dxi[static_cast<std::size_t>(i)][a] = fh.xi[static_cast<std::size_t>(a)].d1;
      for (int b = 0; b < D; ++b) dphi[static_cast<std::size_t>(i)](a, b) = fh.phi[static_cast<std::size_t>(a * D + b)].d1;
    }
  }

  const CurvatureData c = curvature(model.metric(), x);
  const Tensor& G = c.gamma;
  for (int i = 0; i < D; ++i) {
    for (int k = 0; k < D; ++k) {
      double nx = dxi[static_cast<std::size_t>(i)][k];
      for (int l = 0; l < D; ++l) nx += G(k, i, l) * xi[l];
      r.xiDerivative = std::max(r.xiDerivative, std::abs(nx - alphaXi * phi(k, i)));
      for (int j = 0; j < D; ++j) {
        double np = dphi[static_cast<std::size_t>(i)](k, j);
        for (int l = 0; l < D; ++l) np += G(k, i, l) * phi(l, j) - G(l, i, j) * phi(k, l);
        const double rhs = alpha * (eta[j] * (k == i ? 1.0 : 0.0) - g(i, j) * xi[k]);
        r.phiDerivative = std::max(r.phiDerivative, std::abs(np - rhs));
      }
    }
  }

  // d eta(d_i, d_j) = d_i eta_j - d_j eta_i by finite differences.
  auto etaField = [&model](const ChartPoint& p) { return from_vector(model.eta(p)); };
  std::vector<Eigen::VectorXd> deta(static_cast<std::size_t>(D));
  for (int i = 0; i < D; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(D, i);
    deta[static_cast<std::size_t>(i)] = Eigen::VectorXd::Zero(D);
    for (int j = 0; j < D; ++j) {
      ScalarFieldFn comp = [&etaField, j](const ChartPoint& p) { return etaField(p)(j); };
      deta[static_cast<std::size_t>(i)][j] = fd_directional(model.metric(), comp, x, v);
    }
  }
  const Eigen::MatrixXd gphi = phi.transpose() * g;  // g(phi e_i, e_j)
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      const double d = deta[static_cast<std::size_t>(i)][j] - deta[static_cast<std::size_t>(j)][i];
      r.contactForm = std::max(r.contactForm, std::abs(d - 2.0 * alpha * gphi(i, j)));
    }

  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      for (int u = 0; u < D; ++u) {
        double lhs = 0.0;
        for (int k = 0; k < D; ++k) lhs += xi[k] * c.riemann(i, j, k, u);
        const double rhs = alpha * alpha * (eta[j] * g(i, u) - eta[i] * g(j, u));
        r.xiCurvature = std::max(r.xiCurvature, std::abs(lhs - rhs));
      }

  const Tensor K = space_form_curvature(contact_invariant_tensors(g, phi, eta), alpha, model.H0());
  r.spaceForm = (c.riemann - K).max_abs();
  return r;
}

namespace {

// Unit horizontal vector from the first coordinate axis.
Eigen::VectorXd unit_horizontal(const Eigen::MatrixXd& g, const Eigen::VectorXd& xi, const Eigen::VectorXd& eta) {
  Eigen::VectorXd v = Eigen::VectorXd::Unit(g.rows(), 0);
  v -= eta.dot(v) * xi;
  return v / std::sqrt(v.dot(g * v));
}

double sectional(const Tensor& R, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const int D = R.dim();
  double acc = 0.0;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      for (int k = 0; k < D; ++k)
        for (int l = 0; l < D; ++l) acc += a[i] * b[j] * b[k] * a[l] * R(i, j, k, l);
  return acc;
}

}  // namespace

double measured_phi_sectional_curvature(const SasakianModel& model, const ChartPoint& x) {
  const BaseFields<double> f = model.fields_at(x);
  const int D = model.dim();
  const Eigen::MatrixXd g = as_matrix(f.g, D);
  const Eigen::VectorXd x0 = unit_horizontal(g, as_vector(f.xi), as_vector(f.eta));
  const Eigen::VectorXd px0 = as_matrix(f.phi, D) * x0;
  return sectional(curvature(model.metric(), x).riemann, x0, px0);
}

double measured_xi_sectional_curvature(const SasakianModel& model, const ChartPoint& x) {
  const BaseFields<double> f = model.fields_at(x);
  const int D = model.dim();
  const Eigen::MatrixXd g = as_matrix(f.g, D);
  const Eigen::VectorXd xi = as_vector(f.xi);
  const Eigen::VectorXd x0 = unit_horizontal(g, xi, as_vector(f.eta));
  return sectional(curvature(model.metric(), x).riemann, x0, xi);
}

}  // namespace warpgeo
