#include "warpgeo/metric_field.hpp"

#include <cmath>
#include <numbers>

#include "warpgeo/errors.hpp"

namespace warpgeo {

MetricField::MetricField(int dim, HyperDualMetricFn fn, std::function<bool(const ChartPoint&)> domain, ChartBox box,
                         std::string label)
    : dim_(dim), fn_(std::move(fn)), domain_(std::move(domain)), box_(std::move(box)), label_(std::move(label)) {
  if (dim <= 0) throw InvalidArgument("metric dimension must be positive");
  if (static_cast<int>(box_.lo.size()) != dim || static_cast<int>(box_.hi.size()) != dim)
    throw InvalidArgument("chart box dimension mismatch");
}

bool MetricField::contains(const ChartPoint& x) const {
  if (x.dim() != dim_) return false;
  return domain_ ? domain_(x) : true;
}

void MetricField::require_inside(const ChartPoint& x) const {
  if (x.dim() != dim_) throw InvalidArgument("point dimension does not match metric dimension");
  if (!contains(x)) throw DomainError("point outside the chart domain of " + label_);
}

Eigen::MatrixXd MetricField::value(const ChartPoint& x) const {
  require_inside(x);
  std::vector<HyperDual> xs(x.coords.begin(), x.coords.end());
  std::vector<HyperDual> out(static_cast<std::size_t>(dim_ * dim_));
  fn_(xs, out);
  Eigen::MatrixXd g(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) g(i, j) = out[static_cast<std::size_t>(i * dim_ + j)].v;
  return g;
}

MetricJet MetricField::jet(const ChartPoint& x) const {
  require_inside(x);
  const int n = dim_;
  MetricJet J;
  J.dim = n;
  J.g = Eigen::MatrixXd::Zero(n, n);
  J.dg.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  J.ddg.assign(static_cast<std::size_t>(n), std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n)));
  std::vector<HyperDual> xs(static_cast<std::size_t>(n));
  std::vector<HyperDual> out(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      for (int k = 0; k < n; ++k)
        xs[static_cast<std::size_t>(k)] = HyperDual(x[k], k == i ? 1.0 : 0.0, k == j ? 1.0 : 0.0, 0.0);
      fn_(xs, out);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const HyperDual& h = out[static_cast<std::size_t>(a * n + b)];
          if (i == 0 && j == 0) J.g(a, b) = h.v;
          if (j == i) J.dg[static_cast<std::size_t>(i)](a, b) = h.d1;
          J.ddg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)](a, b) = h.d12;
          J.ddg[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)](a, b) = h.d12;
        }
    }
  return J;
}

MetricField euclidean_metric(int dim) {
  auto fn = [dim](std::span<const HyperDual>, std::span<HyperDual> out) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out[static_cast<std::size_t>(i * dim + j)] = i == j ? 1.0 : 0.0;
  };
  return MetricField(dim, fn, nullptr,
                     ChartBox{std::vector<double>(static_cast<std::size_t>(dim), -1.0),
                              std::vector<double>(static_cast<std::size_t>(dim), 1.0)},
                     "euclidean");
}

MetricField polar_plane_metric() {
  auto fn = [](std::span<const HyperDual> x, std::span<HyperDual> out) {
    out[0] = 1.0;
    out[1] = 0.0;
    out[2] = 0.0;
    out[3] = x[0] * x[0];
  };
  auto dom = [](const ChartPoint& p) { return p[0] > 0.0; };
  return MetricField(2, fn, dom, ChartBox{{0.5, -3.0}, {3.0, 3.0}}, "polar plane (r, theta)");
}

MetricField round_sphere_metric() {
  // (theta, phi), g = d theta^2 + sin^2 theta d phi^2
  auto fn = [](std::span<const HyperDual> x, std::span<HyperDual> out) {
    const HyperDual st = lift(x[0], std::sin(x[0].v), std::cos(x[0].v), -std::sin(x[0].v));
    out[0] = 1.0;
    out[1] = 0.0;
    out[2] = 0.0;
    out[3] = st * st;
  };
  auto dom = [](const ChartPoint& p) { return p[0] > 0.05 && p[0] < std::numbers::pi - 0.05; };
  return MetricField(2, fn, dom, ChartBox{{0.3, -3.0}, {2.8, 3.0}}, "unit 2-sphere (theta, phi)");
}

}  // namespace warpgeo
