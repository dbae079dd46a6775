#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "warpgeo/hyperdual.hpp"
#include "warpgeo/tensor.hpp"

namespace warpgeo {

// Metric components evaluated in hyper-dual arithmetic. out is dim*dim,
// row-major, and must be symmetric.
using HyperDualMetricFn = std::function<void(std::span<const HyperDual> x, std::span<HyperDual> out)>;

struct ChartBox {
  std::vector<double> lo;
  std::vector<double> hi;
};

// g with exact first and second partials at a point.
struct MetricJet {
  int dim = 0;
  Eigen::MatrixXd g;
  std::vector<Eigen::MatrixXd> dg;                 // dg[i] = d_i g
  std::vector<std::vector<Eigen::MatrixXd>> ddg;   // ddg[i][j] = d_i d_j g
};

class MetricField {
 public:
  MetricField(int dim, HyperDualMetricFn fn, std::function<bool(const ChartPoint&)> domain, ChartBox box,
              std::string label);

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  const ChartBox& box() const { return box_; }
  bool contains(const ChartPoint& x) const;
  void require_inside(const ChartPoint& x) const;

  Eigen::MatrixXd value(const ChartPoint& x) const;
  // One hyper-dual evaluation per coordinate pair i <= j.
  MetricJet jet(const ChartPoint& x) const;

 private:
  int dim_;
  HyperDualMetricFn fn_;
  std::function<bool(const ChartPoint&)> domain_;
  ChartBox box_;
  std::string label_;
};

// Euclidean and two classical charts used as oracles.
MetricField euclidean_metric(int dim);
MetricField polar_plane_metric();
MetricField round_sphere_metric();

}  // namespace warpgeo
