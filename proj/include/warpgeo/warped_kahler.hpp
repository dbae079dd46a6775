#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <optional>
#include <string>

#include "warpgeo/curvature.hpp"
#include "warpgeo/metric_field.hpp"
#include "warpgeo/sampling.hpp"
#include "warpgeo/sasakian.hpp"
#include "warpgeo/warp.hpp"

namespace warpgeo {

using MatrixFieldFn = std::function<Eigen::MatrixXd(const ChartPoint&)>;
using VectorFieldFn = std::function<Eigen::VectorXd(const ChartPoint&)>;

// Metric with an almost complex structure J (J(i,j) = J^i_j) and a unit
// vector field xi spanning, with J xi, the distinguished 2-plane. k and pStar,
// when present, are the analytic functions of the B0-distribution in the
// orientation of xi.
struct HermitianField {
  MetricField metric;
  int n = 0;
  MatrixFieldFn J;
  VectorFieldFn xi;
  ScalarFieldFn k;
  ScalarFieldFn pStar;
  SampleRegion region;
  std::string label;

  CurvatureData curvature_at(const ChartPoint& x) const;
};

// Flat C^n with the standard structure, xi = first axis.
HermitianField euclidean_hermitian(int n);
// Constant holomorphic sectional curvature c on a ball chart of C^n (the
// transverse metric of the space-form chart); xi along the first axis.
HermitianField complex_space_form(int n, double c);

struct WarpedKahlerMetric {
  SasakianModel base;
  WarpFunction warp;
  // Relative defect injected in the dilatation factor q = p'/alpha0.
  double dilationDefect = 0.0;
  HermitianField field;

  int n() const { return base.n(); }
  int dim() const { return base.dim() + 1; }
  int s_index() const { return base.dim(); }
  double s_of(const ChartPoint& x) const { return x[s_index()]; }

  Eigen::MatrixXd J(const ChartPoint& x) const { return field.J(x); }
  Eigen::VectorXd xi(const ChartPoint& x) const { return field.xi(x); }
  Eigen::VectorXd eta(const ChartPoint& x) const;         // covector, = ds up to the defect scale
  Eigen::VectorXd xi_tilde(const ChartPoint& x) const;    // J xi
  Eigen::VectorXd eta_tilde(const ChartPoint& x) const;   // g(J xi, .)
  Eigen::MatrixXd omega(const ChartPoint& x) const;       // g(JX, Y)
};

// Default s-window of the sampling box.
inline constexpr double kDefaultSWindow = 0.2;

// Warped product over the base with profile p(s); coordinates (base..., s).
// sWindow bounds the sampling box in s.
WarpedKahlerMetric build_metric(const SasakianModel& base, const WarpFunction& warp, double dilationDefect = 0.0,
                                double sWindow = kDefaultSWindow);

double verify_kahler(const WarpedKahlerMetric& wm, const ChartPoint& x, double step = kDefaultStep);
double nabla_j_norm(const HermitianField& f, const ChartPoint& x, double step = kDefaultStep);

// Profile of the pre-Kahler metric G = p(t)^2 g0 + dt^2: values p, dp/dt, d2p/dt2.
struct TProfile {
  std::function<std::array<double, 3>(double t)> eval;
  std::string label;
};

TProfile constant_profile();
TProfile exponential_t_profile(double rate);  // p = exp(rate t)

struct LckReport {
  double nablaJResidual = 0.0;  // |nabla J - prediction|
  double nablaJNorm = 0.0;      // |nabla J|
  double predictedNorm = 0.0;   // |prediction|
  Eigen::VectorXd leeForm;      // components in (base..., t)
  double leeClosedness = 0.0;   // |d(lee)|, finite differences
};

HermitianField lck_field(const SasakianModel& base, const TProfile& p, double tWindow = kDefaultSWindow);
LckReport verify_lck(const SasakianModel& base, const TProfile& p, const ChartPoint& x, double step = kDefaultStep);

struct B0Data {
  double k = 0.0;
  double pStar = 0.0;
  double xiK = 0.0;          // xi(k), construction orientation
  int orientation = 1;       // +1 if the construction xi points along grad tau
  bool degenerate = false;   // d tau vanishes at the point
  double nablaXiResidual = 0.0;  // nabla xi against the B0 form, FD tier
  double pStarRelation = 0.0;    // |p* + (xi(k) + k^2)/k|
};

B0Data b0_data(const WarpedKahlerMetric& wm, const ChartPoint& x, double step = kDefaultStep);

struct XiCurvaturePrediction {
  double kappa = 0.0;
  double sigma = 0.0;
  double rXiResidual = 0.0;
  double rhoXiResidual = 0.0;
  double kappaResidual = 0.0;
  double sigmaResidual = 0.0;
};

XiCurvaturePrediction predicted_xi_curvature(const WarpedKahlerMetric& wm, const ChartPoint& x);

struct QchCoefficientsAnalytic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

QchCoefficientsAnalytic qch_coefficients_warped(const WarpedKahlerMetric& wm, double s);
QchCoefficientsAnalytic qch_coefficients_from_jet(double d0, const WarpJet& j);

struct LeafData {
  double s = 0.0;
  double alphaLeaf = 0.0;
  double HLeaf = 0.0;
  double gaussResidual = 0.0;       // normal part of nabla_x y, exact
  double xiTildeResidual = 0.0;     // D_x xi~ = alpha phi x, FD tier
  double phiResidual = 0.0;         // (D_x phi) y law, FD tier
  double curvatureResidual = 0.0;   // leaf block of R against the invariant-tensor form
};

LeafData leaf_params(const WarpedKahlerMetric& wm, const ChartPoint& x, double step = kDefaultStep);

}  // namespace warpgeo
