#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <optional>
#include <vector>

#include "warpgeo/curvature.hpp"
#include "warpgeo/qch.hpp"
#include "warpgeo/warped_kahler.hpp"

namespace warpgeo {

// Absolute residual together with the magnitude of the quantities compared.
struct IdentityResidual {
  double residual = 0.0;
  double scale = 0.0;
  double relative() const { return residual / std::max(1.0, scale); }
};

// Scalar curvature field of a metric (AD-exact at each point).
ScalarFieldFn scalar_curvature_field(const MetricField& m);

// nabla rho against the expression in d tau, g, J valid on Bochner-flat
// Kahler metrics. FD tier.
IdentityResidual nabla_rho_check(const HermitianField& f, const ChartPoint& x, double step = kDefaultStep);

// nabla_a R_{b e~ c d~} against (tau_a pi + tau_b pi + tau_c pi)/((n+1)(n+2)),
// complex frame. FD tier.
IdentityResidual nabla_R_check(const HermitianField& f, const ChartPoint& x, double step = kDefaultStep);

struct GeometricConstants {
  double bochnerB = 0.0;  // |rho|^2 - tau^2/(2(n+1)) + Laplacian(tau)/(n+1)
  double b0 = 0.0;        // (2a - b)/2
  double bigK = 0.0;      // 2 b k^2 + (b + b0)^2, or the fallback below
  double bigKFromB = 0.0; // (4B - n^2 b0^2)/(n(n+2))
  double bigKFromBAsPrinted = 0.0;  // (4B + n^2(2n+1) b0^2)/(n(n+2)), off whenever b0 != 0
  double kRelationResidual = 0.0;  // |bigK - bigKFromB|
  bool kFromFallback = false;      // no point had b != 0 or no k was available
  std::optional<double> d0;
  struct {
    double B = 0.0;
    double b0 = 0.0;
    double K = 0.0;
  } spread;
  int points = 0;
};

// At least five points. d0 is copied through when known.
GeometricConstants geometric_constants(const HermitianField& f, const std::vector<ChartPoint>& points,
                                       std::optional<double> d0 = std::nullopt, double step = kDefaultStep);

struct HessianIdentityReport {
  IdentityResidual holomorphicHessian;  // Hess(Z_b, Z_c) = 0
  IdentityResidual hessianRicci;        // (n+2) Hess_{a b~} + 2(n+1) rho^2 - tau rho = (...) g
  IdentityResidual ricciGradient;       // 2 rho(X, T) + X(Laplacian tau), FD Laplacian
  double laplacianFd = 0.0;
  // Warped inputs: Laplacian from the B0 data and from the constants, and
  // the ricci-gradient identity with the analytic Laplacian.
  bool analytic = false;
  double laplacianFromB0 = 0.0;
  double laplacianFromConstants = 0.0;
  double laplacianAgreement = 0.0;  // relative
  IdentityResidual ricciGradientAnalytic;
};

HessianIdentityReport hessian_identities(const HermitianField& f, const ChartPoint& x, double step = kDefaultStep);
HessianIdentityReport hessian_identities(const WarpedKahlerMetric& wm, const ChartPoint& x, const GeometricConstants& consts,
                           double step = kDefaultStep);

// Laplacian of tau for a warped metric from b, k and xi(k), and from (K, b0).
double laplacian_from_b0(int n, double b, double k, double xiK);
double laplacian_from_constants(int n, double b, double bigK, double b0);

struct ScalarDistributionData {
  Eigen::VectorXd xiGrad;  // grad tau / |d tau|
  double normDTau = 0.0;
  Eigen::VectorXd theta;
  Eigen::VectorXd thetaStar;
  double pConn = 0.0;      // g(nabla_xi xi, J xi)
  double pStarConn = 0.0;  // g(nabla_{J xi} J xi, xi)
  double div0xi = 0.0;     // trace of nabla xi over the distribution
  double laplacian = 0.0;
  double scale = 0.0;      // |Hess tau| / |d tau|, normalizes the residuals

  double holomorphicBlock = 0.0;   // nabla_l eta_m
  double hermitianBlock = 0.0;     // nabla_l eta_m~ - nabla_m~ eta_l
  double thetaSum = 0.0;           // theta + theta* on the distribution
  double thetaLog = 0.0;           // theta - d ln|d tau| on the distribution
  double pZero = 0.0;              // |p|
  double pLog = 0.0;               // |p - J xi(ln |d tau|)|
  double pStarLog = 0.0;           // |p* + xi(ln |d tau|)|
  double divergence = 0.0;         // |div0 xi - Laplacian/|d tau||, as stated for Bochner-flat metrics
  double divergenceWithPStar = 0.0;  // |div0 xi - Laplacian/|d tau| - 2 p*|

  int orientation = 1;                        // sign of g(xiGrad, f.xi)
  std::optional<double> pStarAnalytic;        // f.pStar in gradient orientation
  std::optional<double> pStarAnalyticResidual;
};

// Throws PreconditionFailed when |d tau| < 1e-8.
ScalarDistributionData scalar_distribution(const HermitianField& f, const ChartPoint& x, double step = kDefaultStep);

struct FlatQchReport {
  double kappa = 0.0;
  double sigma = 0.0;
  double a = 0.0;
  double b = 0.0;
  double k2 = 0.0;       // skipped (0) when singular
  double aPlusK2 = 0.0;  // skipped (0) when singular
  bool singular = false; // tau - n(n+1) b0 vanishes
  double max() const;
};

// Needs f.k; throws PreconditionFailed when |b| < 1e-8.
FlatQchReport flat_qch_identities(const HermitianField& f, const ChartPoint& x, const GeometricConstants& consts);

struct BianchiReport {
  double da = 0.0;     // da - (1/2) b k eta
  double db = 0.0;     // db - b k eta
  double d2ab = 0.0;   // d(2a - b)
  double dtau = 0.0;   // d tau - (1/2)(n+1)(n+2) db
  double xiK = 0.0;    // xi(k) + (1/2)(k^2 + b + b0)
  double max() const;
};

BianchiReport bianchi_relations(const HermitianField& f, const std::vector<ChartPoint>& points,
                                const GeometricConstants& consts, double step = kDefaultStep);

struct BochnerConstantReport {
  double bochnerMax = 0.0;
  double b0Variation = 0.0;  // max - min of 2a - b
};

BochnerConstantReport bochner_constant_check(const HermitianField& f, const std::vector<ChartPoint>& points);

// Curvature given algebraically at a point, with its structure.
struct AlgebraicCurvature {
  Tensor R;
  Eigen::MatrixXd g;
  Eigen::MatrixXd J;
  Eigen::VectorXd xi;
};

BochnerConstantReport bochner_constant_check(const std::vector<AlgebraicCurvature>& points);

struct XiConsequenceReport {
  double rXi = 0.0;        // R(X,Y) xi in terms of k, p*
  double rhoXi = 0.0;      // rho(X, xi)
  double kappa = 0.0;
  double sigma = 0.0;
  double rhoBlock = 0.0;   // rho on the distribution
  double rhoForm = 0.0;    // two-block form of rho
  double abForm = 0.0;     // |R - (a pi + b Phi)|
  double cComponent = 0.0; // |c|
  double max() const;
};

// Needs f.k and f.pStar; throws PreconditionFailed when |b| < 1e-8.
XiConsequenceReport xi_consequences(const HermitianField& f, const ChartPoint& x, double step = kDefaultStep);

}  // namespace warpgeo
