#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>

#include "warpgeo/curvature.hpp"
#include "warpgeo/hyperdual.hpp"
#include "warpgeo/metric_field.hpp"
#include "warpgeo/sampling.hpp"
#include "warpgeo/tensor.hpp"

namespace warpgeo {

enum class SignClass { Positive, Null, Negative };

std::string to_string(SignClass s);
SignClass sign_class_from_string(const std::string& s);

// Constant rescaling of an almost contact metric structure: D scaled by p,
// the Reeb direction by p*q. Not the warp function p(s).
struct BihomothetyParams {
  double p = 1.0;
  double q = 1.0;
};

// Structure tensors of the base in hyper-dual or plain arithmetic.
// phi is row-major with phi[i*dim+j] = phi^i_j.
template <class S>
struct BaseFields {
  std::vector<S> g;
  std::vector<S> phi;
  std::vector<S> xi;
  std::vector<S> eta;
};

// Boothby-Wang type chart over a complex space form of holomorphic curvature
// c. Coordinates (x_1, y_1, ..., x_m, y_m, z). A bihomothety (P, Q) is kept
// symbolically on top of the chart.
struct SasakianChart {
  int m = 2;
  double c = 0.0;
  double alpha = 1.0;
  double P = 1.0;
  double Q = 1.0;

  int dim() const { return 2 * m + 1; }
  // Squared radius bound of the transverse chart; infinite for c >= 0.
  double radius_limit_sq() const;

  template <class S>
  void fields(std::span<const S> x, BaseFields<S>& out) const;
};

// Kahler metric of constant holomorphic sectional curvature c on a ball chart
// of C^m, coordinates (x_1, y_1, ..., x_m, y_m); out is (2m)^2 row-major.
template <class S>
void transverse_metric(int m, double c, std::span<const S> x, std::vector<S>& out);

class SasakianModel {
 public:
  SasakianModel(SasakianChart chart, SignClass sign, double sampleRadius);

  int n() const { return chart_.m + 1; }
  int dim() const { return chart_.dim(); }
  double alpha0() const { return chart_.alpha * chart_.Q / chart_.P; }
  double d0() const { return chart_.c / (chart_.P * chart_.P); }
  double H0() const { return d0() - 3.0 * alpha0() * alpha0(); }
  SignClass sign_class() const { return sign_; }
  const SasakianChart& chart() const { return chart_; }
  double sample_radius() const { return sampleRadius_; }

  const MetricField& metric() const { return metric_; }
  bool contains(const ChartPoint& x) const { return metric_.contains(x); }
  SampleRegion sample_region() const;

  BaseFields<double> fields_at(const ChartPoint& x) const;
  Eigen::MatrixXd phi(const ChartPoint& x) const;
  Eigen::VectorXd xi(const ChartPoint& x) const;
  Eigen::VectorXd eta(const ChartPoint& x) const;

 private:
  SasakianChart chart_;
  SignClass sign_;
  double sampleRadius_;
  MetricField metric_;
};

// Space form with the requested alpha0 > 0 and phi-sectional curvature H0 of
// dimension 2n-1. sampleRadius <= 0 picks the default ball for sampling.
SasakianModel build_model(SignClass sign, double alpha0, double H0, int n = 3, double sampleRadius = 0.0);

SasakianModel bihomothety(const SasakianModel& model, BihomothetyParams params);

struct StructureResiduals {
  double algebraic = 0.0;      // eta(xi)=1, phi xi=0, phi^2, compatibility
  double xiDerivative = 0.0;   // nabla xi = alpha phi
  double phiDerivative = 0.0;  // (nabla_x phi)y = alpha(eta(y)x - g(x,y)xi)
  double contactForm = 0.0;    // d eta = 2 alpha g(phi ., .), FD tier
  double xiCurvature = 0.0;    // K(x,y)xi = alpha^2(eta(y)x - eta(x)y)
  double spaceForm = 0.0;      // K against the constant phi-sectional curvature form

  double max_ad() const;
  bool pass(double tolAD = 1e-8, double tolFD = 1e-5) const;
};

// alphaCheck overrides the constant used on the right side of the
// nabla xi identity only (fault injection).
StructureResiduals verify_structure(const SasakianModel& model, const ChartPoint& x,
                                    std::optional<double> alphaCheck = std::nullopt);

struct Pi0Tensors {
  Tensor pi1;
  Tensor pi2;
  Tensor pi3;
};

// Basic invariant tensors of an almost contact metric structure (g, phi, eta).
Pi0Tensors contact_invariant_tensors(const Eigen::MatrixXd& g, const Eigen::MatrixXd& phi, const Eigen::VectorXd& eta);
Pi0Tensors pi0_tensors(const SasakianModel& model, const ChartPoint& x);

// ((H+3a^2)/4) pi1 + ((H-a^2)/4)(pi2 - pi3)
Tensor space_form_curvature(const Pi0Tensors& t, double alpha, double H);

// K(x0, phi x0, phi x0, x0) and K(x0, xi, xi, x0) for a unit x0 orthogonal to xi,
// taken from the horizontal part of the first coordinate axis.
double measured_phi_sectional_curvature(const SasakianModel& model, const ChartPoint& x);
double measured_xi_sectional_curvature(const SasakianModel& model, const ChartPoint& x);

}  // namespace warpgeo
