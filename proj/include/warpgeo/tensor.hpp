#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace warpgeo {

// Chart coordinates of a point. Dimension is coords.size().
struct ChartPoint {
  std::vector<double> coords;

  ChartPoint() = default;
  explicit ChartPoint(std::vector<double> c);
  ChartPoint(std::initializer_list<double> c) : ChartPoint(std::vector<double>(c)) {}

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
  // Copy shifted by h along e_i.
  ChartPoint shifted(int i, double h) const;
  ChartPoint shifted(const Eigen::VectorXd& v, double h) const;
};

enum class Slot : unsigned char { Co, Contra };
enum class Symmetry : unsigned char { None, Symmetric, Antisymmetric, Riemann };

// Dense tensor of rank 0..4 at a point. Index 0 is the slowest varying.
// Mixed (1,1) tensors such as J are stored as T(i,j) = T^i_j.
class Tensor {
 public:
  static constexpr int kMaxRank = 4;

  Tensor() = default;
  Tensor(int dim, std::vector<Slot> variance, Symmetry symmetry = Symmetry::None);

  static Tensor covariant(int dim, int rank, Symmetry symmetry = Symmetry::None);
  static Tensor endomorphism(int dim) { return Tensor(dim, {Slot::Contra, Slot::Co}); }
  static Tensor scalar(double v);
  static Tensor from_matrix(const Eigen::MatrixXd& m, std::vector<Slot> variance,
                            Symmetry symmetry = Symmetry::None);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(variance_.size()); }
  const std::vector<Slot>& variance() const { return variance_; }
  Symmetry symmetry() const { return symmetry_; }
  std::size_t size() const { return c_.size(); }

  double& operator()() { return c_[0]; }
  double& operator()(int i) { return c_[static_cast<std::size_t>(i)]; }
  double& operator()(int i, int j) { return c_[idx(i, j)]; }
  double& operator()(int i, int j, int k) { return c_[idx(i, j, k)]; }
  double& operator()(int i, int j, int k, int l) { return c_[idx(i, j, k, l)]; }
  double operator()() const { return c_[0]; }
  double operator()(int i) const { return c_[static_cast<std::size_t>(i)]; }
  double operator()(int i, int j) const { return c_[idx(i, j)]; }
  double operator()(int i, int j, int k) const { return c_[idx(i, j, k)]; }
  double operator()(int i, int j, int k, int l) const { return c_[idx(i, j, k, l)]; }

  std::vector<double>& data() { return c_; }
  const std::vector<double>& data() const { return c_; }

  // Project onto the declared symmetry class: orbit averages copied with
  // signs, and for Riemann also the first Bianchi identity. Idempotent up to
  // rounding.
  void enforce_symmetry();

  double max_abs() const;
  Eigen::MatrixXd matrix() const;  // rank 2 only

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(double s);

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * dim_ + j); }
  std::size_t idx(int i, int j, int k) const {
    return static_cast<std::size_t>((i * dim_ + j) * dim_ + k);
  }
  std::size_t idx(int i, int j, int k, int l) const {
    return static_cast<std::size_t>(((i * dim_ + j) * dim_ + k) * dim_ + l);
  }

  int dim_ = 0;
  std::vector<Slot> variance_;
  Symmetry symmetry_ = Symmetry::None;
  std::vector<double> c_;
};

Tensor operator+(Tensor a, const Tensor& b);
Tensor operator-(Tensor a, const Tensor& b);
Tensor operator*(double s, Tensor a);

// Inverse of a metric matrix by Cholesky. Throws SingularMetric when g is not
// positive definite or its condition number exceeds 1e12.
Eigen::MatrixXd inverse_metric(const Eigen::MatrixXd& g);

// Trace over two slots. Two covariant (or two contravariant) slots need g,
// which is always passed covariant.
Tensor contract(const Tensor& t, int slotA, int slotB, const Tensor* g = nullptr);

// Full contraction of t with itself, indices moved with g.
double frobenius_norm_squared(const Tensor& t, const Tensor& g);
double frobenius_norm(const Tensor& t, const Tensor& g);

// Contravariant vector <-> Eigen.
Eigen::VectorXd to_vector(const Tensor& v);
Tensor from_vector(const Eigen::VectorXd& v);

}  // namespace warpgeo
