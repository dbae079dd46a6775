#include "warpgeo/tensor.hpp"

#include <cmath>
#include <string>

#include "warpgeo/errors.hpp"

namespace warpgeo {

ChartPoint::ChartPoint(std::vector<double> c) : coords(std::move(c)) {
  if (coords.empty()) throw InvalidArgument("chart point needs at least one coordinate");
  for (double x : coords)
    if (!std::isfinite(x)) throw InvalidArgument("chart point has a non-finite coordinate");
}

ChartPoint ChartPoint::shifted(int i, double h) const {
  ChartPoint r = *this;
  r.coords[static_cast<std::size_t>(i)] += h;
  return r;
}

ChartPoint ChartPoint::shifted(const Eigen::VectorXd& v, double h) const {
  ChartPoint r = *this;
  for (int i = 0; i < dim(); ++i) r.coords[static_cast<std::size_t>(i)] += h * v[i];
  return r;
}

namespace {

std::size_t ipow(int base, int e) {
  std::size_t r = 1;
  for (int k = 0; k < e; ++k) r *= static_cast<std::size_t>(base);
  return r;
}

// Multi-index helpers over a flat array of dim^rank entries.
void unflatten(std::size_t flat, int dim, int rank, std::array<int, Tensor::kMaxRank>& out) {
  for (int s = rank - 1; s >= 0; --s) {
    out[static_cast<std::size_t>(s)] = static_cast<int>(flat % static_cast<std::size_t>(dim));
    flat /= static_cast<std::size_t>(dim);
  }
}

std::size_t flatten(const std::array<int, Tensor::kMaxRank>& ix, int dim, int rank) {
  std::size_t f = 0;
  for (int s = 0; s < rank; ++s) f = f * static_cast<std::size_t>(dim) + static_cast<std::size_t>(ix[static_cast<std::size_t>(s)]);
  return f;
}

}  // namespace

Tensor::Tensor(int dim, std::vector<Slot> variance, Symmetry symmetry)
    : dim_(dim), variance_(std::move(variance)), symmetry_(symmetry) {
  if (dim <= 0) throw InvalidArgument("tensor dimension must be positive");
  if (rank() > kMaxRank) throw InvalidArgument("tensor rank above 4 is not supported");
  if (symmetry_ == Symmetry::Riemann && rank() != 4)
    throw InvalidArgument("Riemann symmetry needs rank 4");
  if ((symmetry_ == Symmetry::Symmetric || symmetry_ == Symmetry::Antisymmetric) && rank() != 2)
    throw InvalidArgument("pair symmetry needs rank 2");
  c_.assign(ipow(dim, rank()), 0.0);
}

Tensor Tensor::covariant(int dim, int rank, Symmetry symmetry) {
  return Tensor(dim, std::vector<Slot>(static_cast<std::size_t>(rank), Slot::Co), symmetry);
}

Tensor Tensor::scalar(double v) {
  Tensor t(1, {});
  t.c_[0] = v;
  return t;
}

Tensor Tensor::from_matrix(const Eigen::MatrixXd& m, std::vector<Slot> variance, Symmetry symmetry) {
  Tensor t(static_cast<int>(m.rows()), std::move(variance), symmetry);
  for (int i = 0; i < t.dim_; ++i)
    for (int j = 0; j < t.dim_; ++j) t(i, j) = m(i, j);
  t.enforce_symmetry();
  return t;
}

void Tensor::enforce_symmetry() {
  switch (symmetry_) {
    case Symmetry::None:
      return;
    case Symmetry::Symmetric:
    case Symmetry::Antisymmetric: {
      const double sign = symmetry_ == Symmetry::Symmetric ? 1.0 : -1.0;
      for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j) {
          const double avg = (c_[idx(i, j)] + sign * c_[idx(j, i)]) * 0.5;
          c_[idx(i, j)] = avg;
          c_[idx(j, i)] = sign * avg;
        }
      return;
    }
    case Symmetry::Riemann: {
      std::vector<char> done(c_.size(), 0);
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
          for (int k = 0; k < dim_; ++k)
            for (int l = 0; l < dim_; ++l) {
              if (done[idx(i, j, k, l)]) continue;
              const std::size_t m[8] = {idx(i, j, k, l), idx(j, i, k, l), idx(i, j, l, k), idx(j, i, l, k),
                                        idx(k, l, i, j), idx(l, k, i, j), idx(k, l, j, i), idx(l, k, j, i)};
              const double s[8] = {1, -1, -1, 1, 1, -1, -1, 1};
              // Pairwise tree so that an orbit of equal entries averages to itself exactly.
              const double avg = (((s[0] * c_[m[0]] + s[1] * c_[m[1]]) + (s[2] * c_[m[2]] + s[3] * c_[m[3]])) +
                                  ((s[4] * c_[m[4]] + s[5] * c_[m[5]]) + (s[6] * c_[m[6]] + s[7] * c_[m[7]]))) *
                                 0.125;
              for (int q = 0; q < 8; ++q) {
                c_[m[q]] = s[q] * avg;
                done[m[q]] = 1;
              }
            }
      // Remove the totally antisymmetric part (the first Bianchi defect).
      const std::vector<double> r = c_;
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
          for (int k = 0; k < dim_; ++k)
            for (int l = 0; l < dim_; ++l) {
              const double cyc = r[idx(i, j, k, l)] + r[idx(j, k, i, l)] + r[idx(k, i, j, l)];
              c_[idx(i, j, k, l)] -= cyc / 3.0;
            }
      return;
    }
  }
}

double Tensor::max_abs() const {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

Eigen::MatrixXd Tensor::matrix() const {
  if (rank() != 2) throw InvalidArgument("matrix view needs a rank-2 tensor");
  Eigen::MatrixXd m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

Tensor& Tensor::operator+=(const Tensor& o) {
  if (o.c_.size() != c_.size()) throw InvalidArgument("tensor shape mismatch in +");
  for (std::size_t q = 0; q < c_.size(); ++q) c_[q] += o.c_[q];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  if (o.c_.size() != c_.size()) throw InvalidArgument("tensor shape mismatch in -");
  for (std::size_t q = 0; q < c_.size(); ++q) c_[q] -= o.c_[q];
  return *this;
}

Tensor& Tensor::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
Tensor operator*(double s, Tensor a) { return a *= s; }

Eigen::MatrixXd inverse_metric(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) throw SingularMetric("metric is not positive definite");
  if (hi / lo > 1e12) throw SingularMetric("metric condition number exceeds 1e12");
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw SingularMetric("Cholesky factorization failed");
  return llt.solve(Eigen::MatrixXd::Identity(g.rows(), g.cols()));
}

Tensor contract(const Tensor& t, int slotA, int slotB, const Tensor* g) {
  const int r = t.rank();
  if (slotA < 0 || slotB < 0 || slotA >= r || slotB >= r || slotA == slotB)
    throw InvalidArgument("contraction slot out of range");
  if (slotA > slotB) std::swap(slotA, slotB);
  const int dim = t.dim();
  const Slot va = t.variance()[static_cast<std::size_t>(slotA)];
  const Slot vb = t.variance()[static_cast<std::size_t>(slotB)];

  Eigen::MatrixXd weight = Eigen::MatrixXd::Identity(dim, dim);
  if (va == vb) {
    if (g == nullptr) throw InvalidArgument("contracting two slots of equal variance needs a metric");
    const Eigen::MatrixXd gm = g->matrix();
    weight = va == Slot::Co ? inverse_metric(gm) : gm;
  }

  std::vector<Slot> rest;
  for (int s = 0; s < r; ++s)
    if (s != slotA && s != slotB) rest.push_back(t.variance()[static_cast<std::size_t>(s)]);
  Tensor out(dim, rest);

  std::array<int, Tensor::kMaxRank> ix{};
  std::array<int, Tensor::kMaxRank> ox{};
  for (std::size_t f = 0; f < t.size(); ++f) {
    unflatten(f, dim, r, ix);
    const double w = weight(ix[static_cast<std::size_t>(slotA)], ix[static_cast<std::size_t>(slotB)]);
    if (w == 0.0) continue;
    int o = 0;
    for (int s = 0; s < r; ++s)
      if (s != slotA && s != slotB) ox[static_cast<std::size_t>(o++)] = ix[static_cast<std::size_t>(s)];
    out.data()[flatten(ox, dim, r - 2)] += w * t.data()[f];
  }
  return out;
}

double frobenius_norm_squared(const Tensor& t, const Tensor& g) {
  const int dim = t.dim();
  const Eigen::MatrixXd gm = g.matrix();
  const Eigen::MatrixXd gi = inverse_metric(gm);
  const int r = t.rank();
  // Move every slot to the opposite position, one slot at a time.
  std::vector<double> moved = t.data();
  std::vector<double> tmp(moved.size());
  std::array<int, Tensor::kMaxRank> ix{};
  for (int s = 0; s < r; ++s) {
    const Eigen::MatrixXd& w = t.variance()[static_cast<std::size_t>(s)] == Slot::Co ? gi : gm;
    std::fill(tmp.begin(), tmp.end(), 0.0);
    for (std::size_t f = 0; f < moved.size(); ++f) {
      unflatten(f, dim, r, ix);
      const int a = ix[static_cast<std::size_t>(s)];
      for (int b = 0; b < dim; ++b) {
        ix[static_cast<std::size_t>(s)] = b;
        tmp[flatten(ix, dim, r)] += w(b, a) * moved[f];
      }
    }
    moved.swap(tmp);
  }
  double acc = 0.0;
  for (std::size_t f = 0; f < moved.size(); ++f) acc += moved[f] * t.data()[f];
  return std::max(acc, 0.0);
}

double frobenius_norm(const Tensor& t, const Tensor& g) { return std::sqrt(frobenius_norm_squared(t, g)); }

Eigen::VectorXd to_vector(const Tensor& v) {
  if (v.rank() != 1) throw InvalidArgument("vector view needs a rank-1 tensor");
  return Eigen::Map<const Eigen::VectorXd>(v.data().data(), v.dim());
}

Tensor from_vector(const Eigen::VectorXd& v) {
  Tensor t(static_cast<int>(v.size()), {Slot::Contra});
  for (int i = 0; i < v.size(); ++i) t(i) = v[i];
  return t;
}

}  // namespace warpgeo
