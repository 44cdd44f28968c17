#include "swmoment/lie_algebra.hpp"

#include <cmath>
#include <utility>

#include "swmoment/errors.hpp"

namespace swm {

namespace {

constexpr double kSnap = 1e-13;

double inner(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y, double scale) {
  return -scale * (x * y).trace().real();
}

// Generalized Gell-Mann matrices in the standard order (lambda_1 .. lambda_{k^2-1}): for each
// l the off-diagonal pairs (a, l), a < l, then the l-th traceless diagonal. Each satisfies
// tr(lambda_a lambda_b) = 2 delta_ab, and the first three span the su(2) of the top-left block.
std::vector<Eigen::MatrixXcd> gell_mann(int k) {
  using C = std::complex<double>;
  std::vector<Eigen::MatrixXcd> out;
  for (int l = 1; l < k; ++l) {
    for (int a = 0; a < l; ++a) {
      Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(k, k);
      s(a, l) = 1.0;
      s(l, a) = 1.0;
      out.push_back(s);
      Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(k, k);
      t(a, l) = C(0, -1);
      t(l, a) = C(0, 1);
      out.push_back(t);
    }
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(k, k);
    for (int a = 0; a < l; ++a) d(a, a) = 1.0;
    d(l, l) = -static_cast<double>(l);
    d *= std::sqrt(2.0 / (l * (l + 1.0)));
    out.push_back(d);
  }
  return out;
}

}  // namespace

LieAlg::LieAlg(std::string name, std::vector<Eigen::MatrixXcd> basis, double metric_scale)
    : name_{std::move(name)},
      dim_{static_cast<int>(basis.size())},
      metric_scale_{metric_scale},
      basis_{std::move(basis)} {
  if (metric_scale_ <= 0.0) throw InvalidArgument("LieAlg: metric scale must be positive");
  for (const auto& m : basis_) {
    if (m.rows() != m.cols() || m.rows() != basis_.front().rows())
      throw DimensionMismatch("LieAlg: basis matrices must be square and of equal size");
  }
  c_.assign(static_cast<std::size_t>(dim_) * dim_ * dim_, 0.0);
  for (int a = 0; a < dim_; ++a) {
    for (int b = 0; b < dim_; ++b) {
      const Eigen::MatrixXcd comm = basis_[a] * basis_[b] - basis_[b] * basis_[a];
      for (int e = 0; e < dim_; ++e) {
        double v = inner(comm, basis_[e], metric_scale_);
        if (std::abs(v) < kSnap) v = 0.0;
        c_[(a * dim_ + b) * dim_ + e] = v;
      }
    }
  }
}

LieAlg LieAlg::trivial() { return LieAlg{}; }

void LieAlg::check_size(const Coeffs& x) const {
  if (x.size() != dim_)
    throw DimensionMismatch("LieAlg " + name_ + ": expected " + std::to_string(dim_) +
                            " coefficients, got " + std::to_string(x.size()));
}

Coeffs LieAlg::bracket(const Coeffs& x, const Coeffs& y) const {
  check_size(x);
  check_size(y);
  Coeffs out = Coeffs::Zero(dim_);
  for (int a = 0; a < dim_; ++a) {
    if (x[a] == 0.0) continue;
    for (int b = 0; b < dim_; ++b) {
      const double xy = x[a] * y[b];
      if (xy == 0.0) continue;
      const double* row = &c_[(a * dim_ + b) * dim_];
      for (int e = 0; e < dim_; ++e) out[e] += xy * row[e];
    }
  }
  return out;
}

Eigen::MatrixXd LieAlg::ad(const Coeffs& x) const {
  check_size(x);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (int e = 0; e < dim_; ++e) m(e, b) += x[a] * structure_constant(a, b, e);
  return m;
}

Eigen::MatrixXcd LieAlg::to_matrix(const Coeffs& x) const {
  check_size(x);
  const int k = matrix_size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(k, k);
  for (int a = 0; a < dim_; ++a) m += x[a] * basis_[a];
  return m;
}

Coeffs LieAlg::from_matrix(const Eigen::MatrixXcd& m) const {
  if (dim_ > 0 && (m.rows() != matrix_size() || m.cols() != matrix_size()))
    throw DimensionMismatch("LieAlg::from_matrix: wrong matrix size");
  Coeffs out(dim_);
  for (int e = 0; e < dim_; ++e) out[e] = inner(m, basis_[e], metric_scale_);
  return out;
}

double LieAlg::jacobi_residual(const Coeffs& x, const Coeffs& y, const Coeffs& z) const {
  const Coeffs s = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
  return dim_ == 0 ? 0.0 : s.cwiseAbs().maxCoeff();
}

double LieAlg::ad_invariance_residual(const Coeffs& x, const Coeffs& y, const Coeffs& z) const {
  return std::abs(bracket(x, y).dot(z) + y.dot(bracket(x, z)));
}

double LieAlg::closure_residual() const {
  double worst = 0.0;
  for (int a = 0; a < dim_; ++a) {
    for (int b = 0; b < dim_; ++b) {
      worst = std::max(worst, std::abs(inner(basis_[a], basis_[b], metric_scale_) - (a == b ? 1.0 : 0.0)));
      Eigen::MatrixXcd comm = basis_[a] * basis_[b] - basis_[b] * basis_[a];
      for (int e = 0; e < dim_; ++e) comm -= structure_constant(a, b, e) * basis_[e];
      worst = std::max(worst, comm.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

LieAlg su_basis(int k) {
  if (k < 1) throw InvalidArgument("su_basis: k must be >= 1, got " + std::to_string(k));
  if (k == 1) {
    Eigen::MatrixXcd g(1, 1);
    g(0, 0) = std::complex<double>(0, 1);
    return LieAlg{"u(1)", {g}, 1.0};
  }
  std::vector<Eigen::MatrixXcd> basis;
  for (auto& l : gell_mann(k)) basis.push_back(std::complex<double>(0, -1) * l);
  return LieAlg{"su(" + std::to_string(k) + ")", std::move(basis), 0.5};
}

LieAlg u_basis(int k) {
  if (k < 1) throw InvalidArgument("u_basis: k must be >= 1, got " + std::to_string(k));
  std::vector<Eigen::MatrixXcd> basis;
  const std::complex<double> s(0, -1.0 / std::sqrt(2.0));
  for (auto& l : gell_mann(k)) basis.push_back(s * l);
  basis.push_back(Eigen::MatrixXcd::Identity(k, k) * std::complex<double>(0, 1.0 / std::sqrt(k)));
  return LieAlg{"u(" + std::to_string(k) + ")", std::move(basis), 1.0};
}

}  // namespace swm
