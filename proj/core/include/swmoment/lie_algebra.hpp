#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace swm {

using Coeffs = Eigen::VectorXd;

/// Compact real Lie algebra in an orthonormal basis.
///
/// Built either from a basis of skew-Hermitian k x k matrices (u(k), su(k) and
/// friends) with the invariant inner product <X, Y> = -scale * tr(XY), or as the
/// zero-dimensional trivial algebra. Structure constants c[a][b][e] satisfy
/// [X_a, X_b] = sum_e c[a][b][e] X_e. Values with magnitude below 1e-13 are
/// snapped to zero so that structurally vanishing brackets are exactly zero.
class LieAlg {
 public:
  LieAlg() = default;
  LieAlg(std::string name, std::vector<Eigen::MatrixXcd> basis, double metric_scale);

  static LieAlg trivial();

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  /// Size k of the defining matrices (0 for the trivial algebra).
  int matrix_size() const { return basis_.empty() ? 0 : static_cast<int>(basis_.front().rows()); }
  double metric_scale() const { return metric_scale_; }

  double structure_constant(int a, int b, int e) const { return c_[(a * dim_ + b) * dim_ + e]; }
  const std::vector<Eigen::MatrixXcd>& matrices() const { return basis_; }
  /// Gram matrix of the basis; identity by construction.
  Eigen::MatrixXd gram() const { return Eigen::MatrixXd::Identity(dim_, dim_); }

  Coeffs bracket(const Coeffs& x, const Coeffs& y) const;
  /// Matrix of ad_x acting on coefficient vectors: (ad_x)(e, b) = sum_a x_a c[a][b][e].
  Eigen::MatrixXd ad(const Coeffs& x) const;

  Eigen::MatrixXcd to_matrix(const Coeffs& x) const;
  Coeffs from_matrix(const Eigen::MatrixXcd& m) const;

  double jacobi_residual(const Coeffs& x, const Coeffs& y, const Coeffs& z) const;
  double ad_invariance_residual(const Coeffs& x, const Coeffs& y, const Coeffs& z) const;
  /// Largest deviation of the stored basis from the claimed orthonormality and bracket closure.
  double closure_residual() const;

 private:
  void check_size(const Coeffs& x) const;

  std::string name_ = "trivial";
  int dim_ = 0;
  double metric_scale_ = 1.0;
  std::vector<Eigen::MatrixXcd> basis_;
  std::vector<double> c_;
};

/// k = 1: u(1) with generator i. k >= 2: su(k) with basis -i lambda_a (generalized
/// Gell-Mann) orthonormal for -1/2 tr; for k = 2 this is tau_a = -i sigma_a with
/// [tau_0, tau_1] = 2 tau_2 and cyclic.
LieAlg su_basis(int k);

/// u(k) orthonormal for -tr: the su(k) generators -i lambda_a / sqrt(2) first, then
/// the central element i Id / sqrt(k). u_basis(1) coincides with su_basis(1).
LieAlg u_basis(int k);

}  // namespace swm
