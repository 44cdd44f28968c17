#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "swmoment/representation.hpp"

namespace swm {

/// Uniform cubic grid of spacing h covering the closed ball B_R(center) plus two
/// margin layers: (2 half + 1)^3 nodes with half = ceil(R / h) + 2.
class Domain {
 public:
  Domain(const Eigen::Vector3d& center, double radius, double spacing);

  const Eigen::Vector3d& center() const { return center_; }
  double radius() const { return radius_; }
  double spacing() const { return h_; }
  int half() const { return half_; }
  int nodes_per_axis() const { return 2 * half_ + 1; }
  std::size_t size() const;

  std::size_t index(int i, int j, int k) const;
  std::array<int, 3> ijk(std::size_t idx) const;
  Eigen::Vector3d position(int i, int j, int k) const;
  Eigen::Vector3d position(std::size_t idx) const;
  bool contains(const Eigen::Vector3d& p) const;

 private:
  Eigen::Vector3d center_;
  double radius_;
  double h_;
  int half_;
};

/// Real-valued samples on a domain.
struct ScalarField {
  std::shared_ptr<const Domain> domain;
  Eigen::VectorXd values;

  static ScalarField sample(std::shared_ptr<const Domain> d, const std::function<double(const Eigen::Vector3d&)>& f);
  /// Trilinear interpolation; zero outside the grid.
  double at(const Eigen::Vector3d& p) const;
};

/// Spinor and connection samples (A, Phi, eps) on a domain. Connection coefficients
/// are stored per node as a 3 x dim(g) block: row i holds A_i in the g basis.
class LatticeField {
 public:
  using SpinorFn = std::function<Spinor(const Eigen::Vector3d&)>;
  using ConnectionFn = std::function<MomentValue(const Eigen::Vector3d&)>;

  LatticeField(std::shared_ptr<const Domain> domain, std::shared_ptr<const QuatRep> rep, double eps);

  static LatticeField sample(std::shared_ptr<const Domain> domain, std::shared_ptr<const QuatRep> rep, double eps,
                             const SpinorFn& phi, const ConnectionFn& conn = nullptr);

  const Domain& domain() const { return *domain_; }
  std::shared_ptr<const Domain> domain_ptr() const { return domain_; }
  const QuatRep& rep() const { return *rep_; }
  std::shared_ptr<const QuatRep> rep_ptr() const { return rep_; }
  double eps() const { return eps_; }
  void set_eps(double eps);

  Eigen::MatrixXd& phi_data() { return phi_; }
  const Eigen::MatrixXd& phi_data() const { return phi_; }
  Eigen::MatrixXd& connection_data() { return conn_; }
  const Eigen::MatrixXd& connection_data() const { return conn_; }

  Spinor phi(std::size_t node) const { return phi_.col(static_cast<Eigen::Index>(node)); }
  MomentValue connection(std::size_t node) const;
  bool has_connection() const { return !conn_.isZero(0.0); }

  /// Covariant derivative (d_i + rho(A_i)) Phi at a node, central differences in the
  /// interior and one-sided on the outer layer.
  Spinor covariant_derivative(std::size_t node, int axis) const;

  Spinor phi_at(const Eigen::Vector3d& p) const;
  /// Trilinear interpolation of the nodal covariant derivatives.
  std::array<Spinor, 3> covariant_gradient_at(const Eigen::Vector3d& p) const;

  /// Caches nodal covariant derivatives for repeated interpolation.
  void precompute_gradients();

 private:
  std::shared_ptr<const Domain> domain_;
  std::shared_ptr<const QuatRep> rep_;
  double eps_;
  Eigen::MatrixXd phi_;
  Eigen::MatrixXd conn_;
  std::array<Eigen::MatrixXd, 3> grad_;
};

/// Trilinear stencil of a point: eight node indices and weights (zero weight off-grid).
struct Stencil {
  std::array<std::size_t, 8> nodes{};
  std::array<double, 8> weights{};
  bool inside = false;
};
Stencil trilinear_stencil(const Domain& d, const Eigen::Vector3d& p);

/// Integral of f over B_s(y) (intersected with B_r(x) when clip_radius > 0) using nodal
/// weights h^3 clamp((s - |node - y|) / h + 1/2, 0, 1); nondecreasing in s for f >= 0.
double ball_integral(const ScalarField& f, const Eigen::Vector3d& y, double s,
                     const Eigen::Vector3d& clip_center = Eigen::Vector3d::Zero(), double clip_radius = 0.0);

}  // namespace swm
