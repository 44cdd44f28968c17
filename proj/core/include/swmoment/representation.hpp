#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "swmoment/lie_algebra.hpp"
#include "swmoment/quat.hpp"

namespace swm {

/// Element of S as real coefficients.
using Spinor = Eigen::VectorXd;

/// Element of Im H (x) g: rows (i, j, k), columns the orthonormal basis of g.
using MomentValue = Eigen::Matrix<double, 3, Eigen::Dynamic>;

/// Contiguous coordinate range of S carrying a named summand.
struct RepBlock {
  std::string name;
  int offset = 0;
  int size = 0;
};

/// Coordinates offset + 4 b + q hold the coefficient of xi_b (x) e_q, where
/// e_q runs over (1, i, j, k), and the structure algebra acts on them by ad.
struct AdjointBlock {
  int offset = 0;
  int count = 0;
};

struct RepValidation {
  double module_axioms = 0.0;  // I^2 = J^2 = K^2 = -1, IJ = K, orthogonality
  double skew = 0.0;           // rho(xi_b)^T = -rho(xi_b)
  double h_linearity = 0.0;    // [rho(xi_b), I/J/K] = 0
  double homomorphism = 0.0;   // [rho_a, rho_b] = sum_e c_abe rho_e
  double worst() const;
};

/// Quaternionic representation of a compact Lie algebra on a real inner-product
/// space S (identity Gram matrix) with left H-module structure I, J, K.
class QuatRep {
 public:
  QuatRep(std::string name, LieAlg alg, Eigen::MatrixXd I, Eigen::MatrixXd J, Eigen::MatrixXd K,
          std::vector<Eigen::MatrixXd> rho);

  const std::string& name() const { return name_; }
  int dim_S() const { return dim_S_; }
  const LieAlg& alg() const { return alg_; }
  int alg_dim() const { return alg_.dim(); }

  /// I, J, K for a = 0, 1, 2; this is gamma(e_a).
  const Eigen::MatrixXd& gamma_op(int a) const { return gam_[a]; }
  const Eigen::MatrixXd& rho(int b) const { return rho_[b]; }
  const std::vector<Eigen::MatrixXd>& rho_all() const { return rho_; }

  /// Flavor generators act on S but do not enter the moment map.
  const std::vector<Eigen::MatrixXd>& flavor() const { return flavor_; }
  const std::vector<std::string>& flavor_names() const { return flavor_names_; }
  void add_flavor(std::string name, Eigen::MatrixXd gen);

  const std::vector<RepBlock>& blocks() const { return blocks_; }
  void set_blocks(std::vector<RepBlock> blocks) { blocks_ = std::move(blocks); }
  const std::optional<AdjointBlock>& adjoint_block() const { return adjoint_; }
  void set_adjoint_block(AdjointBlock b) { adjoint_ = b; }

  RepValidation validate() const;
  void check_spinor(const Spinor& phi, const char* what) const;
  void check_moment(const MomentValue& m, const char* what) const;

 private:
  std::string name_;
  LieAlg alg_;
  int dim_S_ = 0;
  Eigen::MatrixXd gam_[3];
  std::vector<Eigen::MatrixXd> rho_;
  std::vector<Eigen::MatrixXd> flavor_;
  std::vector<std::string> flavor_names_;
  std::vector<RepBlock> blocks_;
  std::optional<AdjointBlock> adjoint_;
};

Spinor gamma(const QuatRep& rep, const ImQuat& v, const Spinor& phi);

/// mu(phi)_ab = 1/2 <gamma(e_a) rho(xi_b) phi, phi>.
MomentValue moment(const QuatRep& rep, const Spinor& phi);

/// Symmetric bilinear form with moment_polarized(phi, phi) = moment(phi).
MomentValue moment_polarized(const QuatRep& rep, const Spinor& phi, const Spinor& psi);

/// Self-adjoint operator sum_ab zeta_ab gamma(e_a) rho(xi_b) on S.
Eigen::MatrixXd bold_gamma(const QuatRep& rep, const MomentValue& zeta);

/// Gamma_phi zeta = bold_gamma(zeta) phi. Satisfies <Gamma_phi zeta, psi> = 2 <zeta, mu(phi, psi)>.
Spinor gamma_phi(const QuatRep& rep, const Spinor& phi, const MomentValue& zeta);

/// Matrix of zeta -> Gamma_phi zeta; column a * dim(g) + b is gamma(e_a) rho(xi_b) phi.
Eigen::MatrixXd gamma_phi_matrix(const QuatRep& rep, const Spinor& phi);

/// Row-major flattening of a moment value (index a * dim(g) + b) and its inverse.
Eigen::VectorXd flatten(const MomentValue& m);
MomentValue unflatten(const Eigen::VectorXd& v, int alg_dim);

/// Acts on phi by the unit quaternion p through I, J, K; rotates the Im H rows of mu by p.
Spinor apply_quaternion(const QuatRep& rep, const Quat& p, const Spinor& phi);
/// exp(sum_b coeffs_b rho(xi_b)) phi.
Spinor gauge_transform(const QuatRep& rep, const Coeffs& coeffs, const Spinor& phi);

QuatRep rep_trivial();
/// S = H, g = u(1) acting by right multiplication by i.
QuatRep rep_classical();
/// S = H^n, u(1) acting by right multiplication by i on every slot.
QuatRep rep_multispinor(int n);
/// S = H^k = H (x)_C C^k with the u_basis(k) action (rho(X) Psi)_j = sum_l Psi_l X_jl.
QuatRep rep_uk(int k);
/// S = g (x) H, rho(xi) = ad_xi (x) id.
QuatRep rep_adjoint(const LieAlg& alg);
/// S = Hom_C(C^r, H (x)_C C^k) (+) H (x) u(k) with structure algebra u_basis(k).
QuatRep rep_adhm(int r, int k);

/// Built-in representation ids: trivial, classical, su2-adjoint, su3-adjoint, adhm12,
/// multispinor-<n>, uk-<k>.
std::vector<std::string> builtin_rep_ids();
/// Throws InvalidArgument for an unknown id.
QuatRep rep_by_id(const std::string& id);

/// 1/2 [[|z|^2 - |w|^2, 2 z conj(w)], [2 conj(z) w, |w|^2 - |z|^2]] for q = z + j w.
Eigen::Matrix2cd classical_matrix_form(const Quat& q);
/// bold_gamma(moment(q)) on the classical rep, written in the C-basis (1, j) of H.
Eigen::Matrix2cd classical_matrix_via_moment(const QuatRep& classical, const Quat& q);

/// mu of xi = sum_q xi_q (x) e_q via brackets: ([xi_0, xi_1] + [xi_2, xi_3]) (x) i and cyclic.
MomentValue adjoint_mu_explicit(const LieAlg& alg, const Spinor& xi);

/// Rows form an orthonormal family in g-coefficients.
struct Torus {
  Eigen::MatrixXd basis;
};

/// Diagonal torus i E_jj of u(k), expressed in the u_basis(k) coefficients.
Torus diagonal_torus(const LieAlg& alg);
/// Orthogonal projection of every Im H row onto the torus.
MomentValue pi_torus(const QuatRep& rep, const Torus& t, const MomentValue& m);

}  // namespace swm
