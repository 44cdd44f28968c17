#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "swmoment/representation.hpp"

namespace swm {

struct IdentityCheck {
  std::string name;
  std::string rep;
  int samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double worst_residual = 0.0;
  std::int64_t worst_index = -1;
  Eigen::VectorXd worst_witness;

  bool pass() const { return worst_residual <= tolerance; }
};

/// |mu(bold_gamma(mu(phi)) phi, phi) - 1/2 Gamma_phi^T Gamma_phi mu(phi)| over unit phi.
IdentityCheck check_mu_gamma_identity(const QuatRep& rep, int samples, std::uint64_t seed);

/// | |mu(xi)|^2 - 1/2 sum_{p,q} |[xi_p, xi_q]|^2 | over unit xi in the rep's adjoint block.
IdentityCheck check_commutator_norm(const QuatRep& rep, int samples, std::uint64_t seed);
/// Runs the adjoint su(2) and su(3) reps and keeps the worse result.
IdentityCheck check_commutator_norm(int samples, std::uint64_t seed);

/// For zeta = tau_0 (x) v and xi_hat orthogonal to the tangent space of the cone at zeta,
/// the g-components of mu(xi_hat) outside tau_0 and of 2 mu(zeta, xi_hat) outside
/// {tau_1, tau_2}. Basis elements 0, 1, 2 of the adjoint block must span su(2).
IdentityCheck check_dmu_orthogonality(const QuatRep& rep, int samples, std::uint64_t seed);
IdentityCheck check_dmu_orthogonality(int samples, std::uint64_t seed);

/// Residual for Phi(x) = phi + sum_i x_i psi_i with sum_i gamma(e_i) psi_i = 0: the
/// finite-difference curl of x -> mu(Phi(x)) at 0 against -<rho(xi_b) phi, psi_c>.
/// Throws InvalidArgument when the psi triple violates the Dirac constraint.
double dirac_moment_residual(const QuatRep& rep, const Spinor& phi, const std::array<Spinor, 3>& psi);
double dirac_constraint_residual(const QuatRep& rep, const std::array<Spinor, 3>& psi);
/// Orthogonal projection of an arbitrary triple onto the pointwise Dirac kernel.
std::array<Spinor, 3> project_dirac_kernel(const QuatRep& rep, const std::array<Spinor, 3>& psi);
IdentityCheck check_dirac_moment_compatibility(const QuatRep& rep, int samples, std::uint64_t seed);

/// Whether the rep carries an adjoint block whose first three basis elements close into su(2).
bool has_su2_adjoint_block(const QuatRep& rep);

}  // namespace swm
