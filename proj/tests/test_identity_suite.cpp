#include <doctest.h>

#include "support.hpp"
#include "swmoment/errors.hpp"
#include "swmoment/identity_suite.hpp"

using namespace swm;

namespace {

std::vector<QuatRep> reps() {
  return {rep_classical(), rep_adjoint(su_basis(2)), rep_adjoint(su_basis(3)), rep_adhm(1, 2), rep_multispinor(2),
          rep_uk(3)};
}

}  // namespace

TEST_CASE("identity checks pass on the built-in reps") {
  for (const auto& rep : reps()) {
    CAPTURE(rep.name());
    const IdentityCheck mg = check_mu_gamma_identity(rep, 500, 1);
    CHECK(mg.pass());
    CHECK(mg.worst_residual <= 1e-10);
    CHECK(check_dirac_moment_compatibility(rep, 200, 2).pass());
    if (has_su2_adjoint_block(rep)) {
      CHECK(check_commutator_norm(rep, 500, 3).pass());
      CHECK(check_dmu_orthogonality(rep, 500, 4).pass());
    }
  }
  CHECK(check_commutator_norm(500, 5).pass());
  CHECK(check_dmu_orthogonality(500, 6).pass());
}

TEST_CASE("su(2) blocks are detected") {
  CHECK(has_su2_adjoint_block(rep_adjoint(su_basis(2))));
  CHECK(has_su2_adjoint_block(rep_adjoint(su_basis(3))));
  CHECK(has_su2_adjoint_block(rep_adhm(1, 2)));
  CHECK_FALSE(has_su2_adjoint_block(rep_classical()));
  CHECK_THROWS_AS(check_dmu_orthogonality(rep_classical(), 10, 1), InvalidArgument);
}

TEST_CASE("checks are reproducible from the seed") {
  const QuatRep rep = rep_adjoint(su_basis(2));
  const IdentityCheck a = check_mu_gamma_identity(rep, 300, 9);
  const IdentityCheck b = check_mu_gamma_identity(rep, 300, 9);
  CHECK(a.worst_residual == b.worst_residual);
  CHECK(a.worst_index == b.worst_index);
  CHECK(a.worst_witness == b.worst_witness);
}

TEST_CASE("commutator norm: |mu(xi)|^2 = 1/2 sum |[xi_p, xi_q]|^2 examples") {
  const QuatRep adj = rep_adjoint(su_basis(2));
  Spinor xi = Spinor::Zero(12);
  xi.segment(4, 4) = Quat::i().coeffs();
  xi.segment(8, 4) = Quat::j().coeffs();
  CHECK(moment(adj, xi).squaredNorm() == doctest::Approx(4.0));
  Spinor ray = Spinor::Zero(12);
  ray.head(4) = Quat::one().coeffs();
  CHECK(moment(adj, ray).squaredNorm() == 0.0);
}

TEST_CASE("a corrupted action breaks the commutator identity") {
  const QuatRep good = rep_adjoint(su_basis(2));
  std::vector<Eigen::MatrixXd> rho = good.rho_all();
  for (auto& r : rho) r *= 1.5;
  QuatRep bad("scaled-adjoint", good.alg(), good.gamma_op(0), good.gamma_op(1), good.gamma_op(2), rho);
  bad.set_adjoint_block({0, 3});
  CHECK_FALSE(check_commutator_norm(bad, 200, 1).pass());
}

TEST_CASE("Dirac compatibility: constraint handling") {
  const QuatRep rep = rep_classical();
  auto rng = stream_rng(31, 0);
  const Spinor phi = random_normal(rng, 4);
  const std::array<Spinor, 3> zero{Spinor::Zero(4), Spinor::Zero(4), Spinor::Zero(4)};
  CHECK(dirac_moment_residual(rep, phi, zero) < 1e-12);
  // psi_i = gamma(e_i) phi gives sum gamma(e_i) psi_i = -3 phi
  std::array<Spinor, 3> off;
  for (int i = 0; i < 3; ++i) off[i] = rep.gamma_op(i) * phi;
  CHECK(dirac_constraint_residual(rep, off) > 1.0);
  CHECK_THROWS_AS(dirac_moment_residual(rep, phi, off), InvalidArgument);
  const auto proj = project_dirac_kernel(rep, off);
  CHECK(dirac_constraint_residual(rep, proj) < 1e-12);
  std::array<Spinor, 3> random{random_normal(rng, 4), random_normal(rng, 4), random_normal(rng, 4)};
  const auto p = project_dirac_kernel(rep, random);
  const auto pp = project_dirac_kernel(rep, p);
  for (int i = 0; i < 3; ++i) CHECK((p[i] - pp[i]).norm() < 1e-12);
  CHECK(dirac_moment_residual(rep, phi, p) < 1e-8);
}
