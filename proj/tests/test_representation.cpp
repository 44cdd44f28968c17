#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "support.hpp"
#include "swmoment/errors.hpp"
#include "swmoment/representation.hpp"

using namespace swm;

namespace {

std::vector<QuatRep> builtin_reps() {
  return {rep_trivial(),  rep_classical(),          rep_multispinor(2),       rep_uk(2), rep_uk(3),
          rep_adhm(1, 2), rep_adjoint(su_basis(2)), rep_adjoint(su_basis(3)), rep_adhm(2, 2)};
}

Spinor xi_su2(const std::vector<std::pair<int, Quat>>& terms) {
  Spinor s = Spinor::Zero(12);
  for (const auto& [b, q] : terms) s.segment(4 * b, 4) += q.coeffs();
  return s;
}

}  // namespace

TEST_CASE("built-in representations satisfy the quaternionic axioms") {
  for (const auto& rep : builtin_reps()) {
    CAPTURE(rep.name());
    CHECK(rep.validate().worst() < 1e-12);
  }
}

TEST_CASE("registry ids") {
  CHECK(rep_by_id("su2-adjoint").dim_S() == 12);
  CHECK(rep_by_id("su3-adjoint").dim_S() == 32);
  CHECK(rep_by_id("adhm12").dim_S() == 24);
  CHECK(rep_by_id("multispinor-3").dim_S() == 12);
  CHECK(rep_by_id("uk-3").alg_dim() == 9);
  CHECK_THROWS_AS(rep_by_id("su4-adjoint"), InvalidArgument);
  CHECK_THROWS_AS(rep_by_id("multispinor-"), InvalidArgument);
  CHECK_THROWS_AS(rep_by_id("multispinor-0"), InvalidArgument);
}

TEST_CASE("corrupted representations fail validation") {
  const QuatRep good = rep_adjoint(su_basis(2));
  std::vector<Eigen::MatrixXd> rho = good.rho_all();
  rho[0] *= 2.0;
  const QuatRep scaled("scaled", good.alg(), good.gamma_op(0), good.gamma_op(1), good.gamma_op(2), rho);
  CHECK(scaled.validate().homomorphism > 1e-3);

  const QuatRep flipped("flipped", good.alg(), good.gamma_op(0), good.gamma_op(1), -good.gamma_op(2), good.rho_all());
  CHECK(flipped.validate().module_axioms > 1e-3);

  std::vector<Eigen::MatrixXd> sym = good.rho_all();
  sym[1] = sym[1] + sym[1].transpose().eval() + Eigen::MatrixXd::Identity(12, 12);
  const QuatRep nonskew("nonskew", good.alg(), good.gamma_op(0), good.gamma_op(1), good.gamma_op(2), sym);
  CHECK(nonskew.validate().skew > 1e-3);

  CHECK_THROWS_AS(QuatRep("odd", good.alg(), Eigen::MatrixXd::Zero(6, 6), Eigen::MatrixXd::Zero(6, 6),
                          Eigen::MatrixXd::Zero(6, 6), {}),
                  InvalidArgument);
}

TEST_CASE("gamma: left multiplication on the classical rep") {
  const QuatRep rep = rep_classical();
  const Spinor one = Quat::one().coeffs();
  CHECK((gamma(rep, ImQuat::unit(0), one) - Quat::i().coeffs()).norm() == 0.0);
  CHECK((gamma(rep, ImQuat::unit(0), gamma(rep, ImQuat::unit(0), one)) + one).norm() < 1e-15);
  auto rng = stream_rng(21, 0);
  for (const auto& r : builtin_reps()) {
    for (int n = 0; n < 50; ++n) {
      const Eigen::Vector3d v = random_normal(rng, 3);
      const Spinor phi = random_normal(rng, r.dim_S());
      CHECK(gamma(r, ImQuat{v[0], v[1], v[2]}, phi).norm() == doctest::Approx(v.norm() * phi.norm()));
    }
  }
}

TEST_CASE("moment map examples") {
  const QuatRep cls = rep_classical();
  const MomentValue m1 = moment(cls, Quat::one().coeffs());
  MomentValue expect = MomentValue::Zero(3, 1);
  expect(0, 0) = -0.5;
  CHECK((m1 - expect).norm() < 1e-15);
  CHECK(moment(cls, Spinor::Zero(4)).norm() == 0.0);

  const QuatRep adj = rep_adjoint(su_basis(2));
  const Spinor xi = xi_su2({{1, Quat::i()}, {2, Quat::j()}});
  MomentValue e2 = MomentValue::Zero(3, 3);
  e2(2, 0) = 2.0;
  CHECK((moment(adj, xi) - e2).norm() < 1e-14);
  CHECK((adjoint_mu_explicit(su_basis(2), xi) - e2).norm() < 1e-14);
  CHECK(moment(adj, xi_su2({{0, Quat{0.3, 1.0, -2.0, 0.5}}})).norm() < 1e-15);
}

TEST_CASE("classical moment: mu(q) = -(i/2) (x) q i conj(q)") {
  const QuatRep cls = rep_classical();
  auto rng = stream_rng(22, 0);
  for (int n = 0; n < 200; ++n) {
    const Quat q = test::random_quat(rng);
    const Quat w = q * Quat::i() * q.conj();
    const MomentValue m = moment(cls, q.coeffs());
    CHECK(std::abs(m(0, 0) + 0.5 * w.x) < 1e-12);
    CHECK(std::abs(m(1, 0) + 0.5 * w.y) < 1e-12);
    CHECK(std::abs(m(2, 0) + 0.5 * w.z) < 1e-12);
  }
}

TEST_CASE("polarization and Gamma adjoint contract") {
  auto rng = stream_rng(23, 0);
  for (const auto& rep : builtin_reps()) {
    if (rep.alg_dim() == 0) continue;
    CAPTURE(rep.name());
    for (int n = 0; n < 50; ++n) {
      const Spinor phi = random_normal(rng, rep.dim_S());
      const Spinor psi = random_normal(rng, rep.dim_S());
      const MomentValue zeta = unflatten(random_normal(rng, 3 * rep.alg_dim()), rep.alg_dim());
      CHECK((moment_polarized(rep, phi, phi) - moment(rep, phi)).norm() < 1e-12);
      CHECK((moment_polarized(rep, phi, -phi) + moment(rep, phi)).norm() < 1e-12);
      const double h = 1e-4;
      const MomentValue fd = (moment(rep, phi + h * psi) - moment(rep, phi - h * psi)) / (4 * h);
      CHECK((fd - moment_polarized(rep, phi, psi)).norm() < 1e-8);
      const double lhs = gamma_phi(rep, phi, zeta).dot(psi);
      const double rhs = 2 * (zeta.array() * moment_polarized(rep, phi, psi).array()).sum();
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      const MomentValue mu = moment(rep, phi);
      CHECK(gamma_phi(rep, phi, mu).dot(phi) == doctest::Approx(2 * mu.squaredNorm()).epsilon(1e-10));
      CHECK((gamma_phi_matrix(rep, phi) * flatten(zeta) - gamma_phi(rep, phi, zeta)).norm() < 1e-12);
      const Eigen::MatrixXd g = bold_gamma(rep, zeta);
      CHECK((g - g.transpose()).norm() < 1e-12);
    }
  }
  const QuatRep cls = rep_classical();
  MomentValue ii = MomentValue::Zero(3, 1);
  ii(0, 0) = 1.0;
  CHECK((gamma_phi(cls, Quat::one().coeffs(), ii) + Quat::one().coeffs()).norm() < 1e-15);
  CHECK(gamma_phi(cls, Spinor::Zero(4), ii).norm() == 0.0);
}

TEST_CASE("moment is equivariant under gauge transformations") {
  auto rng = stream_rng(24, 0);
  for (const auto& rep : builtin_reps()) {
    if (rep.alg_dim() == 0) continue;
    CAPTURE(rep.name());
    const LieAlg& g = rep.alg();
    for (int n = 0; n < 20; ++n) {
      const Spinor phi = random_normal(rng, rep.dim_S());
      const Coeffs x = 0.7 * random_normal(rng, g.dim());
      const Eigen::MatrixXd ad_inv = (-g.ad(x)).exp();
      const MomentValue transported = moment(rep, phi) * ad_inv;
      CHECK((moment(rep, gauge_transform(rep, x, phi)) - transported).norm() < 1e-10);
      CHECK(gauge_transform(rep, x, phi).norm() == doctest::Approx(phi.norm()));
    }
  }
}

TEST_CASE("moment rotates with the Im H action of unit quaternions") {
  auto rng = stream_rng(25, 0);
  for (const auto& rep : builtin_reps()) {
    if (rep.alg_dim() == 0) continue;
    CAPTURE(rep.name());
    for (int n = 0; n < 20; ++n) {
      Quat p = test::random_quat(rng);
      p = p * (1.0 / p.norm());
      const Spinor phi = random_normal(rng, rep.dim_S());
      const MomentValue rotated = test::rotation_of(p) * moment(rep, phi);
      CHECK((moment(rep, apply_quaternion(rep, p, phi)) - rotated).norm() < 1e-12);
    }
  }
}

TEST_CASE("ADHM moment splits over the hom and adjoint blocks") {
  const QuatRep adhm = rep_adhm(1, 2);
  REQUIRE(adhm.dim_S() == 24);
  REQUIRE(adhm.adjoint_block());
  CHECK(adhm.adjoint_block()->offset == 8);
  auto rng = stream_rng(26, 0);
  for (int n = 0; n < 100; ++n) {
    Spinor psi = Spinor::Zero(24);
    Spinor xi = Spinor::Zero(24);
    psi.head(8) = random_normal(rng, 8);
    xi.tail(16) = random_normal(rng, 16);
    CHECK((moment(adhm, psi + xi) - moment(adhm, psi) - moment(adhm, xi)).norm() < 1e-12);
  }
}

TEST_CASE("adjoint_mu_explicit matches the moment map") {
  auto rng = stream_rng(27, 0);
  for (int k : {2, 3}) {
    const LieAlg g = su_basis(k);
    const QuatRep adj = rep_adjoint(g);
    for (int n = 0; n < 1000; ++n) {
      const Spinor xi = random_normal(rng, adj.dim_S());
      CHECK((adjoint_mu_explicit(g, xi) - moment(adj, xi)).norm() < 1e-10);
    }
  }
}

TEST_CASE("classical matrix form") {
  const Eigen::Matrix2cd one = classical_matrix_form(Quat::one());
  CHECK(std::abs(one(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(one(1, 1) + 0.5) < 1e-15);
  CHECK(std::abs(one(0, 1)) < 1e-15);
  CHECK(classical_matrix_form(Quat{}).norm() == 0.0);
  const QuatRep cls = rep_classical();
  auto rng = stream_rng(28, 0);
  for (int n = 0; n < 1000; ++n) {
    const Quat q = test::random_quat(rng);
    const Eigen::Matrix2cd m = classical_matrix_form(q);
    CHECK(std::abs(m.trace()) < 1e-12);
    // q <q, .>_C - 1/2 |q|^2 id with q = z + j w as the vector (z, w)
    const Eigen::Vector2cd v(std::complex<double>(q.w, q.x), std::complex<double>(q.y, -q.z));
    const Eigen::Matrix2cd oracle = v * v.adjoint() - 0.5 * q.norm_sq() * Eigen::Matrix2cd::Identity();
    CHECK((m - oracle).norm() < 1e-12);
    CHECK((m - classical_matrix_via_moment(cls, q)).norm() < 1e-12);
  }
}

TEST_CASE("torus projection") {
  const QuatRep u1 = rep_uk(1);
  const Torus t1 = diagonal_torus(u1.alg());
  auto rng = stream_rng(29, 0);
  const MomentValue m = unflatten(random_normal(rng, 3), 1);
  CHECK((pi_torus(u1, t1, m) - m).norm() < 1e-14);

  const QuatRep u3 = rep_uk(3);
  const Torus t3 = diagonal_torus(u3.alg());
  const MomentValue full = unflatten(random_normal(rng, 27), 9);
  const MomentValue once = pi_torus(u3, t3, full);
  CHECK((pi_torus(u3, t3, once) - once).norm() < 1e-12);

  const QuatRep u2 = rep_uk(2);
  const Torus t2 = diagonal_torus(u2.alg());
  Spinor slot = Spinor::Zero(8);
  slot.head(4) = Quat{0.5, 0.5, 0.5, 0.5}.coeffs();
  CHECK(pi_torus(u2, t2, moment(u2, slot)).norm() == doctest::Approx(0.5).epsilon(1e-12));

  Torus bad = t2;
  bad.basis *= 2.0;
  CHECK_THROWS_AS(pi_torus(u2, bad, moment(u2, slot)), InvalidArgument);
}

TEST_CASE("input validation") {
  const QuatRep adj = rep_adjoint(su_basis(2));
  CHECK_THROWS_AS(moment(adj, Spinor::Zero(8)), DimensionMismatch);
  CHECK_THROWS_AS(gamma_phi(adj, Spinor::Zero(12), MomentValue::Zero(3, 2)), DimensionMismatch);
  CHECK_THROWS_AS(rep_multispinor(0), InvalidArgument);
}
