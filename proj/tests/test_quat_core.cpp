#include <doctest.h>

#include <complex>

#include <Eigen/Dense>

#include "support.hpp"
#include "swmoment/errors.hpp"
#include "swmoment/lie_algebra.hpp"
#include "swmoment/quat.hpp"

using namespace swm;

namespace {

// Quaternions as complex 2x2 matrices; matrix products follow the Hamilton product.
Eigen::Matrix2cd as_matrix(const Quat& q) {
  using C = std::complex<double>;
  Eigen::Matrix2cd m;
  m << C(q.w, q.x), C(q.y, q.z), C(-q.y, q.z), C(q.w, -q.x);
  return m;
}

double levi_civita(int a, int b, int c) { return 0.5 * (a - b) * (b - c) * (c - a); }

}  // namespace

TEST_CASE("Hamilton product: defining relations") {
  CHECK(Quat::i() * Quat::j() == Quat::k());
  CHECK(Quat::j() * Quat::k() == Quat::i());
  CHECK(Quat::k() * Quat::i() == Quat::j());
  CHECK(Quat::i() * Quat::i() == -Quat::one());
  const Quat q{0.3, -1.2, 2.5, 0.7};
  CHECK(Quat::one() * q == q);
  CHECK(q * Quat::one() == q);
  CHECK(quat_mul(Quat::i(), Quat::j()) == Quat::k());
}

TEST_CASE("Hamilton product agrees with the complex 2x2 matrix model") {
  auto rng = stream_rng(11, 0);
  for (int n = 0; n < 1000; ++n) {
    const Quat a = test::random_quat(rng);
    const Quat b = test::random_quat(rng);
    CHECK((as_matrix(a * b) - as_matrix(a) * as_matrix(b)).norm() < 1e-12);
    CHECK(std::abs((a * b).norm() - a.norm() * b.norm()) < 1e-12);
    CHECK(((a * b).conj() - b.conj() * a.conj()).norm() < 1e-12);
  }
}

TEST_CASE("left and right multiplication matrices") {
  auto rng = stream_rng(12, 0);
  for (int n = 0; n < 200; ++n) {
    const Quat p = test::random_quat(rng);
    const Quat q = test::random_quat(rng);
    const Quat r = test::random_quat(rng);
    CHECK((left_mult_matrix(p) * q.coeffs() - (p * q).coeffs()).norm() < 1e-12);
    CHECK((right_mult_matrix(p) * q.coeffs() - (q * p).coeffs()).norm() < 1e-12);
    CHECK((left_mult_matrix(p) * right_mult_matrix(r) - right_mult_matrix(r) * left_mult_matrix(p)).norm() < 1e-12);
  }
}

TEST_CASE("su(2) structure constants are 2 epsilon") {
  const LieAlg g = su_basis(2);
  REQUIRE(g.dim() == 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) CHECK(g.structure_constant(a, b, c) == doctest::Approx(2 * levi_civita(a, b, c)));
  const Coeffs t0 = Coeffs::Unit(3, 0);
  const Coeffs t1 = Coeffs::Unit(3, 1);
  const Coeffs t2 = Coeffs::Unit(3, 2);
  CHECK((g.bracket(t0, t1) - 2 * t2).norm() < 1e-14);
  CHECK((g.bracket(t1, t2) - 2 * t0).norm() < 1e-14);
  CHECK((g.bracket(t2, t0) - 2 * t1).norm() < 1e-14);
  CHECK(g.bracket(t1, t1).norm() == 0.0);
}

TEST_CASE("Lie algebra bases: closure, Jacobi, invariance") {
  auto rng = stream_rng(13, 0);
  for (const LieAlg& g : {su_basis(1), su_basis(2), su_basis(3), u_basis(1), u_basis(2), u_basis(3)}) {
    CAPTURE(g.name());
    CHECK(g.closure_residual() < 1e-12);
    for (int n = 0; n < 100; ++n) {
      const Coeffs x = random_normal(rng, g.dim());
      const Coeffs y = random_normal(rng, g.dim());
      const Coeffs z = random_normal(rng, g.dim());
      CHECK(g.jacobi_residual(x, y, z) < 1e-12);
      CHECK(g.ad_invariance_residual(x, y, z) < 1e-12);
      CHECK((g.bracket(x, y) + g.bracket(y, x)).norm() < 1e-12);
      CHECK((g.from_matrix(g.to_matrix(x)) - x).norm() < 1e-12);
      const Eigen::MatrixXcd comm = g.to_matrix(x) * g.to_matrix(y) - g.to_matrix(y) * g.to_matrix(x);
      CHECK((g.to_matrix(g.bracket(x, y)) - comm).norm() < 1e-12);
    }
  }
}

TEST_CASE("su(k) and u(k) dimensions") {
  CHECK(su_basis(1).dim() == 1);
  CHECK(su_basis(2).dim() == 3);
  CHECK(su_basis(3).dim() == 8);
  CHECK(u_basis(2).dim() == 4);
  CHECK(u_basis(3).dim() == 9);
  const LieAlg u1 = su_basis(1);
  CHECK(u1.bracket(Coeffs::Ones(1), Coeffs::Constant(1, 2.0)).norm() == 0.0);
  CHECK_THROWS_AS(su_basis(0), InvalidArgument);
  CHECK_THROWS_AS(u_basis(0), InvalidArgument);
}

TEST_CASE("the su(2) part of u(2) has structure constants sqrt(2) epsilon") {
  const LieAlg g = u_basis(2);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        CHECK(g.structure_constant(a, b, c) == doctest::Approx(std::sqrt(2.0) * levi_civita(a, b, c)));
  for (int a = 0; a < 4; ++a) CHECK(g.bracket(Coeffs::Unit(4, 3), Coeffs::Unit(4, a)).norm() == 0.0);
}

TEST_CASE("bracket rejects wrong coefficient sizes") {
  const LieAlg g = su_basis(2);
  CHECK_THROWS_AS(g.bracket(Coeffs::Zero(2), Coeffs::Zero(3)), DimensionMismatch);
}
