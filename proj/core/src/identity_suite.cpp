#include "swmoment/identity_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "swmoment/errors.hpp"
#include "swmoment/parallel.hpp"

namespace swm {

namespace {

using Sample = std::pair<double, Eigen::VectorXd>;

IdentityCheck run_check(std::string name, const QuatRep& rep, int samples, std::uint64_t seed, double tol,
                        const std::function<Sample(std::mt19937_64&)>& one) {
  if (samples < 1) throw InvalidArgument(name + ": samples must be >= 1");
  std::vector<double> residual(samples);
  std::vector<Eigen::VectorXd> witness(samples);
  parallel_for(samples, [&](std::int64_t i) {
    auto rng = stream_rng(seed, static_cast<std::uint64_t>(i));
    auto [r, w] = one(rng);
    residual[i] = std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
    witness[i] = std::move(w);
  });
  IdentityCheck c;
  c.name = std::move(name);
  c.rep = rep.name();
  c.samples = samples;
  c.seed = seed;
  c.tolerance = tol;
  c.worst_index = argmax_lowest(residual);
  c.worst_residual = residual[c.worst_index];
  c.worst_witness = witness[c.worst_index];
  return c;
}

IdentityCheck worse(IdentityCheck a, const IdentityCheck& b) {
  const std::string reps = a.rep + "," + b.rep;
  if (b.worst_residual > a.worst_residual) a = b;
  a.rep = reps;
  return a;
}

Spinor embed_block(const QuatRep& rep, const Eigen::VectorXd& xi) {
  Spinor phi = Spinor::Zero(rep.dim_S());
  phi.segment(rep.adjoint_block()->offset, xi.size()) = xi;
  return phi;
}

// Coefficients of xi in the block as a count x 4 matrix (row b = component along xi_b).
std::array<Coeffs, 4> components(const Eigen::VectorXd& xi, int count) {
  std::array<Coeffs, 4> out;
  for (int q = 0; q < 4; ++q) {
    out[q].resize(count);
    for (int b = 0; b < count; ++b) out[q][b] = xi[4 * b + q];
  }
  return out;
}

}  // namespace

bool has_su2_adjoint_block(const QuatRep& rep) {
  const auto& blk = rep.adjoint_block();
  if (!blk || blk->count < 3) return false;
  const LieAlg& g = rep.alg();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int e = 3; e < g.dim(); ++e)
        if (g.structure_constant(a, b, e) != 0.0) return false;
  return g.structure_constant(0, 1, 2) != 0.0;
}

IdentityCheck check_mu_gamma_identity(const QuatRep& rep, int samples, std::uint64_t seed) {
  return run_check("mu_gamma_identity", rep, samples, seed, 1e-10, [&](std::mt19937_64& rng) {
    const Spinor phi = random_unit(rng, rep.dim_S());
    const MomentValue m = moment(rep, phi);
    const MomentValue lhs = moment_polarized(rep, gamma_phi(rep, phi, m), phi);
    const Eigen::MatrixXd g = gamma_phi_matrix(rep, phi);
    const MomentValue rhs = unflatten(0.5 * g.transpose() * (g * flatten(m)), rep.alg_dim());
    return Sample{(lhs - rhs).norm(), phi};
  });
}

IdentityCheck check_commutator_norm(const QuatRep& rep, int samples, std::uint64_t seed) {
  if (!rep.adjoint_block()) throw InvalidArgument("check_commutator_norm: rep " + rep.name() + " has no adjoint block");
  const int count = rep.adjoint_block()->count;
  return run_check("commutator_norm", rep, samples, seed, 1e-10, [&](std::mt19937_64& rng) {
    const Eigen::VectorXd xi = random_unit(rng, 4 * count);
    const auto c = components(xi, count);
    double brackets = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) brackets += rep.alg().bracket(c[p], c[q]).squaredNorm();
    const double lhs = moment(rep, embed_block(rep, xi)).squaredNorm();
    return Sample{std::abs(lhs - 0.5 * brackets), xi};
  });
}

IdentityCheck check_commutator_norm(int samples, std::uint64_t seed) {
  return worse(check_commutator_norm(rep_adjoint(su_basis(2)), samples, seed),
               check_commutator_norm(rep_adjoint(su_basis(3)), samples, seed));
}

IdentityCheck check_dmu_orthogonality(const QuatRep& rep, int samples, std::uint64_t seed) {
  if (!has_su2_adjoint_block(rep))
    throw InvalidArgument("check_dmu_orthogonality: rep " + rep.name() + " has no su(2) adjoint block");
  const int count = rep.adjoint_block()->count;
  const int n = rep.alg_dim();
  return run_check("dmu_orthogonality", rep, samples, seed, 1e-10, [&](std::mt19937_64& rng) {
    const Eigen::Vector4d v = random_unit(rng, 4);
    // xi_hat = (1 - tau_0 tau_0^T) Xi (1 - v v^T) restricted to the tau rows.
    Eigen::Matrix<double, 3, 4> xi = Eigen::Map<const Eigen::Matrix<double, 4, 3>>(random_normal(rng, 12).data()).transpose();
    xi.row(0).setZero();
    xi = xi - (xi * v) * v.transpose();
    Eigen::VectorXd zeta_block = Eigen::VectorXd::Zero(4 * count);
    Eigen::VectorXd hat_block = Eigen::VectorXd::Zero(4 * count);
    for (int q = 0; q < 4; ++q) {
      zeta_block[q] = v[q];
      for (int b = 0; b < 3; ++b) hat_block[4 * b + q] = xi(b, q);
    }
    const Spinor zeta = embed_block(rep, zeta_block);
    const Spinor hat = embed_block(rep, hat_block);
    const MomentValue mu_hat = moment(rep, hat);
    const MomentValue dmu = 2.0 * moment_polarized(rep, zeta, hat);
    double r = 0.0;
    for (int b = 0; b < n; ++b) {
      if (b != 0) r = std::max(r, mu_hat.col(b).norm());
      if (b != 1 && b != 2) r = std::max(r, dmu.col(b).norm());
    }
    Eigen::VectorXd witness(zeta.size() + hat.size());
    witness << zeta, hat;
    return Sample{r, witness};
  });
}

IdentityCheck check_dmu_orthogonality(int samples, std::uint64_t seed) {
  return check_dmu_orthogonality(rep_adjoint(su_basis(2)), samples, seed);
}

double dirac_constraint_residual(const QuatRep& rep, const std::array<Spinor, 3>& psi) {
  Spinor s = Spinor::Zero(rep.dim_S());
  for (int i = 0; i < 3; ++i) {
    rep.check_spinor(psi[i], "dirac_constraint_residual");
    s += rep.gamma_op(i) * psi[i];
  }
  return s.norm();
}

std::array<Spinor, 3> project_dirac_kernel(const QuatRep& rep, const std::array<Spinor, 3>& psi) {
  Spinor s = Spinor::Zero(rep.dim_S());
  for (int i = 0; i < 3; ++i) {
    rep.check_spinor(psi[i], "project_dirac_kernel");
    s += rep.gamma_op(i) * psi[i];
  }
  std::array<Spinor, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = psi[i] - rep.gamma_op(i).transpose() * s / 3.0;
  return out;
}

double dirac_moment_residual(const QuatRep& rep, const Spinor& phi, const std::array<Spinor, 3>& psi) {
  rep.check_spinor(phi, "dirac_moment_residual");
  double scale = 0.0;
  for (const auto& p : psi) scale = std::max(scale, p.norm());
  if (dirac_constraint_residual(rep, psi) > 1e-9 * std::max(1.0, scale))
    throw InvalidArgument("dirac_moment_residual: psi triple is not in the pointwise Dirac kernel");

  auto field = [&](int j, double t) {
    return moment(rep, Spinor(phi + t * psi[j]));
  };
  const double h = 1e-4;
  std::array<MomentValue, 3> deriv;
  for (int j = 0; j < 3; ++j) {
    const MomentValue coarse = (field(j, h) - field(j, -h)) / (2 * h);
    const MomentValue fine = (field(j, h / 2) - field(j, -h / 2)) / h;
    deriv[j] = (4.0 * fine - coarse) / 3.0;
  }
  const int n = rep.alg_dim();
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    const int j = (c + 1) % 3;
    const int a = (c + 2) % 3;
    for (int b = 0; b < n; ++b) {
      // curl: sum_{j,a} eps_{c j a} d_j mu_{a b}
      const double curl = deriv[j](a, b) - deriv[a](j, b);
      const double rhs = -(rep.rho(b) * phi).dot(psi[c]);
      worst = std::max(worst, std::abs(curl - rhs));
    }
  }
  return worst;
}

IdentityCheck check_dirac_moment_compatibility(const QuatRep& rep, int samples, std::uint64_t seed) {
  const int d = rep.dim_S();
  return run_check("dirac_moment_compatibility", rep, samples, seed, 1e-8, [&](std::mt19937_64& rng) {
    const Spinor phi = random_unit(rng, d);
    std::array<Spinor, 3> raw{random_normal(rng, d), random_normal(rng, d), random_normal(rng, d)};
    auto psi = project_dirac_kernel(rep, raw);
    const double norm = std::sqrt(psi[0].squaredNorm() + psi[1].squaredNorm() + psi[2].squaredNorm());
    Eigen::VectorXd witness(4 * d);
    witness.head(d) = phi;
    if (norm < 1e-12) return Sample{0.0, witness};
    for (auto& p : psi) p /= norm;
    for (int i = 0; i < 3; ++i) witness.segment((i + 1) * d, d) = psi[i];
    return Sample{dirac_moment_residual(rep, phi, psi), witness};
  });
}

}  // namespace swm
