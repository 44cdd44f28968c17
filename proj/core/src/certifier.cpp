#include "swmoment/certifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "swmoment/ascent.hpp"
#include "swmoment/parallel.hpp"

namespace swm {

namespace {

using Mat34 = Eigen::Matrix<double, 3, 4>;
using Vec = Eigen::VectorXd;

const QuatRep& su2_adjoint() {
  static const QuatRep rep = rep_adjoint(su_basis(2));
  return rep;
}

const QuatRep& adhm12() {
  static const QuatRep rep = rep_adhm(1, 2);
  return rep;
}

constexpr int kHom = 8;      // real dimension of Hom_C(C, H (x) C^2)
constexpr int kSuBlock = 12; // su(2) (x) H inside H (x) u(2)

Spinor adhm_psi(const Vec& hom) {
  Spinor s = Spinor::Zero(adhm12().dim_S());
  s.head(kHom) = hom;
  return s;
}

Spinor adhm_xi(const Vec& su) {
  Spinor s = Spinor::Zero(adhm12().dim_S());
  s.segment(kHom, kSuBlock) = su;
  return s;
}

// mu_ab = 1/2 phi^T gamma_a rho_b phi with explicit operator products.
MomentValue moment_direct(const QuatRep& rep, const Spinor& phi) {
  MomentValue m(3, rep.alg_dim());
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < rep.alg_dim(); ++b) m(a, b) = 0.5 * phi.dot((rep.gamma_op(a) * rep.rho(b)) * phi);
  return m;
}

double ratio_direct(const QuatRep& rep, const Spinor& phi) {
  const MomentValue m = moment_direct(rep, phi);
  const double mn = m.norm();
  if (mn == 0.0) return 0.0;
  return phi.norm() * mn / (bold_gamma(rep, m) * phi).norm();
}

double relative_spread(const std::vector<double>& finals) {
  if (finals.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(finals.begin(), finals.end());
  const double scale = std::max(std::abs(*hi), std::abs(*lo));
  return scale > 0.0 ? (*hi - *lo) / scale : 0.0;
}

Vec random_rank_one_su2(std::mt19937_64& rng) {
  const Vec u = random_unit(rng, 3);
  const Vec v = random_unit(rng, 4);
  Mat34 m = u * v.transpose();
  return su2_spinor(m);
}

// Log-uniform scale in [lo, hi].
double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(random_uniform(rng, std::log(lo), std::log(hi)));
}

// Projected descent of |mu|^2 on the unit sphere, used to seed searches near mu^{-1}(0).
Spinor flow_to_zero_set(const QuatRep& rep, Spinor phi, int steps) {
  phi.normalize();
  for (int s = 0; s < steps; ++s) {
    const MomentValue m = moment(rep, phi);
    if (m.norm() < 1e-14) break;
    Spinor g = gamma_phi(rep, phi, m);
    g -= g.dot(phi) * phi;
    phi = (phi - 0.5 * g).normalized();
  }
  return phi;
}

CertReport base_report(std::string rep, std::string estimator, std::string constraint, double delta, int samples,
                       int multistarts, std::uint64_t seed) {
  CertReport r;
  r.rep = std::move(rep);
  r.estimator = std::move(estimator);
  r.constraint = std::move(constraint);
  r.delta_mu = delta;
  r.samples = samples;
  r.multistarts = multistarts;
  r.seed = seed;
  return r;
}

void fill_from_search(CertReport& r, const SearchResult& s) {
  r.estimate = s.best;
  r.finals = s.finals;
  r.spread = relative_spread(s.finals);
  r.feasible_samples = s.feasible_samples;
  r.converged = r.spread <= kMaxSpread;
}

void check_args(double delta, int samples, int multistarts, const char* who) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument(std::string(who) + ": delta_mu must lie in (0, 1)");
  if (samples < 1 || multistarts < 1) throw InvalidArgument(std::string(who) + ": samples and multistarts must be >= 1");
}

void throw_if_unconverged(const CertReport& r) {
  if (!r.converged)
    throw NonConvergence(r.estimator + ": multistart spread " + std::to_string(r.spread) + " exceeds 25%", r);
}

// ---- criterion -------------------------------------------------------------

SphereProblem criterion_problem(const QuatRep& rep, double delta, const std::vector<Vec>& extra_starts) {
  SphereProblem p;
  p.factors = {rep.dim_S()};
  p.value = [&rep, delta](const Vec& x) -> std::optional<double> {
    const MomentValue m = moment(rep, x);
    const double mn = m.norm();
    if (mn > delta) return std::nullopt;
    if (mn == 0.0) return 0.0;
    const double g = gamma_phi(rep, x, m).norm();
    if (!(g > 0.0)) return std::nullopt;
    return mn / g;
  };
  const bool su2_cone = rep.adjoint_block() && rep.adjoint_block()->offset == 0 && rep.alg().dim() == 3 &&
                        rep.dim_S() == 12;
  p.sample = [&rep, su2_cone, extra_starts](std::mt19937_64& rng) -> Vec {
    const std::uint64_t kind = rng() % 8;
    if (kind == 0 && !extra_starts.empty()) return extra_starts[rng() % extra_starts.size()];
    if (kind == 1) return random_unit(rng, rep.dim_S());
    Vec base = su2_cone ? random_rank_one_su2(rng) : flow_to_zero_set(rep, random_unit(rng, rep.dim_S()), 200);
    const double t = log_uniform(rng, 1e-4, 1.0);
    return (base + t * random_unit(rng, rep.dim_S())).normalized();
  };
  return p;
}

CertReport run_criterion(const QuatRep& rep, double delta, int samples, int multistarts, std::uint64_t seed,
                         const std::vector<Vec>& extra_starts, bool with_stability) {
  CertReport r = base_report(rep.name(), "criterion", "|phi| = 1, |mu(phi)| <= delta_mu", delta, samples,
                             multistarts, seed);
  const SphereProblem p = criterion_problem(rep, delta, extra_starts);
  const SearchResult s = maximize(p, samples, multistarts, seed);
  fill_from_search(r, s);
  r.witness = s.witness;
  r.witness_kind = "phi";
  if (with_stability && std::isfinite(r.estimate) && r.estimate > 0.0) {
    const SearchResult d = maximize(p, 2 * samples, 2 * multistarts, seed);
    r.stability_ratio = d.best / r.estimate;
  }
  return r;
}

// ---- ADHM(1,2) -------------------------------------------------------------

MomentValue mu_hom(const Vec& hom) { return moment(adhm12(), adhm_psi(hom)); }
MomentValue mu_su(const Vec& su) { return moment(adhm12(), adhm_xi(su)); }

SphereProblem sigma_interior_problem() {
  SphereProblem p;
  p.factors = {kHom, kSuBlock};
  p.value = [](const Vec& x) -> std::optional<double> {
    const MomentValue b = mu_su(x.tail(kSuBlock));
    if (b.norm() < 1e-12) return std::nullopt;
    return moment_anticorrelation(mu_hom(x.head(kHom)), b);
  };
  p.sample = [](std::mt19937_64& rng) -> Vec {
    Vec x(kHom + kSuBlock);
    x << random_unit(rng, kHom), random_unit(rng, kSuBlock);
    return x;
  };
  return p;
}

// Boundary stratum point: Psi, zeta = u (x) v, xi_hat = (1 - u u^T) W (1 - v v^T).
struct StratumPoint {
  Vec psi;
  Vec zeta;
  Vec xi_hat;
};

StratumPoint stratum_point(const Vec& x) {
  const Vec u = x.segment(kHom, 3);
  const Vec v = x.segment(kHom + 3, 4);
  Mat34 w = su2_coefficient_matrix(x.tail(kSuBlock));
  w -= u * (u.transpose() * w);
  w -= (w * v) * v.transpose();
  Mat34 z = u * v.transpose();
  return {x.head(kHom), su2_spinor(z), su2_spinor(w)};
}

SphereProblem sigma_strata_problem() {
  SphereProblem p;
  p.factors = {kHom, 3, 4, kSuBlock};
  p.value = [](const Vec& x) -> std::optional<double> {
    const StratumPoint sp = stratum_point(x);
    if (sp.xi_hat.norm() < 1e-6) return std::nullopt;
    const MomentValue b = 2.0 * moment_polarized(adhm12(), adhm_xi(sp.zeta), adhm_xi(sp.xi_hat));
    if (b.norm() < 1e-12) return std::nullopt;
    return moment_anticorrelation(mu_hom(sp.psi), b);
  };
  p.sample = [](std::mt19937_64& rng) -> Vec {
    Vec x(kHom + 3 + 4 + kSuBlock);
    x << random_unit(rng, kHom), random_unit(rng, 3), random_unit(rng, 4), random_unit(rng, kSuBlock);
    return x;
  };
  return p;
}

CertReport run_search_report(const SphereProblem& p, CertReport r, std::string witness_kind,
                             const std::function<Vec(const Vec&)>& to_witness, bool with_stability) {
  const SearchResult s = maximize(p, r.samples, r.multistarts, r.seed);
  fill_from_search(r, s);
  r.witness_kind = std::move(witness_kind);
  if (s.witness.size() > 0) r.witness = to_witness(s.witness);
  if (with_stability && std::isfinite(r.estimate) && r.estimate != 0.0) {
    const SearchResult d = maximize(p, 2 * r.samples, 2 * r.multistarts, r.seed);
    r.stability_ratio = d.best / r.estimate;
  }
  return r;
}

Vec concat(std::initializer_list<Vec> parts) {
  Eigen::Index n = 0;
  for (const auto& p : parts) n += p.size();
  Vec out(n);
  Eigen::Index off = 0;
  for (const auto& p : parts) {
    out.segment(off, p.size()) = p;
    off += p.size();
  }
  return out;
}

}  // namespace

// ---- cone geometry -----------------------------------------------------------

Eigen::Matrix<double, 3, 4> su2_coefficient_matrix(const Spinor& xi) {
  if (xi.size() != 12) throw DimensionMismatch("su(2) (x) H spinors have 12 coefficients");
  Mat34 m;
  for (int b = 0; b < 3; ++b)
    for (int q = 0; q < 4; ++q) m(b, q) = xi[4 * b + q];
  return m;
}

Spinor su2_spinor(const Eigen::Matrix<double, 3, 4>& m) {
  Spinor xi(12);
  for (int b = 0; b < 3; ++b)
    for (int q = 0; q < 4; ++q) xi[4 * b + q] = m(b, q);
  return xi;
}

ConeDecomposition cone_project(const Spinor& xi, double delta_mu) {
  const Mat34 m = su2_coefficient_matrix(xi);
  ConeDecomposition d;
  if (m.isZero(0.0)) {
    d.zeta = Spinor::Zero(12);
    d.xi_hat = Spinor::Zero(12);
    return d;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s[0] - s[1] <= 1e-9 * s[0])
    throw AmbiguousProjection("cone_project: top singular values " + std::to_string(s[0]) + " and " +
                              std::to_string(s[1]) + " coincide");
  Mat34 z = s[0] * svd.matrixU().col(0) * svd.matrixV().col(0).transpose();
  d.zeta = su2_spinor(z);
  d.xi_hat = xi - d.zeta;
  d.distance = d.xi_hat.norm();
  const double mu = moment(su2_adjoint(), xi).norm();
  d.in_band = mu <= delta_mu * xi.squaredNorm();
  d.hat_ratio = mu > 0.0 ? d.distance * xi.norm() / mu : 0.0;
  return d;
}

double su2_mu_norm_sq_from_singular_values(const Spinor& xi) {
  const Eigen::Vector3d s = Eigen::JacobiSVD<Eigen::MatrixXd>(su2_coefficient_matrix(xi)).singularValues();
  const Eigen::Vector3d q = s.cwiseAbs2();
  return 4.0 * (q[0] * q[1] + q[0] * q[2] + q[1] * q[2]);
}

Eigen::MatrixXd cone_tangent_basis(const Spinor& zeta) {
  const Mat34 m = su2_coefficient_matrix(zeta);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()[0] == 0.0) throw InvalidArgument("cone_tangent_basis: zeta must be nonzero");
  const Eigen::Vector3d u = svd.matrixU().col(0);
  const Eigen::Vector4d v = svd.matrixV().col(0);
  Eigen::MatrixXd span(12, 7);
  for (int q = 0; q < 4; ++q) span.col(q) = su2_spinor(u * Eigen::Vector4d::Unit(q).transpose());
  for (int b = 0; b < 3; ++b) span.col(4 + b) = su2_spinor(Eigen::Vector3d::Unit(b) * v.transpose());
  Eigen::JacobiSVD<Eigen::MatrixXd> s2(span, Eigen::ComputeThinU);
  return s2.matrixU().leftCols(6);
}

HaydysFactor haydys_decompose(const Spinor& xi, double tol) {
  const Mat34 m = su2_coefficient_matrix(xi);
  const double n2 = xi.squaredNorm();
  if (n2 == 0.0) throw InvalidArgument("haydys_decompose: xi must be nonzero");
  const double mu = moment(su2_adjoint(), xi).norm();
  if (mu > tol * n2)
    throw NotOnCone("haydys_decompose: |mu(xi)| = " + std::to_string(mu) + " exceeds tolerance");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Vector3d tau = svd.matrixU().col(0);
  Eigen::Vector4d nu = svd.singularValues()[0] * svd.matrixV().col(0);
  for (int b = 0; b < 3; ++b) {
    if (std::abs(tau[b]) > 1e-12) {
      if (tau[b] < 0) {
        tau = -tau;
        nu = -nu;
      }
      break;
    }
  }
  return {tau, Quat::from_coeffs(nu)};
}

// ---- pointwise objectives ------------------------------------------------------

double criterion_ratio(const QuatRep& rep, const Spinor& phi) {
  const MomentValue m = moment(rep, phi);
  const double mn = m.norm();
  if (mn == 0.0) return 0.0;
  const double g = gamma_phi(rep, phi, m).norm();
  const double r = phi.norm() * mn / g;
  if (!(g > 0.0) || !std::isfinite(r))
    throw DivisionByZero("criterion_ratio: Gamma_phi mu(phi) vanishes while |mu(phi)| = " + std::to_string(mn));
  return r;
}

double moment_anticorrelation(const MomentValue& a, const MomentValue& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return -(a.array() * b.array()).sum() / (na * nb);
}

double quadratic_ratio(const QuatRep& adhm, const Spinor& psi, const Spinor& xi, double* denominator) {
  const MomentValue m = moment(adhm, Spinor(psi + xi));
  const MomentValue mp = moment(adhm, psi);
  const double norm2 = psi.squaredNorm() + xi.squaredNorm();
  const double den = (m.array() * mp.array()).sum() + gamma_phi(adhm, xi, m).squaredNorm() / norm2;
  if (denominator) *denominator = den;
  return m.squaredNorm() / den;
}

// ---- reports -----------------------------------------------------------------

double reevaluate(const CertReport& r) {
  const Vec& w = r.witness;
  if (r.witness_kind == "phi") {
    if (r.rep == su2_adjoint().name()) return ratio_direct(su2_adjoint(), w);
    if (r.rep == "adjoint-su(3)") return ratio_direct(rep_adjoint(su_basis(3)), w);
    if (r.rep.rfind("multispinor-", 0) == 0) return ratio_direct(rep_multispinor(std::stoi(r.rep.substr(12))), w);
    if (r.rep == "classical") return ratio_direct(rep_classical(), w);
    throw InvalidArgument("reevaluate: unknown rep " + r.rep);
  }
  const QuatRep& rep = adhm12();
  const int n = rep.dim_S();
  if (r.witness_kind == "psi+xi") {
    const Spinor psi = w.head(n);
    const Spinor xi = w.segment(n, n);
    if (r.estimator == "sigma") {
      const MomentValue a = moment_direct(rep, psi);
      const MomentValue b = moment_direct(rep, xi);
      return -(a.array() * b.array()).sum() / (a.norm() * b.norm());
    }
    if (r.estimator == "min_mu") return moment_direct(rep, Spinor(psi + xi)).norm();
    if (r.estimator == "quadratic") {
      const MomentValue m = moment_direct(rep, Spinor(psi + xi));
      const MomentValue mp = moment_direct(rep, psi);
      const double den = (m.array() * mp.array()).sum() +
                         (bold_gamma(rep, m) * xi).squaredNorm() / (psi.squaredNorm() + xi.squaredNorm());
      return m.squaredNorm() / den;
    }
  }
  if (r.witness_kind == "psi+zeta+xi_hat") {
    const Spinor psi = w.head(n);
    const Spinor zeta = w.segment(n, n);
    const Spinor hat = w.segment(2 * n, n);
    const MomentValue a = moment_direct(rep, psi);
    // 2 mu(zeta, xi_hat) = mu(zeta + xi_hat) - mu(zeta) - mu(xi_hat)
    const MomentValue b = moment_direct(rep, Spinor(zeta + hat)) - moment_direct(rep, zeta) - moment_direct(rep, hat);
    return -(a.array() * b.array()).sum() / (a.norm() * b.norm());
  }
  throw InvalidArgument("reevaluate: unknown witness kind " + r.witness_kind);
}

CertReport certify_criterion(const QuatRep& rep, double delta_mu, int samples, int multistarts, std::uint64_t seed) {
  check_args(delta_mu, samples, multistarts, "certify_criterion");
  CertReport r = run_criterion(rep, delta_mu, samples, multistarts, seed, {}, true);
  throw_if_unconverged(r);
  return r;
}

CertReport certify_su2_criterion(double delta_mu, int samples, int multistarts, std::uint64_t seed) {
  return certify_criterion(su2_adjoint(), delta_mu, samples, multistarts, seed);
}

std::vector<CertReport> certify_su2_sweep(const std::vector<double>& deltas, int samples, int multistarts,
                                          std::uint64_t seed) {
  std::vector<double> sorted = deltas;
  std::sort(sorted.begin(), sorted.end());
  std::vector<CertReport> out;
  std::vector<Vec> starts;
  for (double d : sorted) {
    check_args(d, samples, multistarts, "certify_su2_sweep");
    CertReport r = run_criterion(su2_adjoint(), d, samples, multistarts, seed, starts, true);
    // A feasible set for a smaller delta is contained in the larger one.
    if (!out.empty() && out.back().estimate > r.estimate) {
      r.estimate = out.back().estimate;
      r.witness = out.back().witness;
    }
    starts.push_back(r.witness);
    throw_if_unconverged(r);
    out.push_back(std::move(r));
  }
  return out;
}

CertReport estimate_sigma_adhm12(int samples, int multistarts, std::uint64_t seed) {
  if (samples < 1 || multistarts < 1) throw InvalidArgument("estimate_sigma_adhm12: samples and multistarts must be >= 1");
  CertReport interior = run_search_report(
      sigma_interior_problem(),
      base_report(adhm12().name(), "sigma", "Psi != 0, mu(xi) != 0", 0.0, samples, multistarts, seed), "psi+xi",
      [](const Vec& x) { return concat({adhm_psi(x.head(kHom)), adhm_xi(x.tail(kSuBlock))}); }, true);
  CertReport strata = run_search_report(
      sigma_strata_problem(),
      base_report(adhm12().name(), "sigma", "xi -> 2 mu(zeta, xi_hat) with mu(zeta) = 0", 0.0, samples, multistarts,
                  seed + 1),
      "psi+zeta+xi_hat",
      [](const Vec& x) {
        const StratumPoint sp = stratum_point(x);
        return concat({adhm_psi(sp.psi), adhm_xi(sp.zeta), adhm_xi(sp.xi_hat)});
      },
      true);

  CertReport r = base_report(adhm12().name(), "sigma", "interior and boundary strata", 0.0, samples, multistarts, seed);
  const CertReport& top = strata.estimate > interior.estimate ? strata : interior;
  r.estimate = top.estimate;
  r.witness = top.witness;
  r.witness_kind = top.witness_kind;
  r.finals = interior.finals;
  r.finals.insert(r.finals.end(), strata.finals.begin(), strata.finals.end());
  r.spread = std::max(interior.spread, strata.spread);
  r.feasible_samples = interior.feasible_samples + strata.feasible_samples;
  r.converged = interior.converged && strata.converged;
  // sup over both strata at doubled budget, relative to the reported sup
  const double doubled = std::max(interior.stability_ratio * interior.estimate, strata.stability_ratio * strata.estimate);
  r.stability_ratio = doubled / r.estimate;
  r.values["sigma_interior"] = interior.estimate;
  r.values["sigma_strata"] = strata.estimate;
  r.values["margin"] = 1.0 - r.estimate;
  r.parts = {interior, strata};

  if (r.estimate < 1.0) {
    const double c_split = std::sqrt(2.0 / (1.0 - r.estimate));
    const int checks = 100000;
    std::vector<double> excess(checks);
    const std::uint64_t fresh = seed ^ 0x5bd1e9955bd1e995ULL;
    parallel_for(checks, [&](std::int64_t i) {
      auto rng = stream_rng(fresh, static_cast<std::uint64_t>(i));
      Vec psi = random_unit(rng, kHom) * log_uniform(rng, 1e-2, 1e2);
      Vec xi = (rng() % 2 == 0) ? Vec(random_unit(rng, kSuBlock))
                                : Vec(random_rank_one_su2(rng) + log_uniform(rng, 1e-4, 1.0) * random_unit(rng, kSuBlock));
      const double a = mu_hom(psi).norm();
      const double b = mu_su(xi).norm();
      const double c = moment(adhm12(), Spinor(adhm_psi(psi) + adhm_xi(xi))).norm();
      excess[i] = (a + b) - c_split * c;
    });
    const auto worst = argmax_lowest(excess);
    r.values["c_split"] = c_split;
    r.values["c_split_samples"] = checks;
    r.values["c_split_violations"] =
        static_cast<double>(std::count_if(excess.begin(), excess.end(), [](double e) { return e > 0.0; }));
    r.values["c_split_worst_excess"] = excess[worst];
  }
  throw_if_unconverged(r);
  return r;
}

CertReport min_mu_on_unit_psi(int samples, int multistarts, std::uint64_t seed) {
  if (samples < 1 || multistarts < 1) throw InvalidArgument("min_mu_on_unit_psi: samples and multistarts must be >= 1");
  CertReport r = base_report(adhm12().name(), "min_mu", "|Psi| = 1, |xi| <= R", 0.0, samples, multistarts, seed);
  r.estimate = std::numeric_limits<double>::infinity();
  r.witness_kind = "psi+xi";
  double worst_drift = 1.0;
  for (double radius : {0.0, 1.0, 10.0}) {
    SphereProblem p;
    p.factors = {kHom, kSuBlock + 1};
    p.value = [radius](const Vec& x) -> std::optional<double> {
      return -moment(adhm12(), Spinor(adhm_psi(x.head(kHom)) + adhm_xi(radius * x.segment(kHom, kSuBlock)))).norm();
    };
    // Radii of xi spread log-uniformly so every scale of the ball is represented.
    p.sample = [](std::mt19937_64& rng) -> Vec {
      const double t = log_uniform(rng, 1e-3, 1.0);
      Vec x(kHom + kSuBlock + 1);
      x << random_unit(rng, kHom), t * random_unit(rng, kSuBlock), std::sqrt(1.0 - t * t);
      return x;
    };
    const std::string tag = "R=" + std::to_string(static_cast<int>(radius));
    CertReport part = run_search_report(
        p, base_report(adhm12().name(), "min_mu", "|Psi| = 1, |xi| <= " + tag.substr(2), 0.0, samples, multistarts, seed),
        "psi+xi",
        [radius](const Vec& x) {
          return concat({adhm_psi(x.head(kHom)), adhm_xi(radius * x.segment(kHom, kSuBlock))});
        },
        true);
    part.estimate = -part.estimate;
    for (double& f : part.finals) f = -f;
    part.values["radius"] = radius;
    r.values["inf_" + tag] = part.estimate;
    r.values["stability_" + tag] = part.stability_ratio;
    if (std::abs(part.stability_ratio - 1.0) > std::abs(worst_drift - 1.0)) worst_drift = part.stability_ratio;
    if (part.estimate < r.estimate) {
      r.estimate = part.estimate;
      r.witness = part.witness;
    }
    r.spread = std::max(r.spread, part.spread);
    r.converged = r.converged && part.converged;
    r.feasible_samples += part.feasible_samples;
    r.parts.push_back(std::move(part));
  }
  r.stability_ratio = worst_drift;
  throw_if_unconverged(r);
  return r;
}

CertReport certify_quadratic_estimate(double delta_mu, int samples, int multistarts, std::uint64_t seed) {
  check_args(delta_mu, samples, multistarts, "certify_quadratic_estimate");
  SphereProblem p;
  p.factors = {kHom + kSuBlock};
  p.value = [delta_mu](const Vec& x) -> std::optional<double> {
    double den = 0.0;
    const Spinor psi = adhm_psi(x.head(kHom));
    const Spinor xi = adhm_xi(x.tail(kSuBlock));
    const MomentValue m = moment(adhm12(), Spinor(psi + xi));
    const double mn = m.norm();
    if (mn > delta_mu || mn == 0.0) return std::nullopt;
    const double q = quadratic_ratio(adhm12(), psi, xi, &den);
    if (!(den > 0.0)) return std::nullopt;
    return q;
  };
  p.sample = [](std::mt19937_64& rng) -> Vec {
    Vec x(kHom + kSuBlock);
    x.head(kHom) = log_uniform(rng, 1e-4, 0.3) * random_unit(rng, kHom);
    x.tail(kSuBlock) = random_rank_one_su2(rng) + log_uniform(rng, 1e-4, 0.3) * random_unit(rng, kSuBlock);
    return x.normalized();
  };
  CertReport r = run_search_report(
      p,
      base_report(adhm12().name(), "quadratic", "|Psi|^2 + |xi|^2 = 1, |mu(Psi, xi)| <= delta_mu", delta_mu, samples,
                  multistarts, seed),
      "psi+xi", [](const Vec& x) { return concat({adhm_psi(x.head(kHom)), adhm_xi(x.tail(kSuBlock))}); }, true);

  // Sign audit of the denominator over the sampled band points.
  std::vector<double> den(samples, std::numeric_limits<double>::quiet_NaN());
  parallel_for(samples, [&](std::int64_t i) {
    auto rng = stream_rng(seed, static_cast<std::uint64_t>(i));
    const Vec x = retract(p.factors, p.sample(rng));
    const Spinor psi = adhm_psi(x.head(kHom));
    const Spinor xi = adhm_xi(x.tail(kSuBlock));
    const MomentValue m = moment(adhm12(), Spinor(psi + xi));
    if (m.norm() > delta_mu || m.norm() == 0.0) return;
    double d = 0.0;
    quadratic_ratio(adhm12(), psi, xi, &d);
    den[i] = d;
  });
  std::int64_t negative = 0;
  std::int64_t first = -1;
  for (std::int64_t i = 0; i < samples; ++i) {
    if (den[i] <= 0.0) {
      ++negative;
      if (first < 0) first = i;
    }
  }
  r.values["negative_denominators"] = static_cast<double>(negative);
  r.values["first_negative_sample"] = static_cast<double>(first);
  throw_if_unconverged(r);
  return r;
}

Spinor su3_commuting_point(const Eigen::Vector4d& v, const Eigen::Matrix<double, 3, 4>& eta, double eps) {
  Spinor xi = Spinor::Zero(32);
  xi.segment(4 * 7, 4) = v;  // lambda_8 commutes with lambda_1, lambda_2, lambda_3
  for (int b = 0; b < 3; ++b)
    for (int q = 0; q < 4; ++q) xi[4 * b + q] += eps * eta(b, q);
  return xi;
}

CertReport failure_search(const LieAlg& alg, double threshold, int samples, int multistarts, std::uint64_t seed,
                          double delta_mu) {
  check_args(delta_mu, samples, multistarts, "failure_search");
  const QuatRep rep = rep_adjoint(alg);
  const int d = rep.dim_S();
  const bool structured = alg.name() == "su(3)";
  SphereProblem p;
  p.factors = {d};
  p.value = [&rep, delta_mu](const Vec& x) -> std::optional<double> {
    const MomentValue m = moment(rep, x);
    const double mn = m.norm();
    if (mn > delta_mu) return std::nullopt;
    if (mn == 0.0) return 0.0;
    const double g = gamma_phi(rep, x, m).norm();
    if (!(g > 0.0)) return std::nullopt;
    return mn / g;
  };
  p.sample = [d, structured](std::mt19937_64& rng) -> Vec {
    if (structured && rng() % 2 == 0) {
      const Eigen::Vector4d v = random_unit(rng, 4);
      const Mat34 eta = su2_coefficient_matrix(random_unit(rng, 12));
      return su3_commuting_point(v, eta, log_uniform(rng, 1e-3, 1e-1)).normalized();
    }
    const int n = d / 4;
    Vec u = random_unit(rng, n);
    Vec v = random_unit(rng, 4);
    Vec x(d);
    for (int b = 0; b < n; ++b) x.segment(4 * b, 4) = u[b] * v;
    return (x + log_uniform(rng, 1e-4, 1.0) * random_unit(rng, d)).normalized();
  };

  CertReport r = base_report(rep.name(), "failure_search", "|xi| = 1, |mu(xi)| <= delta_mu", delta_mu, samples,
                             multistarts, seed);
  const SearchResult s = maximize(p, samples, multistarts, seed);
  fill_from_search(r, s);
  r.converged = true;
  r.witness = s.witness;
  r.witness_kind = "phi";

  // Zero-denominator witnesses among the samples.
  std::vector<char> zero(samples, 0);
  parallel_for(samples, [&](std::int64_t i) {
    auto rng = stream_rng(seed, static_cast<std::uint64_t>(i));
    const Vec x = retract(p.factors, p.sample(rng));
    try {
      criterion_ratio(rep, x);
    } catch (const DivisionByZero&) {
      zero[i] = 1;
    }
  });
  const auto hit = std::find(zero.begin(), zero.end(), 1);
  r.values["threshold"] = threshold;
  r.values["zero_denominator_witness"] = hit != zero.end() ? static_cast<double>(hit - zero.begin()) : -1.0;
  r.values["succeeded"] = (r.estimate > threshold || hit != zero.end()) ? 1.0 : 0.0;
  return r;
}

CertReport su3_failure_search(double threshold, int samples, int multistarts, std::uint64_t seed) {
  return failure_search(su_basis(3), threshold, samples, multistarts, seed);
}

}  // namespace swm
