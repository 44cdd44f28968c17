// Acceptance run: one PASS/FAIL line per criterion, details indented below it.
#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "swmoment/certifier.hpp"
#include "swmoment/covering.hpp"
#include "swmoment/frequency_lab.hpp"
#include "swmoment/identity_suite.hpp"
#include "swmoment/parallel.hpp"
#include "synthetic.hpp"

using namespace swm;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Criterion {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::shared_ptr<const Domain> domain(double R, double h) {
  return std::make_shared<const Domain>(Eigen::Vector3d::Zero(), R, h);
}

Criterion identity_suite() {
  Criterion c;
  const double tol = 1e-8;
  const int samples = 10000;
  for (const std::string id : {"classical", "su2-adjoint", "su3-adjoint", "adhm12", "multispinor-2"}) {
    const QuatRep rep = rep_by_id(id);
    std::vector<IdentityCheck> checks{check_mu_gamma_identity(rep, samples, kSeed),
                                      check_dirac_moment_compatibility(rep, samples, kSeed)};
    if (has_su2_adjoint_block(rep)) {
      checks.push_back(check_commutator_norm(rep, samples, kSeed));
      checks.push_back(check_dmu_orthogonality(rep, samples, kSeed));
    } else {
      c.notes.push_back("n/a  " + id + ": commutator_norm and dmu_orthogonality need an su(2) adjoint block");
    }
    for (const auto& k : checks) c.require(k.worst_residual <= tol, id + " " + k.name + " worst " + fmt(k.worst_residual));
  }
  for (const auto& k : {check_commutator_norm(samples, kSeed), check_dmu_orthogonality(samples, kSeed)})
    c.require(k.worst_residual <= tol, "su(2) (x) H and su(3) (x) H " + k.name + " worst " + fmt(k.worst_residual));
  return c;
}

Criterion cross_oracles() {
  Criterion c;
  for (int k : {2, 3}) {
    const LieAlg g = su_basis(k);
    const QuatRep adj = rep_adjoint(g);
    double worst = 0.0;
    for (int n = 0; n < 100000; ++n) {
      auto rng = stream_rng(kSeed + k, n);
      const Spinor xi = random_normal(rng, adj.dim_S());
      worst = std::max(worst, (adjoint_mu_explicit(g, xi) - moment(adj, xi)).norm());
    }
    c.require(worst <= 1e-10, "adjoint_mu_explicit vs moment, su(" + std::to_string(k) + "), worst " + fmt(worst));
  }
  const QuatRep cls = rep_classical();
  double worst_cls = 0.0;
  for (int n = 0; n < 100000; ++n) {
    auto rng = stream_rng(kSeed + 5, n);
    const Eigen::VectorXd q = random_normal(rng, 4);
    const Quat p = Quat::from_coeffs(q);
    worst_cls = std::max(worst_cls, (classical_matrix_form(p) - classical_matrix_via_moment(cls, p)).norm());
  }
  c.require(worst_cls <= 1e-10, "classical_matrix_form vs gamma(moment), worst " + fmt(worst_cls));
  const QuatRep su2 = rep_adjoint(su_basis(2));
  double worst_rel = 0.0;
  for (int n = 0; n < 100000; ++n) {
    auto rng = stream_rng(kSeed + 6, n);
    const Spinor xi = random_normal(rng, 12);
    const double direct = moment(su2, xi).squaredNorm();
    worst_rel = std::max(worst_rel, std::abs(su2_mu_norm_sq_from_singular_values(xi) - direct) / direct);
  }
  c.require(worst_rel <= 1e-9, "singular-value |mu(xi)|^2 vs moment norm, worst relative " + fmt(worst_rel));
  return c;
}

Criterion torus_projection() {
  Criterion c;
  for (int k : {1, 2, 3}) {
    const QuatRep rep = rep_uk(k);
    const Torus t = diagonal_torus(rep.alg());
    double worst = 0.0;
    double lo = 1e300;
    double hi = 0.0;
    for (int n = 0; n < 10000; ++n) {
      auto rng = stream_rng(kSeed + 10 + k, n);
      const Spinor psi = random_unit(rng, rep.dim_S());
      const double proj = pi_torus(rep, t, moment(rep, psi)).norm();
      const double half = 0.5 * psi.squaredNorm();
      worst = std::max(worst, std::abs(proj - half));
      lo = std::min(lo, proj / half);
      hi = std::max(hi, proj / half);
    }
    c.require(worst <= 1e-10, "k=" + std::to_string(k) + ": worst | |pi_t mu(Psi)| - |Psi|^2/2 | = " + fmt(worst) +
                                  ", ratio range [" + fmt(lo) + ", " + fmt(hi) + "], 1/sqrt(k) = " +
                                  fmt(1.0 / std::sqrt(k)));
  }
  return c;
}

bool stable(const CertReport& r) { return std::abs(r.stability_ratio - 1.0) < 0.1; }

Criterion su2_vs_su3() {
  Criterion c;
  const CertReport r = certify_su2_criterion(0.05, 2000, 8, kSeed);
  c.require(std::isfinite(r.estimate) && r.estimate > 0.0, "su(2) criterion c_hat = " + fmt(r.estimate));
  c.require(r.spread < 0.25, "multistart spread " + fmt(r.spread));
  c.require(stable(r), "estimate at doubled budget / estimate = " + fmt(r.stability_ratio));
  const CertReport f = su3_failure_search(10 * r.estimate, 2000, 8, kSeed);
  const bool zero = f.values.at("zero_denominator_witness") >= 0.0;
  c.require(f.values.at("succeeded") == 1.0,
            "su(3) failure search: ratio " + fmt(f.estimate) + " vs 10 c_hat = " + fmt(10 * r.estimate) +
                (zero ? ", zero-denominator witness found" : ""));
  return c;
}

Criterion sigma() {
  Criterion c;
  try {
    const CertReport r = estimate_sigma_adhm12(2000, 8, kSeed);
    c.require(r.estimate < 0.999, "sigma_hat = " + fmt(r.estimate));
    c.require(r.spread < 0.25, "multistart spread " + fmt(r.spread));
    c.require(stable(r), "estimate at doubled budget / estimate = " + fmt(r.stability_ratio));
    c.require(r.values.at("c_split_samples") == 100000 && r.values.at("c_split_violations") == 0,
              "c_split = " + fmt(r.values.at("c_split")) + ", violations " + fmt(r.values.at("c_split_violations")) +
                  " of " + fmt(r.values.at("c_split_samples")));
  } catch (const NonConvergence& e) {
    c.require(false, e.what());
  }
  return c;
}

Criterion min_mu() {
  Criterion c;
  try {
    const CertReport r = min_mu_on_unit_psi(2000, 8, kSeed);
    for (const auto& p : r.parts) {
      const std::string tag = "R=" + fmt(p.values.at("radius"));
      c.require(p.estimate > 0.0, tag + ": inf = " + fmt(p.estimate));
      c.require(stable(p), tag + ": doubled / base = " + fmt(p.stability_ratio));
    }
  } catch (const NonConvergence& e) {
    c.require(false, e.what());
  }
  return c;
}

Criterion frequency() {
  Criterion c;
  const double R = 1.0;
  const auto d = domain(R, R / 64);
  const std::vector<double> radii{0.15, 0.3, 0.45, 0.6, 0.75, 0.9};
  const double tolerance = 0.05;
  for (int deg = 0; deg <= 3; ++deg) {
    const FrequencyProfile p = frequency_profile(cli::harmonic_field(d, deg), Eigen::Vector3d::Zero(), radii);
    double worst = 0.0;
    for (double n : p.N) worst = std::max(worst, std::abs(n - deg));
    c.require(worst <= 0.02 * std::max(deg, 1), "d=" + std::to_string(deg) + ": max |N - d| = " + fmt(worst));
    const MonotonicityReport m = monotonicity_report(p, tolerance);
    double worst_exp = 0.0;
    for (const auto& q : m.pairs) worst_exp = std::max(worst_exp, std::abs(q.exponent - 2 * deg));
    c.require(m.all_ok && worst_exp <= tolerance * std::max(1, 2 * deg),
              "d=" + std::to_string(deg) + ": max |doubling exponent - 2d| = " + fmt(worst_exp) + ", C = " + fmt(m.C));
  }
  auto cls = std::make_shared<const QuatRep>(rep_classical());
  const auto coarse = domain(R, R / 32);
  const LatticeField base = cli::smooth_field(coarse, cls, 0.8, kSeed, true);
  LatticeField scaled = base;
  const double s = 3.7;
  scaled.phi_data() *= s;
  scaled.set_eps(s * base.eps());
  const std::vector<double> r2{0.2, 0.4, 0.6, 0.8};
  const FrequencyProfile a = frequency_profile(base, Eigen::Vector3d(0.05, -0.05, 0.0), r2);
  const FrequencyProfile b = frequency_profile(scaled, Eigen::Vector3d(0.05, -0.05, 0.0), r2);
  double worst = 0.0;
  for (std::size_t k = 0; k < r2.size(); ++k) worst = std::max(worst, std::abs(a.N[k] - b.N[k]) / std::max(1.0, a.N[k]));
  c.require(worst <= 1e-10, "rescaling (s Phi, s eps): max |N change| = " + fmt(worst));
  return c;
}

Criterion weitzenbock() {
  Criterion c;
  auto cls = std::make_shared<const QuatRep>(rep_classical());
  const Spinor phi0 = Quat{0.5, -0.5, 0.5, 0.5}.coeffs();
  const ConvergenceStudy s = weitzenbock_convergence(
      cls, [&](const Eigen::Vector3d& x) { return Spinor(std::sin(x[0]) * phi0); }, 1.0, 0.125, 4);
  std::string orders;
  for (double o : s.orders) orders += " " + fmt(o);
  c.require(s.min_order() >= 1.9, "sin(x1) phi0 orders over three halvings:" + orders);
  auto rng = stream_rng(kSeed, 99);
  const Eigen::MatrixXd coef = random_normal(rng, 40).reshaped(4, 10);
  const LatticeField q = LatticeField::sample(domain(1.0, 0.125), cls, 1.0, [&](const Eigen::Vector3d& x) {
    Eigen::VectorXd mono(10);
    mono << 1, x[0], x[1], x[2], x[0] * x[0], x[1] * x[1], x[2] * x[2], x[0] * x[1], x[1] * x[2], x[0] * x[2];
    return Spinor(coef * mono);
  });
  const double defect = weitzenbock_defect(q);
  c.require(defect <= 1e-10, "random quadratic spinor defect " + fmt(defect));
  return c;
}

Criterion regularity_and_covering() {
  Criterion c;
  const double h = 1.0 / 32;
  const auto d = domain(1.0, h);
  const double cF = 0.1;
  const double r0 = 0.9;
  for (double dens : {0.5, 2.0, 50.0}) {
    const double closed = std::min(r0, std::pow(3 * cF / (4 * std::numbers::pi * dens), 0.25));
    const double got = regularity_scale(cli::constant_density(d, dens), cF, r0, Eigen::Vector3d::Zero());
    c.require(std::abs(got - closed) <= h / 2,
              "constant " + fmt(dens) + ": r_A = " + fmt(got) + " vs closed form " + fmt(closed));
  }
  const auto cd = domain(1.0, 1.0 / 12);
  const double delta = default_covering_delta();
  int consistent = 0;
  int holds = 0;
  for (std::uint64_t n = 0; n < 100; ++n) {
    const CoveringVerdict v = covering_check(cli::gaussian_mixture(cd, kSeed, n), delta, Eigen::Vector3d::Zero(), 1.0, {2});
    consistent += v.consistent();
    holds += v.hypothesis_holds;
  }
  c.require(consistent == 100, "mixtures: hypothesis => conclusion on " + std::to_string(consistent) +
                                   "/100 (hypothesis held on " + std::to_string(holds) + "), delta = 1/(16 N_c) = " +
                                   fmt(delta));
  const CoveringVerdict shell =
      covering_check(cli::shell_density(cd, 0.3, 0.055, 20.0), delta, Eigen::Vector3d::Zero(), 1.0);
  c.require(!shell.hypothesis_holds && shell.worst_pair.decay > delta,
            "shell density flagged: worst pair s = " + fmt(shell.worst_pair.s) + ", premise " +
                fmt(shell.worst_pair.premise) + ", decay " + fmt(shell.worst_pair.decay));
  return c;
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

Criterion determinism() {
  Criterion c;
  const std::string bin = SWMOMENT_CLI_PATH;
  const std::string grid = std::string(SWMOMENT_TEST_TMP) + "/acceptance_field.grid";
  const std::vector<std::string> runs = {
      "describe --rep adhm12 --seed 1",
      "identities --samples 500 --seed 2",
      "certify --rep su2-adjoint --samples 300 --multistarts 4 --seed 3",
      "certify --rep adhm12 --estimator sigma --samples 300 --multistarts 4 --seed 3",
      "certify --rep adhm12 --estimator min-mu --samples 300 --multistarts 4 --seed 3",
      "frequency --synthetic smooth --rep su2-adjoint --spacing 0.0625 --save-grid " + grid + " --seed 4",
      "frequency --grid " + grid + " --seed 4",
      "covering --synthetic mixture --spacing 0.125 --c-f 0.3 --seed 5",
      "residual --grid " + grid + " --seed 6",
  };
  static const std::regex ts(R"re("timestamp": ?"[^"]*")re");
  for (const auto& args : runs) {
    int s1 = 0;
    int s2 = 0;
    const std::string a = std::regex_replace(capture(bin + " " + args, s1), ts, "");
    const std::string b = std::regex_replace(capture(bin + " " + args, s2), ts, "");
    c.require(!a.empty() && a == b && s1 == s2, "swmoment " + args.substr(0, args.find(" --")) + " (" +
                                                    std::to_string(a.size()) + " bytes)");
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    Criterion (*run)();
  };
  const std::vector<Entry> entries = {
      {1, "identity suite on every built-in rep at 1e-8, 10^4 samples", identity_suite},
      {2, "cross-implementation oracles", cross_oracles},
      {3, "| |pi_t mu(Psi)| - |Psi|^2 / 2 | <= 1e-10 on unit Psi for k = 1, 2, 3", torus_projection},
      {4, "su(2) criterion finite and stable; su(3) failure search succeeds", su2_vs_su3},
      {5, "sigma_hat < 0.999, stable; c_split validated on 10^5 samples", sigma},
      {6, "inf |mu(Psi, xi)| > 0 for R = 0, 1, 10, stable", min_mu},
      {7, "frequency oracle on harmonic polynomials, rescaling invariance", frequency},
      {8, "Weitzenbock defect order >= 1.9, quadratics exact", weitzenbock},
      {9, "regularity scale closed form; covering checker", regularity_and_covering},
      {10, "CLI runs byte-stable modulo timestamp", determinism},
  };
  int failed = 0;
  for (const auto& e : entries) {
    Criterion c;
    try {
      c = e.run();
    } catch (const std::exception& ex) {
      c.require(false, std::string("exception: ") + ex.what());
    }
    failed += !c.pass;
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << e.id << ": " << e.title << '\n';
    for (const auto& n : c.notes) std::cout << "       " << n << '\n';
    std::cout.flush();
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion(s) failed") << '\n';
  return failed == 0 ? 0 : 1;
}
