#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "swmoment/errors.hpp"
#include "swmoment/quat.hpp"
#include "swmoment/representation.hpp"

namespace swm {

constexpr double kDefaultDeltaMu = 0.05;

/// xi = zeta + xi_hat with zeta the nearest rank-one point of su(2) (x) H.
struct ConeDecomposition {
  Spinor zeta;
  Spinor xi_hat;
  double distance = 0.0;
  /// |mu(xi)| <= delta_mu |xi|^2 for the delta_mu passed to cone_project.
  bool in_band = true;
  /// |xi_hat| |xi| / |mu(xi)|; zero when xi lies on the cone.
  double hat_ratio = 0.0;
};

/// 3 x 4 coefficient matrix of xi in su(2) (x) H (row b = component along tau_b).
Eigen::Matrix<double, 3, 4> su2_coefficient_matrix(const Spinor& xi);
Spinor su2_spinor(const Eigen::Matrix<double, 3, 4>& m);

/// Throws AmbiguousProjection when the top two singular values are within 1e-9 relative.
ConeDecomposition cone_project(const Spinor& xi, double delta_mu = kDefaultDeltaMu);

/// 4 (s1^2 s2^2 + s1^2 s3^2 + s2^2 s3^2) from the singular values of the coefficient matrix.
double su2_mu_norm_sq_from_singular_values(const Spinor& xi);

/// Orthonormal basis (columns) of the tangent space at zeta of the rank <= 1 cone in su(2) (x) H.
Eigen::MatrixXd cone_tangent_basis(const Spinor& zeta);

struct HaydysFactor {
  Coeffs tau;
  Quat nu;
};

/// xi = tau (x) nu with |tau| = 1 and the first nonzero coefficient of tau positive.
HaydysFactor haydys_decompose(const Spinor& xi, double tol = 1e-8);

/// |phi| |mu(phi)| / |Gamma_phi mu(phi)|; 0 when mu(phi) = 0. Throws DivisionByZero when
/// Gamma_phi mu(phi) vanishes (or overflows the ratio) while mu(phi) does not.
double criterion_ratio(const QuatRep& rep, const Spinor& phi);

/// -<mu(Psi), mu(xi)> / (|mu(Psi)| |mu(xi)|); 0 when either moment vanishes.
double moment_anticorrelation(const MomentValue& a, const MomentValue& b);

/// |mu(Psi, xi)|^2 / (<mu(Psi, xi), mu(Psi)> + |Gamma_xi mu(Psi, xi)|^2 / (|Psi|^2 + |xi|^2)) on the
/// ADHM(1,2) rep, with Psi and xi supported on the hom and adjoint blocks. Sets `denominator`.
double quadratic_ratio(const QuatRep& adhm, const Spinor& psi, const Spinor& xi, double* denominator = nullptr);

struct CertReport {
  std::string rep;
  std::string estimator;
  std::string constraint;
  double delta_mu = 0.0;
  int samples = 0;
  int multistarts = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;
  /// Concatenated full-rep spinors; layout given by witness_kind.
  Eigen::VectorXd witness;
  std::string witness_kind;
  std::vector<double> finals;
  double spread = 0.0;
  double stability_ratio = 1.0;
  std::int64_t feasible_samples = 0;
  bool converged = true;
  std::map<std::string, double> values;
  std::vector<CertReport> parts;
};

/// Thrown when the multistart spread exceeds 25%; carries the partial report.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, CertReport report) : Error(what), report_{std::move(report)} {}
  const CertReport& report() const { return report_; }

 private:
  CertReport report_;
};

constexpr double kMaxSpread = 0.25;

/// Re-evaluates the estimator objective at the report's witness without the search code path.
double reevaluate(const CertReport& r);

/// sup |phi| |mu(phi)| / |Gamma_phi mu(phi)| over {|phi| = 1, |mu(phi)| <= delta_mu}.
CertReport certify_criterion(const QuatRep& rep, double delta_mu, int samples, int multistarts, std::uint64_t seed);
CertReport certify_su2_criterion(double delta_mu, int samples, int multistarts, std::uint64_t seed);
/// One report per delta; later sweeps also start from the witness of the previous delta.
std::vector<CertReport> certify_su2_sweep(const std::vector<double>& deltas, int samples, int multistarts,
                                          std::uint64_t seed);

/// sup of -<mu(Psi), mu(xi)> / (|mu(Psi)| |mu(xi)|) over the interior and the boundary strata
/// {2 mu(zeta, xi_hat)}; values["c_split"] = sqrt(2 / (1 - sigma)) validated on 10^5 fresh samples.
CertReport estimate_sigma_adhm12(int samples, int multistarts, std::uint64_t seed);

/// inf |mu(Psi, xi)| over |Psi| = 1, |xi| <= R for R in {0, 1, 10}; one part per R.
CertReport min_mu_on_unit_psi(int samples, int multistarts, std::uint64_t seed);

/// sup of quadratic_ratio over |Psi|^2 + |xi|^2 = 1 with |mu(Psi, xi)| <= delta_mu;
/// values["negative_denominators"] counts counterexample candidates.
CertReport certify_quadratic_estimate(double delta_mu, int samples, int multistarts, std::uint64_t seed);

/// Searches g (x) H near the cone for large criterion ratios. values["threshold"] is the
/// success threshold, values["succeeded"] is 1 when it is exceeded or a zero-denominator
/// witness is found.
CertReport failure_search(const LieAlg& alg, double threshold, int samples, int multistarts, std::uint64_t seed,
                          double delta_mu = kDefaultDeltaMu);
CertReport su3_failure_search(double threshold, int samples, int multistarts, std::uint64_t seed);

/// Point xi = h (x) v + eps eta of su(3) (x) H with h the lambda_8 direction and eta in the
/// su(2) subalgebra: mu(xi) = eps^2 mu(eta) while Gamma_xi mu(xi) = O(eps^3).
Spinor su3_commuting_point(const Eigen::Vector4d& v, const Eigen::Matrix<double, 3, 4>& eta, double eps);

}  // namespace swm
