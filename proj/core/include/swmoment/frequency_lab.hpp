#pragma once

#include <string>
#include <vector>

#include "swmoment/lattice.hpp"

namespace swm {

/// Pointwise residual norms; nodes on the outer layer (no central stencil) hold 0.
struct SwResidual {
  ScalarField dirac;
  ScalarField curvature;
  double dirac_max = 0.0;
  double curvature_max = 0.0;
  std::size_t interior_nodes = 0;
};

/// Central-difference Dirac operator sum_i gamma(e_i) (d_i + rho(A_i)) Phi at an interior node.
Spinor discrete_dirac(const LatticeField& f, std::size_t node);
/// F_jk = d_j A_k - d_k A_j + [A_j, A_k] as a moment value via e_1 <-> dx_2 ^ dx_3 (cyclic).
MomentValue discrete_curvature(const LatticeField& f, std::size_t node);

/// |D_A Phi| and |eps^2 F_A - mu(Phi)| on interior nodes.
SwResidual residual_sw(const LatticeField& f);

struct FlatGcResidual {
  double divergence_max = 0.0;  // d_A^* a
  double curl_max = 0.0;        // *d_A a + d_A xi
  double curvature_max = 0.0;   // F_A - 1/2 [a ^ a] - *[xi, a]
  std::size_t interior_nodes = 0;
};

/// Reads xi = real part and a = (i, j, k) parts of the adjoint-rep spinor and evaluates
/// the three flat G^C equations on interior nodes.
FlatGcResidual residual_flat_gc(const LatticeField& f);

/// A = 0: sup over nodes of B_{R/2} of |D^2 Phi - nabla^* nabla Phi| with both sides
/// built from central differences.
double weitzenbock_defect(const LatticeField& f);

struct ConvergenceStudy {
  std::vector<double> spacings;
  std::vector<double> errors;
  std::vector<double> orders;  // log2(e_k / e_{k+1})
  double min_order() const;
};

/// Weitzenbock defect of a sampled spinor over h, h/2, ..., halving `levels - 1` times.
ConvergenceStudy weitzenbock_convergence(std::shared_ptr<const QuatRep> rep, const LatticeField::SpinorFn& phi,
                                         double radius, double coarse_spacing, int levels);

/// Max over nodes of B_{R/2} of |discrete Dirac - exact Dirac| for A = 0.
ConvergenceStudy dirac_convergence(std::shared_ptr<const QuatRep> rep, const LatticeField::SpinorFn& phi,
                                   const LatticeField::SpinorFn& exact_dirac, double radius, double coarse_spacing,
                                   int levels);

struct FrequencyProfile {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  std::vector<double> radii;
  std::vector<double> m;
  std::vector<double> D;
  std::vector<double> N;        // NaN where m = 0
  std::vector<bool> defined;
  std::string sphere_rule;
  int radial_nodes = 0;
};

/// m(r) = sphere average of |Phi|^2, D(r) = (1 / 4 pi r) int_{B_r} |nabla_A Phi|^2 + 2 eps^-2 |mu(Phi)|^2,
/// N = D / m. Sphere rule: Lebedev 26, or 74 when R / h >= 32; the ball integral uses
/// Gauss-Legendre shells. Radii must lie in (4h, R - 2h - |x - center|].
FrequencyProfile frequency_profile(const LatticeField& f, const Eigen::Vector3d& x, const std::vector<double>& radii);

struct MonotonicityPair {
  double s = 0.0;
  double r = 0.0;
  double n_s = 0.0;
  double n_r = 0.0;
  double exponent = 0.0;  // log(m(r) / m(s)) / log(r / s)
  double lower = 0.0;     // 2 N(s) - C r^2 - tolerance
  double upper = 0.0;     // 2 N(r) + C r^2 + tolerance
  bool frequency_ok = true;
  bool exponent_ok = true;
};

struct MonotonicityReport {
  /// Smallest C >= 0 with N(s) <= (1 + C r^2) N(r) + C r^2 for all pairs s < r.
  double C = 0.0;
  double tolerance = 0.0;
  std::vector<MonotonicityPair> pairs;
  bool all_ok = true;
};

MonotonicityReport monotonicity_report(const FrequencyProfile& p, double tolerance = 0.05);

/// Largest radius in [0, r0] with r int_{B_r(x)} density <= c_F: bisection over the grid
/// k h / 2, then refined to h / 2000 inside the bracketing cell.
double regularity_scale(const ScalarField& density, double c_F, double r0, const Eigen::Vector3d& x);

}  // namespace swm
