#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "swmoment/lattice.hpp"

namespace swm {

/// Number of balls of radius 1/8 a greedy scan places to cover the unit ball, sampled on a
/// cubic grid of the given points per unit length. Scale invariant, so it bounds covers of
/// B_rho by balls of radius rho / 8.
int covering_number(int resolution = 24);

/// Integrals over B_{k step}(y), k = 0..count, with the same nodal ramp weights as
/// ball_integral (optionally intersected with B_clip_radius(clip_center)).
std::vector<double> ball_integral_profile(const ScalarField& f, const Eigen::Vector3d& y, double step, int count,
                                          const Eigen::Vector3d& clip_center = Eigen::Vector3d::Zero(),
                                          double clip_radius = 0.0);

/// r_f(y) = sup{s >= 0 : s int_{B_s(y) cap B_r(x)} f <= 1} on the radius grid k h / 2 up to 2r.
/// Beyond 2r the ball contains B_r(x) and the sup is 1 / int_{B_r(x)} f in closed form
/// (infinity when f vanishes on B_r(x)).
double regularity_radius(const ScalarField& f, const Eigen::Vector3d& x, double r, const Eigen::Vector3d& y);

/// r_f on every node of the domain inside B_r(x); nodes outside hold 0.
ScalarField regularity_radius_field(const ScalarField& f, const Eigen::Vector3d& x, double r);

struct CoveringPair {
  Eigen::Vector3d y = Eigen::Vector3d::Zero();
  double s = 0.0;
  double premise = 0.0;  // s int_{B_s(y)} f
  double decay = 0.0;    // (s / 4) int_{B_{s/4}(y)} f
};

struct CoveringVerdict {
  double delta = 0.0;
  bool hypothesis_holds = true;
  bool conclusion_holds = true;
  double conclusion_value = 0.0;  // (r / 2) int_{B_{r/2}(x)} f
  /// Among pairs with premise <= 1, the one with the largest decay; a violator whenever
  /// the hypothesis fails.
  CoveringPair worst_pair;
  std::size_t pairs_tested = 0;
  std::size_t premise_true = 0;
  std::size_t violations = 0;
  /// hypothesis implies conclusion
  bool consistent() const { return !hypothesis_holds || conclusion_holds; }
};

struct CoveringOptions {
  int center_stride = 1;  // test every stride-th node along each axis as y
};

/// Scans y over nodes of B_r(x) and s over multiples of h with B_s(y) inside B_r(x), tests
/// s int_{B_s(y)} f <= 1 => (s/4) int_{B_{s/4}(y)} f <= delta, and evaluates the conclusion
/// (r/2) int_{B_{r/2}(x)} f <= 1.
CoveringVerdict covering_check(const ScalarField& f, double delta, const Eigen::Vector3d& x, double r,
                               const CoveringOptions& opts = {});

/// The decay threshold admits two readings: delta = 1 / (16 N_c) and delta = N_c / 16.
struct CoveringReadings {
  int covering_number = 0;
  CoveringVerdict reciprocal;  // delta = 1 / (16 N_c), the default
  CoveringVerdict literal;     // delta = N_c / 16
};

double default_covering_delta();
CoveringReadings covering_check_readings(const ScalarField& f, const Eigen::Vector3d& x, double r,
                                         const CoveringOptions& opts = {});

}  // namespace swm
