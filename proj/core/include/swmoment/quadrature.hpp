#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace swm {

/// Quadrature on the unit sphere; weights sum to 1, so it computes the sphere average.
struct SphereRule {
  std::string name;
  int degree = 0;
  std::vector<Eigen::Vector3d> points;
  std::vector<double> weights;
};

/// Lebedev rules: 26 points (exact to degree 7) and 74 points (degree 13).
const SphereRule& lebedev26();
const SphereRule& lebedev74();

struct LineRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b].
LineRule gauss_legendre(int n, double a, double b);

}  // namespace swm
