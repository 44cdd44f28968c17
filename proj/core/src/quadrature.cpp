#include "swmoment/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "swmoment/errors.hpp"

namespace swm {

namespace {

// Octahedral orbits of the generators used by the Lebedev rules.
void add_axes(SphereRule& r, double w) {
  for (int a = 0; a < 3; ++a)
    for (double s : {1.0, -1.0}) {
      Eigen::Vector3d p = Eigen::Vector3d::Zero();
      p[a] = s;
      r.points.push_back(p);
      r.weights.push_back(w);
    }
}

void add_edges(SphereRule& r, double w) {
  const double c = 1.0 / std::sqrt(2.0);
  for (int zero = 0; zero < 3; ++zero)
    for (double s1 : {1.0, -1.0})
      for (double s2 : {1.0, -1.0}) {
        Eigen::Vector3d p;
        p[zero] = 0.0;
        p[(zero + 1) % 3] = s1 * c;
        p[(zero + 2) % 3] = s2 * c;
        r.points.push_back(p);
        r.weights.push_back(w);
      }
}

void add_corners(SphereRule& r, double w) {
  const double c = 1.0 / std::sqrt(3.0);
  for (double s1 : {1.0, -1.0})
    for (double s2 : {1.0, -1.0})
      for (double s3 : {1.0, -1.0}) {
        r.points.emplace_back(s1 * c, s2 * c, s3 * c);
        r.weights.push_back(w);
      }
}

// (a, a, b) with b = sqrt(1 - 2 a^2): 24 points.
void add_aab(SphereRule& r, double a, double w) {
  const double b = std::sqrt(1.0 - 2.0 * a * a);
  for (int odd = 0; odd < 3; ++odd)
    for (double s1 : {1.0, -1.0})
      for (double s2 : {1.0, -1.0})
        for (double s3 : {1.0, -1.0}) {
          Eigen::Vector3d p;
          p[odd] = s1 * b;
          p[(odd + 1) % 3] = s2 * a;
          p[(odd + 2) % 3] = s3 * a;
          r.points.push_back(p);
          r.weights.push_back(w);
        }
}

// (a, b, 0) with b = sqrt(1 - a^2) and all placements/signs: 24 points.
void add_ab0(SphereRule& r, double a, double w) {
  const double b = std::sqrt(1.0 - a * a);
  for (int zero = 0; zero < 3; ++zero)
    for (int swap = 0; swap < 2; ++swap)
      for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) {
          Eigen::Vector3d p;
          p[zero] = 0.0;
          p[(zero + 1) % 3] = s1 * (swap ? b : a);
          p[(zero + 2) % 3] = s2 * (swap ? a : b);
          r.points.push_back(p);
          r.weights.push_back(w);
        }
}

}  // namespace

const SphereRule& lebedev26() {
  static const SphereRule rule = [] {
    SphereRule r{"lebedev-26", 7, {}, {}};
    add_axes(r, 1.0 / 21.0);
    add_edges(r, 4.0 / 105.0);
    add_corners(r, 9.0 / 280.0);
    return r;
  }();
  return rule;
}

const SphereRule& lebedev74() {
  static const SphereRule rule = [] {
    SphereRule r{"lebedev-74", 13, {}, {}};
    add_axes(r, 0.5130671797338464e-3);
    add_edges(r, 0.1660406956574204e-1);
    add_corners(r, -0.2958603896103896e-1);
    add_aab(r, 0.4803844614152614, 0.2657620708215946e-1);
    add_ab0(r, 0.3207726489807764, 0.1652217099371571e-1);
    return r;
  }();
  return rule;
}

LineRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw InvalidArgument("gauss_legendre: n must be >= 1");
  LineRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[i] = 0.5 * (a + b) + 0.5 * (b - a) * x;
    r.weights[i] = (b - a) / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

}  // namespace swm
