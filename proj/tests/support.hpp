#pragma once

#include <cmath>
#include <random>

#include <Eigen/Core>

#include "swmoment/parallel.hpp"
#include "swmoment/quat.hpp"
#include "swmoment/representation.hpp"

namespace swm::test {

inline Quat random_quat(std::mt19937_64& rng) {
  const Eigen::VectorXd v = random_normal(rng, 4);
  return {v[0], v[1], v[2], v[3]};
}

/// Rotation of Im H by p: column a holds p e_a conj(p) for unit p.
inline Eigen::Matrix3d rotation_of(const Quat& p) {
  Eigen::Matrix3d r;
  for (int a = 0; a < 3; ++a) {
    const Quat q = p * ImQuat::unit(a).to_quat() * p.conj();
    r.col(a) << q.x, q.y, q.z;
  }
  return r;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace swm::test
