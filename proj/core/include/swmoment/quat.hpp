#pragma once

#include <cmath>

#include <Eigen/Core>

namespace swm {

/// Quaternion w + x i + y j + z k.
struct Quat {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quat() = default;
  constexpr Quat(double w_, double x_, double y_, double z_) : w{w_}, x{x_}, y{y_}, z{z_} {}

  static constexpr Quat one() { return {1, 0, 0, 0}; }
  static constexpr Quat i() { return {0, 1, 0, 0}; }
  static constexpr Quat j() { return {0, 0, 1, 0}; }
  static constexpr Quat k() { return {0, 0, 0, 1}; }

  constexpr bool operator==(const Quat&) const = default;

  constexpr Quat operator+(const Quat& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
  constexpr Quat operator-(const Quat& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
  constexpr Quat operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quat operator*(double s) const { return {w * s, x * s, y * s, z * s}; }

  // Hamilton product
  constexpr Quat operator*(const Quat& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }

  constexpr Quat conj() const { return {w, -x, -y, -z}; }
  constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm_sq()); }

  Eigen::Vector4d coeffs() const { return {w, x, y, z}; }
  static Quat from_coeffs(const Eigen::Ref<const Eigen::Vector4d>& c) { return {c[0], c[1], c[2], c[3]}; }
};

constexpr Quat quat_mul(const Quat& a, const Quat& b) { return a * b; }

/// Purely imaginary quaternion x i + y j + z k.
struct ImQuat {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr bool operator==(const ImQuat&) const = default;
  constexpr Quat to_quat() const { return {0.0, x, y, z}; }
  constexpr double operator[](int a) const { return a == 0 ? x : (a == 1 ? y : z); }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }

  static constexpr ImQuat unit(int a) {
    return a == 0 ? ImQuat{1, 0, 0} : (a == 1 ? ImQuat{0, 1, 0} : ImQuat{0, 0, 1});
  }
};

/// Real 4x4 matrix of q -> p q in the (1, i, j, k) basis.
inline Eigen::Matrix4d left_mult_matrix(const Quat& p) {
  Eigen::Matrix4d m;
  const Quat basis[4] = {Quat::one(), Quat::i(), Quat::j(), Quat::k()};
  for (int c = 0; c < 4; ++c) m.col(c) = (p * basis[c]).coeffs();
  return m;
}

/// Real 4x4 matrix of q -> q p.
inline Eigen::Matrix4d right_mult_matrix(const Quat& p) {
  Eigen::Matrix4d m;
  const Quat basis[4] = {Quat::one(), Quat::i(), Quat::j(), Quat::k()};
  for (int c = 0; c < 4; ++c) m.col(c) = (basis[c] * p).coeffs();
  return m;
}

}  // namespace swm
