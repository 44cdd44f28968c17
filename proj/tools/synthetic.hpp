#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "swmoment/lattice.hpp"

namespace swm::cli {

/// Homogeneous harmonic polynomial of degree 0..3 on the trivial rep: 1, x, x^2 - y^2,
/// x^3 - 3 x y^2.
LatticeField harmonic_field(std::shared_ptr<const Domain> d, int degree);

/// Seeded smooth non-solution: trigonometric spinor and connection coefficients.
LatticeField smooth_field(std::shared_ptr<const Domain> d, std::shared_ptr<const QuatRep> rep, double eps,
                          std::uint64_t seed, bool with_connection);

/// Constant rank-one su(2) (x) H spinor tau_0 (x) v with A = 0; mu vanishes identically.
LatticeField cone_field(std::shared_ptr<const Domain> d, std::uint64_t seed);

ScalarField constant_density(std::shared_ptr<const Domain> d, double value);
/// Sum of three Gaussians with centers in the ball, amplitudes log-uniform in [1e-6, 1e3]
/// and widths in [0.05, 0.35] R.
ScalarField gaussian_mixture(std::shared_ptr<const Domain> d, std::uint64_t seed, std::uint64_t index = 0);
/// amplitude exp(-((|p - c| - radius) / width)^2): a thin shell around the center.
ScalarField shell_density(std::shared_ptr<const Domain> d, double radius, double width, double amplitude);

}  // namespace swm::cli
