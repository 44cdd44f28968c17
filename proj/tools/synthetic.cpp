#include "synthetic.hpp"

#include <cmath>
#include <random>

#include "swmoment/errors.hpp"
#include "swmoment/parallel.hpp"

namespace swm::cli {

LatticeField harmonic_field(std::shared_ptr<const Domain> d, int degree) {
  if (degree < 0 || degree > 3) throw InvalidArgument("harmonic_field: degree must be 0..3");
  auto rep = std::make_shared<const QuatRep>(rep_trivial());
  const Eigen::Vector3d c = d->center();
  return LatticeField::sample(d, rep, 1.0, [degree, c](const Eigen::Vector3d& p) {
    const Eigen::Vector3d q = p - c;
    const double x = q[0];
    const double y = q[1];
    Spinor s = Spinor::Zero(4);
    switch (degree) {
      case 0: s[0] = 1.0; break;
      case 1: s[0] = x; break;
      case 2: s[0] = x * x - y * y; break;
      default: s[0] = x * x * x - 3 * x * y * y; break;
    }
    return s;
  });
}

LatticeField smooth_field(std::shared_ptr<const Domain> d, std::shared_ptr<const QuatRep> rep, double eps,
                          std::uint64_t seed, bool with_connection) {
  auto rng = stream_rng(seed, 0);
  std::normal_distribution<double> n01;
  const int spin = rep->dim_S();
  const int conn = 3 * rep->alg_dim();
  const int rows = spin + conn;
  Eigen::MatrixXd wave(rows, 3);
  Eigen::VectorXd amp(rows);
  Eigen::VectorXd phase(rows);
  for (int r = 0; r < rows; ++r) {
    for (int a = 0; a < 3; ++a) wave(r, a) = n01(rng);
    amp[r] = n01(rng);
    phase[r] = n01(rng);
  }
  const double scale = 1.0 / d->radius();
  auto value = [&](int r, const Eigen::Vector3d& p) { return amp[r] * std::sin(scale * wave.row(r).dot(p) + phase[r]); };
  LatticeField::ConnectionFn cf = nullptr;
  if (with_connection && conn > 0)
    cf = [&, spin](const Eigen::Vector3d& p) {
      MomentValue a(3, rep->alg_dim());
      for (int i = 0; i < 3; ++i)
        for (int b = 0; b < rep->alg_dim(); ++b) a(i, b) = 0.3 * value(spin + i * rep->alg_dim() + b, p);
      return a;
    };
  return LatticeField::sample(
      d, rep, eps,
      [&](const Eigen::Vector3d& p) {
        Spinor s(spin);
        for (int r = 0; r < spin; ++r) s[r] = value(r, p);
        return s;
      },
      cf);
}

LatticeField cone_field(std::shared_ptr<const Domain> d, std::uint64_t seed) {
  auto rep = std::make_shared<const QuatRep>(rep_adjoint(su_basis(2)));
  auto rng = stream_rng(seed, 0);
  const Eigen::VectorXd v = random_unit(rng, 4);
  Spinor s = Spinor::Zero(12);
  s.head(4) = v;
  return LatticeField::sample(d, rep, 1.0, [s](const Eigen::Vector3d&) { return s; });
}

ScalarField constant_density(std::shared_ptr<const Domain> d, double value) {
  return ScalarField::sample(std::move(d), [value](const Eigen::Vector3d&) { return value; });
}

ScalarField gaussian_mixture(std::shared_ptr<const Domain> d, std::uint64_t seed, std::uint64_t index) {
  auto rng = stream_rng(seed, index);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  struct Bump {
    Eigen::Vector3d c;
    double a;
    double w;
  };
  std::vector<Bump> bumps;
  const double R = d->radius();
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d c = d->center() + 0.8 * R * std::cbrt(unit(rng)) * random_unit(rng, 3);
    bumps.push_back({c, std::pow(10.0, -6.0 + 9.0 * unit(rng)), R * (0.05 + 0.3 * unit(rng))});
  }
  return ScalarField::sample(std::move(d), [bumps](const Eigen::Vector3d& p) {
    double s = 0.0;
    for (const auto& b : bumps) s += b.a * std::exp(-(p - b.c).squaredNorm() / (b.w * b.w));
    return s;
  });
}

ScalarField shell_density(std::shared_ptr<const Domain> d, double radius, double width, double amplitude) {
  const Eigen::Vector3d c = d->center();
  return ScalarField::sample(std::move(d), [=](const Eigen::Vector3d& p) {
    const double t = ((p - c).norm() - radius) / width;
    return amplitude * std::exp(-t * t);
  });
}

}  // namespace swm::cli
