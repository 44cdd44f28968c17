#include "swmoment/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swmoment/errors.hpp"
#include "swmoment/parallel.hpp"

namespace swm {

Domain::Domain(const Eigen::Vector3d& center, double radius, double spacing)
    : center_{center}, radius_{radius}, h_{spacing} {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw DomainError("Domain: spacing must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("Domain: radius must be positive");
  if (radius / spacing < 8.0 - 1e-9)
    throw DomainError("Domain: R/h = " + std::to_string(radius / spacing) + " is below the minimum of 8");
  half_ = static_cast<int>(std::ceil(radius / spacing - 1e-9)) + 2;
}

std::size_t Domain::size() const {
  const auto n = static_cast<std::size_t>(nodes_per_axis());
  return n * n * n;
}

std::size_t Domain::index(int i, int j, int k) const {
  const auto n = static_cast<std::size_t>(nodes_per_axis());
  return (static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n + static_cast<std::size_t>(k);
}

std::array<int, 3> Domain::ijk(std::size_t idx) const {
  const auto n = static_cast<std::size_t>(nodes_per_axis());
  return {static_cast<int>(idx / (n * n)), static_cast<int>((idx / n) % n), static_cast<int>(idx % n)};
}

Eigen::Vector3d Domain::position(int i, int j, int k) const {
  return center_ + h_ * Eigen::Vector3d(i - half_, j - half_, k - half_);
}

Eigen::Vector3d Domain::position(std::size_t idx) const {
  const auto c = ijk(idx);
  return position(c[0], c[1], c[2]);
}

bool Domain::contains(const Eigen::Vector3d& p) const {
  const Eigen::Vector3d q = (p - center_) / h_;
  return (q.array().abs() <= static_cast<double>(half_)).all();
}

Stencil trilinear_stencil(const Domain& d, const Eigen::Vector3d& p) {
  Stencil s;
  const Eigen::Vector3d q = (p - d.center()) / d.spacing() + Eigen::Vector3d::Constant(d.half());
  const int last = d.nodes_per_axis() - 1;
  std::array<int, 3> base{};
  std::array<double, 3> frac{};
  for (int a = 0; a < 3; ++a) {
    if (!(q[a] >= 0.0 && q[a] <= last)) return s;
    base[a] = std::min(static_cast<int>(std::floor(q[a])), last - 1);
    frac[a] = q[a] - base[a];
  }
  s.inside = true;
  for (int c = 0; c < 8; ++c) {
    const int di = (c >> 2) & 1;
    const int dj = (c >> 1) & 1;
    const int dk = c & 1;
    s.nodes[c] = d.index(base[0] + di, base[1] + dj, base[2] + dk);
    s.weights[c] = (di ? frac[0] : 1 - frac[0]) * (dj ? frac[1] : 1 - frac[1]) * (dk ? frac[2] : 1 - frac[2]);
  }
  return s;
}

ScalarField ScalarField::sample(std::shared_ptr<const Domain> d, const std::function<double(const Eigen::Vector3d&)>& f) {
  ScalarField s{d, Eigen::VectorXd(static_cast<Eigen::Index>(d->size()))};
  for (std::size_t i = 0; i < d->size(); ++i) s.values[static_cast<Eigen::Index>(i)] = f(d->position(i));
  return s;
}

double ScalarField::at(const Eigen::Vector3d& p) const {
  const Stencil s = trilinear_stencil(*domain, p);
  if (!s.inside) return 0.0;
  double v = 0.0;
  for (int c = 0; c < 8; ++c) v += s.weights[c] * values[static_cast<Eigen::Index>(s.nodes[c])];
  return v;
}

LatticeField::LatticeField(std::shared_ptr<const Domain> domain, std::shared_ptr<const QuatRep> rep, double eps)
    : domain_{std::move(domain)}, rep_{std::move(rep)}, eps_{eps} {
  if (!domain_ || !rep_) throw InvalidArgument("LatticeField: domain and rep are required");
  set_eps(eps);
  const auto n = static_cast<Eigen::Index>(domain_->size());
  phi_ = Eigen::MatrixXd::Zero(rep_->dim_S(), n);
  conn_ = Eigen::MatrixXd::Zero(3 * rep_->alg_dim(), n);
}

void LatticeField::set_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("LatticeField: eps must be positive");
  eps_ = eps;
  for (auto& g : grad_) g.resize(0, 0);
}

LatticeField LatticeField::sample(std::shared_ptr<const Domain> domain, std::shared_ptr<const QuatRep> rep, double eps,
                                  const SpinorFn& phi, const ConnectionFn& conn) {
  LatticeField f(std::move(domain), std::move(rep), eps);
  const int dim = f.rep().alg_dim();
  for (std::size_t i = 0; i < f.domain().size(); ++i) {
    const Eigen::Vector3d x = f.domain().position(i);
    const Spinor v = phi(x);
    f.rep().check_spinor(v, "LatticeField::sample");
    f.phi_.col(static_cast<Eigen::Index>(i)) = v;
    if (conn) {
      const MomentValue a = conn(x);
      f.rep().check_moment(a, "LatticeField::sample");
      for (int r = 0; r < 3; ++r)
        for (int b = 0; b < dim; ++b) f.conn_(r * dim + b, static_cast<Eigen::Index>(i)) = a(r, b);
    }
  }
  return f;
}

MomentValue LatticeField::connection(std::size_t node) const {
  const int dim = rep_->alg_dim();
  MomentValue a(3, dim);
  for (int r = 0; r < 3; ++r)
    for (int b = 0; b < dim; ++b) a(r, b) = conn_(r * dim + b, static_cast<Eigen::Index>(node));
  return a;
}

Spinor LatticeField::covariant_derivative(std::size_t node, int axis) const {
  if (grad_[axis].cols() == static_cast<Eigen::Index>(domain_->size()))
    return grad_[axis].col(static_cast<Eigen::Index>(node));
  auto c = domain_->ijk(node);
  const int last = domain_->nodes_per_axis() - 1;
  const double h = domain_->spacing();
  Spinor d;
  auto at = [&](int offset) {
    auto cc = c;
    cc[axis] += offset;
    return phi_.col(static_cast<Eigen::Index>(domain_->index(cc[0], cc[1], cc[2])));
  };
  if (c[axis] == 0)
    d = (at(1) - at(0)) / h;
  else if (c[axis] == last)
    d = (at(0) - at(-1)) / h;
  else
    d = (at(1) - at(-1)) / (2 * h);
  const int dim = rep_->alg_dim();
  for (int b = 0; b < dim; ++b) {
    const double ab = conn_(axis * dim + b, static_cast<Eigen::Index>(node));
    if (ab != 0.0) d += ab * (rep_->rho(b) * phi_.col(static_cast<Eigen::Index>(node)));
  }
  return d;
}

void LatticeField::precompute_gradients() {
  const auto n = static_cast<Eigen::Index>(domain_->size());
  std::array<Eigen::MatrixXd, 3> g;
  for (int a = 0; a < 3; ++a) g[a].resize(rep_->dim_S(), n);
  for (auto& x : grad_) x.resize(0, 0);
  parallel_for(n, [&](std::int64_t i) {
    for (int a = 0; a < 3; ++a) g[a].col(i) = covariant_derivative(static_cast<std::size_t>(i), a);
  });
  grad_ = std::move(g);
}

Spinor LatticeField::phi_at(const Eigen::Vector3d& p) const {
  const Stencil s = trilinear_stencil(*domain_, p);
  if (!s.inside) throw DomainError("LatticeField: point outside the grid");
  Spinor v = Spinor::Zero(rep_->dim_S());
  for (int c = 0; c < 8; ++c) v += s.weights[c] * phi_.col(static_cast<Eigen::Index>(s.nodes[c]));
  return v;
}

std::array<Spinor, 3> LatticeField::covariant_gradient_at(const Eigen::Vector3d& p) const {
  const Stencil s = trilinear_stencil(*domain_, p);
  if (!s.inside) throw DomainError("LatticeField: point outside the grid");
  std::array<Spinor, 3> g;
  for (int a = 0; a < 3; ++a) {
    g[a] = Spinor::Zero(rep_->dim_S());
    for (int c = 0; c < 8; ++c) g[a] += s.weights[c] * covariant_derivative(s.nodes[c], a);
  }
  return g;
}

double ball_integral(const ScalarField& f, const Eigen::Vector3d& y, double s, const Eigen::Vector3d& clip_center,
                     double clip_radius) {
  if (s <= 0.0) return 0.0;
  const Domain& d = *f.domain;
  const double h = d.spacing();
  const Eigen::Vector3d q = (y - d.center()) / h + Eigen::Vector3d::Constant(d.half());
  const int last = d.nodes_per_axis() - 1;
  const double reach = s / h + 0.5;
  int lo[3];
  int hi[3];
  for (int a = 0; a < 3; ++a) {
    lo[a] = std::max(0, static_cast<int>(std::ceil(q[a] - reach)));
    hi[a] = std::min(last, static_cast<int>(std::floor(q[a] + reach)));
    if (lo[a] > hi[a]) return 0.0;
  }
  const bool clip = clip_radius > 0.0;
  double sum = 0.0;
  for (int i = lo[0]; i <= hi[0]; ++i) {
    for (int j = lo[1]; j <= hi[1]; ++j) {
      for (int k = lo[2]; k <= hi[2]; ++k) {
        const double v = f.values[static_cast<Eigen::Index>(d.index(i, j, k))];
        if (v == 0.0) continue;
        const Eigen::Vector3d p = d.position(i, j, k);
        double w = std::clamp((s - (p - y).norm()) / h + 0.5, 0.0, 1.0);
        if (w == 0.0) continue;
        if (clip) w *= std::clamp((clip_radius - (p - clip_center).norm()) / h + 0.5, 0.0, 1.0);
        sum += w * v;
      }
    }
  }
  return sum * h * h * h;
}

}  // namespace swm
