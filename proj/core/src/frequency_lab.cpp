#include "swmoment/frequency_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "swmoment/errors.hpp"
#include "swmoment/parallel.hpp"
#include "swmoment/quadrature.hpp"

namespace swm {

namespace {

bool is_interior(const Domain& d, std::size_t node, int margin) {
  const auto c = d.ijk(node);
  const int last = d.nodes_per_axis() - 1;
  for (int a = 0; a < 3; ++a)
    if (c[a] < margin || c[a] > last - margin) return false;
  return true;
}

std::size_t shifted(const Domain& d, std::size_t node, int axis, int by) {
  auto c = d.ijk(node);
  c[axis] += by;
  return d.index(c[0], c[1], c[2]);
}

// Central difference of the connection coefficients A_k along axis j.
Coeffs connection_derivative(const LatticeField& f, std::size_t node, int j, int k) {
  const int dim = f.rep().alg_dim();
  const Domain& d = f.domain();
  const auto up = static_cast<Eigen::Index>(shifted(d, node, j, 1));
  const auto down = static_cast<Eigen::Index>(shifted(d, node, j, -1));
  return (f.connection_data().col(up).segment(k * dim, dim) - f.connection_data().col(down).segment(k * dim, dim)) /
         (2 * d.spacing());
}

void require_interior(const LatticeField& f, std::size_t node, const char* who) {
  if (!is_interior(f.domain(), node, 1)) throw DomainError(std::string(who) + ": node has no central stencil");
}

// Coefficients of the H-component q of an adjoint-rep spinor, one entry per basis element.
Coeffs component(const Spinor& s, int q, int dim) {
  Coeffs c(dim);
  for (int b = 0; b < dim; ++b) c[b] = s[4 * b + q];
  return c;
}

std::shared_ptr<const Domain> make_domain(double radius, double h) {
  return std::make_shared<const Domain>(Eigen::Vector3d::Zero(), radius, h);
}

template <class F>
double sup_over_half_ball(const Domain& d, F&& value) {
  const double lim = 0.5 * d.radius();
  std::vector<double> vals(d.size(), 0.0);
  parallel_for(static_cast<std::int64_t>(d.size()), [&](std::int64_t i) {
    const auto node = static_cast<std::size_t>(i);
    if ((d.position(node) - d.center()).norm() <= lim + 1e-12) vals[node] = value(node);
  });
  return *std::max_element(vals.begin(), vals.end());
}

}  // namespace

Spinor discrete_dirac(const LatticeField& f, std::size_t node) {
  require_interior(f, node, "discrete_dirac");
  Spinor out = Spinor::Zero(f.rep().dim_S());
  for (int i = 0; i < 3; ++i) out += f.rep().gamma_op(i) * f.covariant_derivative(node, i);
  return out;
}

MomentValue discrete_curvature(const LatticeField& f, std::size_t node) {
  require_interior(f, node, "discrete_curvature");
  const LieAlg& g = f.rep().alg();
  const int dim = g.dim();
  const MomentValue a = f.connection(node);
  MomentValue out(3, dim);
  for (int row = 0; row < 3; ++row) {
    const int j = (row + 1) % 3;
    const int k = (row + 2) % 3;
    const Coeffs fjk = connection_derivative(f, node, j, k) - connection_derivative(f, node, k, j) +
                       g.bracket(a.row(j).transpose(), a.row(k).transpose());
    out.row(row) = fjk.transpose();
  }
  return out;
}

SwResidual residual_sw(const LatticeField& f) {
  const Domain& d = f.domain();
  if (d.nodes_per_axis() < 3) throw DomainError("residual_sw: domain too small for the stencil");
  SwResidual r{{f.domain_ptr(), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d.size()))},
               {f.domain_ptr(), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d.size()))}};
  const double e2 = f.eps() * f.eps();
  parallel_for(static_cast<std::int64_t>(d.size()), [&](std::int64_t i) {
    const auto node = static_cast<std::size_t>(i);
    if (!is_interior(d, node, 1)) return;
    r.dirac.values[i] = discrete_dirac(f, node).norm();
    if (f.rep().alg_dim() > 0)
      r.curvature.values[i] = (e2 * discrete_curvature(f, node) - moment(f.rep(), f.phi(node))).norm();
  });
  const int inner = d.nodes_per_axis() - 2;
  r.interior_nodes = static_cast<std::size_t>(inner) * inner * inner;
  r.dirac_max = r.dirac.values.maxCoeff();
  r.curvature_max = r.curvature.values.maxCoeff();
  return r;
}

FlatGcResidual residual_flat_gc(const LatticeField& f) {
  const QuatRep& rep = f.rep();
  const auto& blk = rep.adjoint_block();
  if (!blk || blk->offset != 0 || 4 * blk->count != rep.dim_S())
    throw InvalidArgument("residual_flat_gc: needs an adjoint representation, got " + rep.name());
  const Domain& d = f.domain();
  if (d.nodes_per_axis() < 3) throw DomainError("residual_flat_gc: domain too small for the stencil");
  const LieAlg& g = rep.alg();
  const int dim = g.dim();
  const double h = d.spacing();
  std::vector<std::array<double, 3>> vals(d.size(), {0.0, 0.0, 0.0});
  parallel_for(static_cast<std::int64_t>(d.size()), [&](std::int64_t i) {
    const auto node = static_cast<std::size_t>(i);
    if (!is_interior(d, node, 1)) return;
    const MomentValue A = f.connection(node);
    const Spinor here = f.phi(node);
    // nabla_j X = d_j X + [A_j, X] for the component q of the spinor
    auto nabla = [&](int j, int q) {
      const Coeffs up = component(f.phi(shifted(d, node, j, 1)), q, dim);
      const Coeffs down = component(f.phi(shifted(d, node, j, -1)), q, dim);
      return Coeffs((up - down) / (2 * h) + g.bracket(A.row(j).transpose(), component(here, q, dim)));
    };
    const Coeffs xi = component(here, 0, dim);
    Coeffs div = Coeffs::Zero(dim);
    for (int j = 0; j < 3; ++j) div -= nabla(j, j + 1);
    double curl2 = 0.0;
    double curv2 = 0.0;
    const MomentValue F = discrete_curvature(f, node);
    for (int row = 0; row < 3; ++row) {
      const int j = (row + 1) % 3;
      const int k = (row + 2) % 3;
      const Coeffs c = nabla(j, k + 1) - nabla(k, j + 1) + nabla(row, 0);
      curl2 += c.squaredNorm();
      const Coeffs r = F.row(row).transpose() - g.bracket(component(here, j + 1, dim), component(here, k + 1, dim)) -
                       g.bracket(xi, component(here, row + 1, dim));
      curv2 += r.squaredNorm();
    }
    vals[node] = {div.norm(), std::sqrt(curl2), std::sqrt(curv2)};
  });
  FlatGcResidual out;
  for (const auto& v : vals) {
    out.divergence_max = std::max(out.divergence_max, v[0]);
    out.curl_max = std::max(out.curl_max, v[1]);
    out.curvature_max = std::max(out.curvature_max, v[2]);
  }
  const int inner = d.nodes_per_axis() - 2;
  out.interior_nodes = static_cast<std::size_t>(inner) * inner * inner;
  return out;
}

double weitzenbock_defect(const LatticeField& f) {
  if (f.has_connection()) throw InvalidArgument("weitzenbock_defect: the connection must vanish");
  const Domain& d = f.domain();
  const double h = d.spacing();
  const QuatRep& rep = f.rep();
  return sup_over_half_ball(d, [&](std::size_t node) {
    const Spinor c = f.phi(node);
    Spinor lap = Spinor::Zero(rep.dim_S());
    Spinor dd = Spinor::Zero(rep.dim_S());
    for (int i = 0; i < 3; ++i) {
      lap += (f.phi(shifted(d, node, i, 1)) - 2 * c + f.phi(shifted(d, node, i, -1))) / (h * h);
      for (int j = 0; j < 3; ++j) {
        const std::size_t pp = shifted(d, shifted(d, node, i, 1), j, 1);
        const std::size_t pm = shifted(d, shifted(d, node, i, 1), j, -1);
        const std::size_t mp = shifted(d, shifted(d, node, i, -1), j, 1);
        const std::size_t mm = shifted(d, shifted(d, node, i, -1), j, -1);
        const Spinor dij = (f.phi(pp) - f.phi(pm) - f.phi(mp) + f.phi(mm)) / (4 * h * h);
        dd += rep.gamma_op(i) * (rep.gamma_op(j) * dij);
      }
    }
    // nabla^* nabla = -Laplacian for the product connection
    return (dd + lap).norm();
  });
}

double ConvergenceStudy::min_order() const {
  if (orders.empty()) return std::numeric_limits<double>::quiet_NaN();
  return *std::min_element(orders.begin(), orders.end());
}

namespace {

void fill_orders(ConvergenceStudy& s) {
  for (std::size_t k = 0; k + 1 < s.errors.size(); ++k) s.orders.push_back(std::log2(s.errors[k] / s.errors[k + 1]));
}

}  // namespace

ConvergenceStudy weitzenbock_convergence(std::shared_ptr<const QuatRep> rep, const LatticeField::SpinorFn& phi,
                                         double radius, double coarse_spacing, int levels) {
  ConvergenceStudy s;
  double h = coarse_spacing;
  for (int l = 0; l < levels; ++l, h *= 0.5) {
    const LatticeField f = LatticeField::sample(make_domain(radius, h), rep, 1.0, phi);
    s.spacings.push_back(h);
    s.errors.push_back(weitzenbock_defect(f));
  }
  fill_orders(s);
  return s;
}

ConvergenceStudy dirac_convergence(std::shared_ptr<const QuatRep> rep, const LatticeField::SpinorFn& phi,
                                   const LatticeField::SpinorFn& exact_dirac, double radius, double coarse_spacing,
                                   int levels) {
  ConvergenceStudy s;
  double h = coarse_spacing;
  for (int l = 0; l < levels; ++l, h *= 0.5) {
    const LatticeField f = LatticeField::sample(make_domain(radius, h), rep, 1.0, phi);
    s.spacings.push_back(h);
    s.errors.push_back(sup_over_half_ball(f.domain(), [&](std::size_t node) {
      return (discrete_dirac(f, node) - exact_dirac(f.domain().position(node))).norm();
    }));
  }
  fill_orders(s);
  return s;
}

FrequencyProfile frequency_profile(const LatticeField& f, const Eigen::Vector3d& x, const std::vector<double>& radii) {
  const Domain& d = f.domain();
  const double h = d.spacing();
  const double reach = d.radius() - 2 * h - (x - d.center()).norm();
  for (double r : radii)
    if (!(r > 4 * h) || r > reach + 1e-12)
      throw DomainError("frequency_profile: radius " + std::to_string(r) + " outside (" + std::to_string(4 * h) +
                        ", " + std::to_string(reach) + "]");
  const SphereRule& rule = d.radius() / h >= 32.0 - 1e-9 ? lebedev74() : lebedev26();
  const int radial = 12;
  const bool has_mu = f.rep().alg_dim() > 0;
  const double inv_e2 = 1.0 / (f.eps() * f.eps());

  auto sphere_average = [&](double rho, auto&& g) {
    double s = 0.0;
    for (std::size_t p = 0; p < rule.points.size(); ++p) s += rule.weights[p] * g(Eigen::Vector3d(x + rho * rule.points[p]));
    return s;
  };
  auto energy = [&](const Eigen::Vector3d& p) {
    const auto grad = f.covariant_gradient_at(p);
    double e = grad[0].squaredNorm() + grad[1].squaredNorm() + grad[2].squaredNorm();
    if (has_mu) e += 2.0 * inv_e2 * moment(f.rep(), f.phi_at(p)).squaredNorm();
    return e;
  };

  FrequencyProfile out;
  out.center = x;
  out.radii = radii;
  out.sphere_rule = rule.name;
  out.radial_nodes = radial;
  const std::size_t n = radii.size();
  out.m.assign(n, 0.0);
  out.D.assign(n, 0.0);
  out.N.assign(n, std::numeric_limits<double>::quiet_NaN());
  out.defined.assign(n, false);
  parallel_for(static_cast<std::int64_t>(n), [&](std::int64_t k) {
    const double r = radii[k];
    out.m[k] = sphere_average(r, [&](const Eigen::Vector3d& p) { return f.phi_at(p).squaredNorm(); });
    // (1 / 4 pi r) int_{B_r} g = (1 / r) int_0^r rho^2 avg_{S^2} g(rho) d rho
    const LineRule gl = gauss_legendre(radial, 0.0, r);
    double acc = 0.0;
    for (int q = 0; q < radial; ++q) acc += gl.weights[q] * gl.nodes[q] * gl.nodes[q] * sphere_average(gl.nodes[q], energy);
    out.D[k] = std::max(0.0, acc / r);
  });
  for (std::size_t k = 0; k < n; ++k) {
    if (out.m[k] > 0.0) {
      out.N[k] = out.D[k] / out.m[k];
      out.defined[k] = true;
    }
  }
  return out;
}

MonotonicityReport monotonicity_report(const FrequencyProfile& p, double tolerance) {
  const std::size_t n = p.radii.size();
  if (n < 4) throw InvalidArgument("monotonicity_report: needs at least 4 radii");
  for (std::size_t k = 0; k < n; ++k) {
    if (!p.defined[k]) throw InvalidArgument("monotonicity_report: N undefined at r = " + std::to_string(p.radii[k]));
    if (k > 0 && !(p.radii[k] > p.radii[k - 1])) throw InvalidArgument("monotonicity_report: radii must increase");
  }
  MonotonicityReport rep;
  rep.tolerance = tolerance;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const double r2 = p.radii[b] * p.radii[b];
      rep.C = std::max(rep.C, (p.N[a] - p.N[b]) / (r2 * (p.N[b] + 1.0)));
    }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      MonotonicityPair q;
      q.s = p.radii[a];
      q.r = p.radii[b];
      q.n_s = p.N[a];
      q.n_r = p.N[b];
      const double cr2 = rep.C * q.r * q.r;
      q.frequency_ok = q.n_s <= (1 + cr2) * q.n_r + cr2 + 1e-12;
      const double tol = tolerance * std::max(1.0, 2 * q.n_r);
      if (p.m[a] > 0.0 && p.m[b] > 0.0) q.exponent = std::log(p.m[b] / p.m[a]) / std::log(q.r / q.s);
      q.lower = 2 * q.n_s - cr2 - tol;
      q.upper = 2 * q.n_r + cr2 + tol;
      q.exponent_ok = q.exponent >= q.lower && q.exponent <= q.upper;
      rep.all_ok = rep.all_ok && q.frequency_ok && q.exponent_ok;
      rep.pairs.push_back(q);
    }
  }
  return rep;
}

double regularity_scale(const ScalarField& density, double c_F, double r0, const Eigen::Vector3d& x) {
  if (!(c_F > 0.0)) throw InvalidArgument("regularity_scale: c_F must be positive");
  if (!(r0 > 0.0)) throw InvalidArgument("regularity_scale: r0 must be positive");
  const double step = 0.5 * density.domain->spacing();
  std::vector<double> radii;
  for (int k = 0; k * step < r0; ++k) radii.push_back(k * step);
  radii.push_back(r0);
  auto ok = [&](double r) { return r * ball_integral(density, x, r) <= c_F; };
  if (ok(radii.back())) return r0;
  // r = 0 always satisfies the constraint; the scaled integral is nondecreasing in r.
  std::size_t lo = 0;
  std::size_t hi = radii.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (ok(radii[mid]) ? lo : hi) = mid;
  }
  double a = radii[lo];
  double b = radii[hi];
  while (b - a > 1e-3 * step) {
    const double mid = 0.5 * (a + b);
    (ok(mid) ? a : b) = mid;
  }
  return a;
}

}  // namespace swm
