#include "swmoment/ascent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "swmoment/errors.hpp"
#include "swmoment/parallel.hpp"

namespace swm {

Eigen::VectorXd retract(const std::vector<int>& factors, Eigen::VectorXd x) {
  int off = 0;
  for (int n : factors) {
    auto seg = x.segment(off, n);
    const double norm = seg.norm();
    if (norm > 0.0) seg /= norm;
    off += n;
  }
  return x;
}

namespace {

Eigen::VectorXd tangent(const std::vector<int>& factors, const Eigen::VectorXd& x, Eigen::VectorXd g) {
  int off = 0;
  for (int n : factors) {
    auto gs = g.segment(off, n);
    const auto xs = x.segment(off, n);
    gs -= gs.dot(xs) * xs;
    off += n;
  }
  return g;
}

}  // namespace

AscentResult ascend(const SphereProblem& p, Eigen::VectorXd x, const AscentOptions& opt) {
  auto f0 = p.value(x);
  if (!f0) throw InvalidArgument("ascend: start point is infeasible");
  AscentResult r{x, *f0, 0};
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd xp = x;
  auto gradient = [&](const Eigen::VectorXd& at, double fat) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      xp = at;
      xp[i] += opt.fd_step;
      const auto up = p.value(xp);
      xp[i] = at[i] - opt.fd_step;
      const auto down = p.value(xp);
      if (up && down)
        g[i] = (*up - *down) / (2 * opt.fd_step);
      else if (up)
        g[i] = (*up - fat) / opt.fd_step;
      else if (down)
        g[i] = (fat - *down) / opt.fd_step;
    }
    return tangent(p.factors, at, g);
  };

  Eigen::VectorXd g = gradient(r.x, r.value);
  // Step length in units of the gradient; the first trial moves by initial_step, later
  // trials use the Barzilai-Borwein length from the previous accepted move.
  double alpha = g.norm() > 0.0 ? opt.initial_step / g.norm() : 0.0;
  while (r.iterations < opt.max_iterations) {
    ++r.iterations;
    const double gnorm = g.norm();
    if (!(gnorm > 1e-14)) break;
    alpha = std::min(alpha, 1.0 / gnorm);
    bool moved = false;
    while (alpha * gnorm >= opt.min_step) {
      Eigen::VectorXd y = retract(p.factors, r.x + alpha * g);
      const auto fy = p.value(y);
      if (fy && *fy > r.value) {
        const Eigen::VectorXd gy = gradient(y, *fy);
        const Eigen::VectorXd ds = y - r.x;
        const double sy = std::abs(ds.dot(gy - g));
        alpha = sy > 0.0 ? ds.squaredNorm() / sy : 2 * alpha;
        r.x = std::move(y);
        r.value = *fy;
        g = gy;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  return r;
}

SearchResult maximize(const SphereProblem& p, int samples, int multistarts, std::uint64_t seed,
                      const AscentOptions& opt) {
  if (samples < 1 || multistarts < 1) throw InvalidArgument("maximize: samples and multistarts must be >= 1");
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<double> vals(samples, ninf);
  std::vector<Eigen::VectorXd> pts(samples);
  parallel_for(samples, [&](std::int64_t i) {
    auto rng = stream_rng(seed, static_cast<std::uint64_t>(i));
    pts[i] = retract(p.factors, p.sample(rng));
    if (auto v = p.value(pts[i]); v && std::isfinite(*v)) vals[i] = *v;
  });

  SearchResult out;
  std::vector<std::int64_t> order;
  for (std::int64_t i = 0; i < samples; ++i)
    if (vals[i] > ninf) order.push_back(i);
  out.feasible_samples = static_cast<std::int64_t>(order.size());
  if (order.empty()) {
    out.best = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] > vals[b]; });
  out.sample_best = vals[order.front()];
  out.best = out.sample_best;
  out.witness = pts[order.front()];

  const int starts = static_cast<int>(std::min<std::int64_t>(multistarts, order.size()));
  std::vector<AscentResult> runs(starts);
  parallel_for(starts, [&](std::int64_t s) { runs[s] = ascend(p, pts[order[s]], opt); });
  double lo = std::numeric_limits<double>::infinity();
  double hi = ninf;
  for (int s = 0; s < starts; ++s) {
    out.finals.push_back(runs[s].value);
    lo = std::min(lo, runs[s].value);
    hi = std::max(hi, runs[s].value);
    if (runs[s].value > out.best) {
      out.best = runs[s].value;
      out.witness = runs[s].x;
    }
  }
  out.spread = hi != 0.0 ? (hi - lo) / std::abs(hi) : 0.0;
  return out;
}

}  // namespace swm
