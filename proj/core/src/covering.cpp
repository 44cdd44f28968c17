#include "swmoment/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "swmoment/errors.hpp"
#include "swmoment/parallel.hpp"

namespace swm {

int covering_number(int resolution) {
  if (resolution < 2) throw InvalidArgument("covering_number: resolution must be at least 2");
  static std::mutex mu;
  static std::vector<std::pair<int, int>> cache;
  {
    const std::lock_guard<std::mutex> lock(mu);
    for (const auto& [res, n] : cache)
      if (res == resolution) return n;
  }
  const double step = 1.0 / resolution;
  std::vector<Eigen::Vector3d> pts;
  for (int i = -resolution; i <= resolution; ++i)
    for (int j = -resolution; j <= resolution; ++j)
      for (int k = -resolution; k <= resolution; ++k) {
        const Eigen::Vector3d p(i * step, j * step, k * step);
        if (p.squaredNorm() <= 1.0 + 1e-12) pts.push_back(p);
      }
  const double r2 = 1.0 / 64.0 + 1e-12;
  std::vector<char> covered(pts.size(), 0);
  int count = 0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    if (covered[a]) continue;
    ++count;
    for (std::size_t b = a; b < pts.size(); ++b)
      if (!covered[b] && (pts[b] - pts[a]).squaredNorm() <= r2) covered[b] = 1;
  }
  const std::lock_guard<std::mutex> lock(mu);
  cache.emplace_back(resolution, count);
  return count;
}

std::vector<double> ball_integral_profile(const ScalarField& f, const Eigen::Vector3d& y, double step, int count,
                                          const Eigen::Vector3d& clip_center, double clip_radius) {
  if (!(step > 0.0) || count < 0) throw InvalidArgument("ball_integral_profile: need step > 0 and count >= 0");
  const Domain& d = *f.domain;
  const double h = d.spacing();
  std::vector<double> partial(static_cast<std::size_t>(count) + 1, 0.0);
  std::vector<double> full(static_cast<std::size_t>(count) + 2, 0.0);
  const Eigen::Vector3d q = (y - d.center()) / h + Eigen::Vector3d::Constant(d.half());
  const int last = d.nodes_per_axis() - 1;
  const double reach = count * step / h + 0.5;
  int lo[3];
  int hi[3];
  for (int a = 0; a < 3; ++a) {
    lo[a] = std::max(0, static_cast<int>(std::ceil(q[a] - reach)));
    hi[a] = std::min(last, static_cast<int>(std::floor(q[a] + reach)));
    if (lo[a] > hi[a]) return partial;
  }
  const bool clip = clip_radius > 0.0;
  for (int i = lo[0]; i <= hi[0]; ++i)
    for (int j = lo[1]; j <= hi[1]; ++j)
      for (int k = lo[2]; k <= hi[2]; ++k) {
        double v = f.values[static_cast<Eigen::Index>(d.index(i, j, k))];
        if (v == 0.0) continue;
        const Eigen::Vector3d p = d.position(i, j, k);
        if (clip) v *= std::clamp((clip_radius - (p - clip_center).norm()) / h + 0.5, 0.0, 1.0);
        if (v == 0.0) continue;
        const double dist = (p - y).norm();
        int t = std::max(1, static_cast<int>(std::floor((dist - 0.5 * h) / step)));
        for (; t <= count; ++t) {
          const double w = std::clamp((t * step - dist) / h + 0.5, 0.0, 1.0);
          if (w >= 1.0) break;
          partial[t] += w * v;
        }
        if (t <= count) full[t] += v;
      }
  const double cell = h * h * h;
  double run = 0.0;
  for (int t = 0; t <= count; ++t) {
    run += full[t];
    partial[t] = (partial[t] + run) * cell;
  }
  return partial;
}

double regularity_radius(const ScalarField& f, const Eigen::Vector3d& x, double r, const Eigen::Vector3d& y) {
  if (!(r > 0.0)) throw InvalidArgument("regularity_radius: r must be positive");
  const double step = 0.5 * f.domain->spacing();
  const int count = static_cast<int>(std::ceil(2 * r / step));
  const auto ints = ball_integral_profile(f, y, step, count + 2, x, r);
  double best = 0.0;
  for (int k = 1; k <= count; ++k) {
    if (k * step * ints[k] > 1.0) return best;
    best = k * step;
  }
  const double total = ints[count + 2];
  if (total <= 0.0) return std::numeric_limits<double>::infinity();
  return std::max(best, 1.0 / total);
}

ScalarField regularity_radius_field(const ScalarField& f, const Eigen::Vector3d& x, double r) {
  const Domain& d = *f.domain;
  ScalarField out{f.domain, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d.size()))};
  parallel_for(static_cast<std::int64_t>(d.size()), [&](std::int64_t i) {
    const Eigen::Vector3d y = d.position(static_cast<std::size_t>(i));
    if ((y - x).norm() < r) out.values[i] = regularity_radius(f, x, r, y);
  });
  return out;
}

namespace {

struct CenterScan {
  CoveringPair worst;
  bool has_worst = false;
  std::size_t tested = 0;
  std::size_t premise_true = 0;
  std::size_t violations = 0;
};

}  // namespace

CoveringVerdict covering_check(const ScalarField& f, double delta, const Eigen::Vector3d& x, double r,
                               const CoveringOptions& opts) {
  if (!(r > 0.0)) throw InvalidArgument("covering_check: r must be positive");
  if (opts.center_stride < 1) throw InvalidArgument("covering_check: center_stride must be at least 1");
  const Domain& d = *f.domain;
  const double h = d.spacing();
  std::vector<std::size_t> centers;
  for (std::size_t n = 0; n < d.size(); ++n) {
    const auto c = d.ijk(n);
    bool on_stride = true;
    for (int a = 0; a < 3; ++a) on_stride = on_stride && (c[a] - d.half()) % opts.center_stride == 0;
    if (on_stride && (d.position(n) - x).norm() < r) centers.push_back(n);
  }
  std::vector<CenterScan> scans(centers.size());
  parallel_for(static_cast<std::int64_t>(centers.size()), [&](std::int64_t i) {
    const Eigen::Vector3d y = d.position(centers[i]);
    const int count = static_cast<int>(std::floor((r - (y - x).norm()) / h + 1e-9));
    if (count < 1) return;
    const auto outer = ball_integral_profile(f, y, h, count);
    const auto inner = ball_integral_profile(f, y, 0.25 * h, count);
    CenterScan& sc = scans[i];
    for (int k = 1; k <= count; ++k) {
      const double s = k * h;
      const CoveringPair p{y, s, s * outer[k], 0.25 * s * inner[k]};
      ++sc.tested;
      if (p.premise > 1.0) continue;
      ++sc.premise_true;
      if (p.decay > delta) ++sc.violations;
      if (!sc.has_worst || p.decay > sc.worst.decay) {
        sc.worst = p;
        sc.has_worst = true;
      }
    }
  });
  CoveringVerdict v;
  v.delta = delta;
  bool has_worst = false;
  for (const auto& sc : scans) {
    v.pairs_tested += sc.tested;
    v.premise_true += sc.premise_true;
    v.violations += sc.violations;
    if (sc.has_worst && (!has_worst || sc.worst.decay > v.worst_pair.decay)) {
      v.worst_pair = sc.worst;
      has_worst = true;
    }
  }
  v.hypothesis_holds = v.violations == 0;
  v.conclusion_value = 0.5 * r * ball_integral(f, x, 0.5 * r);
  v.conclusion_holds = v.conclusion_value <= 1.0;
  return v;
}

double default_covering_delta() { return 1.0 / (16.0 * covering_number()); }

CoveringReadings covering_check_readings(const ScalarField& f, const Eigen::Vector3d& x, double r,
                                         const CoveringOptions& opts) {
  CoveringReadings out;
  out.covering_number = covering_number();
  out.reciprocal = covering_check(f, 1.0 / (16.0 * out.covering_number), x, r, opts);
  out.literal = covering_check(f, out.covering_number / 16.0, x, r, opts);
  return out;
}

}  // namespace swm
