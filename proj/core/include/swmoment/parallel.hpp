#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace swm {

/// Worker count: hardware concurrency, capped by SWMOMENT_THREADS when set.
int thread_count();

/// Runs body(i) for i in [0, n). Iterations must write to disjoint slots; callers
/// reduce afterwards in index order so results never depend on scheduling.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

/// Independent generator for sample `index` of a run seeded with `seed`.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index);

Eigen::VectorXd random_normal(std::mt19937_64& rng, int n);
/// Uniform on the unit sphere of R^n (n >= 1).
Eigen::VectorXd random_unit(std::mt19937_64& rng, int n);
double random_uniform(std::mt19937_64& rng, double lo, double hi);

/// Index of the largest value; ties go to the lowest index. NaN entries are ignored.
std::int64_t argmax_lowest(const std::vector<double>& values);

}  // namespace swm
