#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace swm {

/// Maximization problem over a product of unit spheres; x concatenates the factors.
struct SphereProblem {
  std::vector<int> factors;
  /// Objective at a point of the product; nullopt marks an infeasible point.
  std::function<std::optional<double>(const Eigen::VectorXd&)> value;
  /// Draws a start candidate on the product for sample `index`.
  std::function<Eigen::VectorXd(std::mt19937_64&)> sample;
};

struct AscentOptions {
  int max_iterations = 200;
  double fd_step = 1e-6;
  double initial_step = 1e-2;
  double min_step = 1e-12;
};

struct AscentResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
};

struct SearchResult {
  double best = 0.0;
  Eigen::VectorXd witness;
  std::int64_t feasible_samples = 0;
  double sample_best = 0.0;
  std::vector<double> finals;
  /// (max - min) / |max| over the multistart finals.
  double spread = 0.0;
};

Eigen::VectorXd retract(const std::vector<int>& factors, Eigen::VectorXd x);

/// Projected gradient ascent with central-difference gradients, step doubling after
/// accepted moves and halving after rejected ones. x must be feasible.
AscentResult ascend(const SphereProblem& p, Eigen::VectorXd x, const AscentOptions& opt = {});

/// Evaluates `samples` seeded start candidates, ascends from the best `multistarts`
/// feasible ones and returns the overall maximum. Deterministic for a given seed.
SearchResult maximize(const SphereProblem& p, int samples, int multistarts, std::uint64_t seed,
                      const AscentOptions& opt = {});

}  // namespace swm
