#include <benchmark/benchmark.h>

#include "swmoment/certifier.hpp"
#include "swmoment/covering.hpp"
#include "swmoment/frequency_lab.hpp"
#include "swmoment/identity_suite.hpp"
#include "swmoment/parallel.hpp"

using namespace swm;

namespace {

void BM_Moment(benchmark::State& state) {
  const QuatRep rep = state.range(0) == 0 ? rep_adjoint(su_basis(3)) : rep_adhm(1, 2);
  auto rng = stream_rng(1, 0);
  const Spinor phi = random_normal(rng, rep.dim_S());
  for (auto _ : state) benchmark::DoNotOptimize(moment(rep, phi));
}
BENCHMARK(BM_Moment)->Arg(0)->Arg(1);

void BM_MuGammaIdentity(benchmark::State& state) {
  const QuatRep rep = rep_adhm(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(check_mu_gamma_identity(rep, 1000, 1).worst_residual);
}
BENCHMARK(BM_MuGammaIdentity)->Unit(benchmark::kMillisecond);

void BM_ConeProject(benchmark::State& state) {
  auto rng = stream_rng(2, 0);
  const Spinor xi = random_normal(rng, 12);
  for (auto _ : state) benchmark::DoNotOptimize(cone_project(xi).distance);
}
BENCHMARK(BM_ConeProject);

std::shared_ptr<const Domain> unit_ball(std::int64_t n) {
  return std::make_shared<const Domain>(Eigen::Vector3d::Zero(), 1.0, 1.0 / static_cast<double>(n));
}

double saddle(const Eigen::Vector3d& x) { return x[0] * x[0] - x[1] * x[1]; }

void BM_FrequencyProfile(benchmark::State& state) {
  const LatticeField f = LatticeField::sample(unit_ball(state.range(0)), std::make_shared<const QuatRep>(rep_trivial()),
                                              1.0, [](const Eigen::Vector3d& x) { return Spinor::Constant(4, saddle(x)); });
  for (auto _ : state)
    benchmark::DoNotOptimize(frequency_profile(f, Eigen::Vector3d::Zero(), {0.3, 0.5, 0.7, 0.85}).N);
}
BENCHMARK(BM_FrequencyProfile)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_BallIntegralProfile(benchmark::State& state) {
  const ScalarField f = ScalarField::sample(unit_ball(state.range(0)), saddle);
  const double step = 0.5 * f.domain->spacing();
  for (auto _ : state)
    benchmark::DoNotOptimize(ball_integral_profile(f, Eigen::Vector3d::Zero(), step, static_cast<int>(2.0 / step)));
}
BENCHMARK(BM_BallIntegralProfile)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
