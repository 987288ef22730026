#include <benchmark/benchmark.h>

#include "hypersparse/prox.hpp"
#include "hypersparse/rng.hpp"

using namespace hypersparse;

namespace {

Eigen::VectorXd make_input(int dim) {
  Rng rng(dim);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = 10.0 * (rng.next_double() - 0.5);
  return v;
}

void BM_ProjectL1Ball(benchmark::State& state) {
  const Eigen::VectorXd v = make_input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(project_l1_ball(v, 1.0));
}

void BM_ProxL1(benchmark::State& state) {
  const Eigen::VectorXd v = make_input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(prox_l1(v, 0.5));
}

void BM_ProxLinf(benchmark::State& state) {
  const Eigen::VectorXd v = make_input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(prox_linf(v, 0.5));
}

void BM_ProxSql1(benchmark::State& state) {
  const Eigen::VectorXd v = make_input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(prox_sql1(v, 0.5));
}

}  // namespace

BENCHMARK(BM_ProjectL1Ball)->Arg(16)->Arg(256)->Arg(4096);
BENCHMARK(BM_ProxL1)->Arg(16)->Arg(256)->Arg(4096);
BENCHMARK(BM_ProxLinf)->Arg(16)->Arg(256)->Arg(4096);
BENCHMARK(BM_ProxSql1)->Arg(16)->Arg(256)->Arg(4096);

BENCHMARK_MAIN();
