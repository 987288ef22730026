#include <benchmark/benchmark.h>

#include "hypersparse/learners.hpp"
#include "hypersparse/simulation.hpp"

using namespace hypersparse;

namespace {

SimulatedProblem make_problem(int n_irrelevant, int noisy) {
  SimSpec spec;
  spec.n_irrelevant = n_irrelevant;
  spec.noisy_per_edge = noisy;
  return gen_simulation(spec, 42);
}

void bench_model(benchmark::State& state, ModelKind model) {
  const auto sim = make_problem(static_cast<int>(state.range(0)), 2);
  LabeledProblem labels;
  labels.y = sim.y_observed;
  labels.mask.assign(sim.hypergraph.n, 1);
  LearnerConfig cfg;
  cfg.model = model;
  cfg.lambda = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(fit(sim.hypergraph, labels, cfg));
}

void BM_FitDense(benchmark::State& state) { bench_model(state, ModelKind::Dense); }
void BM_FitEdge(benchmark::State& state) { bench_model(state, ModelKind::HyperedgeSelection); }
void BM_FitNode(benchmark::State& state) { bench_model(state, ModelKind::NodeSelection); }
void BM_FitJoint(benchmark::State& state) { bench_model(state, ModelKind::JointSelection); }

void BM_WarmStartedPath(benchmark::State& state) {
  const auto sim = make_problem(5, 2);
  LabeledProblem labels;
  labels.y = sim.y_observed;
  labels.mask.assign(sim.hypergraph.n, 1);
  const auto grid = default_lambda_grid();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        lambda_path(sim.hypergraph, labels, ModelKind::JointSelection, grid));
}

}  // namespace

BENCHMARK(BM_FitDense)->Arg(0)->Arg(10);
BENCHMARK(BM_FitEdge)->Arg(0)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FitNode)->Arg(0)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FitJoint)->Arg(0)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WarmStartedPath)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
