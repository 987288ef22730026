#ifndef HYPERSPARSE_SIMULATION_HPP
#define HYPERSPARSE_SIMULATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hypersparse/learners.hpp"

namespace hypersparse {

// Synthetic benchmark family: uniform labels on [0,1], relevant hyperedges
// as label bands of width band_width, irrelevant hyperedges as random node
// groups, optional noisy nodes appended to each relevant edge.
struct SimSpec {
  int n = 200;
  int n_relevant = 10;        // band starts evenly spaced over [0, 0.9]
  double band_width = 0.15;
  int n_irrelevant = 0;
  int irrelevant_size = 20;
  int noisy_per_edge = 0;
  double label_noise_sigma = 0.0;

  void validate() const;
};

struct SimulatedProblem {
  Hypergraph hypergraph;
  Eigen::VectorXd y_true;
  Eigen::VectorXd y_observed;       // y_true + N(0, sigma^2), equal when sigma = 0
  std::vector<EdgeId> relevant;     // ground-truth relevant edge ids
  std::vector<std::string> warnings;
};

// Deterministic under a fixed seed: identical spec+seed give bit-identical
// hypergraphs and labels. Bands with fewer than 2 members are dropped with a
// warning.
SimulatedProblem gen_simulation(const SimSpec& spec, std::uint64_t seed);

struct LambdaGapRow {
  double lambda = 0.0;
  std::vector<double> edge_ss;  // ss(f_hat, e_k) per edge
  double support_gap = 0.0;     // min irrelevant ss - max relevant ss
};

struct LambdaGapTable {
  SimulatedProblem problem;
  std::vector<LambdaGapRow> rows;
};

// Full-label fits over the grid (joint selection unless overridden); emits
// the per-edge smoothness matrix and the planted-support gap per lambda.
LambdaGapTable lambda_gap_experiment(const SimSpec& spec, std::uint64_t seed,
                                     const std::vector<double>& grid,
                                     const AdmmConfig& solver = {},
                                     ModelKind model = ModelKind::JointSelection);

}  // namespace hypersparse

#endif  // HYPERSPARSE_SIMULATION_HPP
