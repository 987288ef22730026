#ifndef HYPERSPARSE_TYPES_HPP
#define HYPERSPARSE_TYPES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace hypersparse {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

// The four regression models. Each pairs an aggregator over edges with a
// per-edge slack measure:
//   Dense              sum_k w_k sum_{i in e_k} (mu_k - f_i)^2
//   HyperedgeSelection sum_k w_k max_{i in e_k} |mu_k - f_i|
//   NodeSelection      sum_k w_k (sum_{i in e_k} |mu_k - f_i|)^2
//   JointSelection     sum_k w_k sum_{i in e_k} |mu_k - f_i|
enum class ModelKind { Dense, HyperedgeSelection, NodeSelection, JointSelection };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

// Observed labels plus a 0/1 observation mask; unmasked entries of y are
// never read during fitting.
struct LabeledProblem {
  Eigen::VectorXd y;
  std::vector<std::uint8_t> mask;

  int n() const { return static_cast<int>(y.size()); }
  int observed_count() const;
};

}  // namespace hypersparse

#endif  // HYPERSPARSE_TYPES_HPP
