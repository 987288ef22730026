#ifndef HYPERSPARSE_HYPERGRAPH_HPP
#define HYPERSPARSE_HYPERGRAPH_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypersparse/types.hpp"

namespace hypersparse {

// A hyperedge is a sorted set of distinct node ids with an optional
// nonnegative weight. Unset weights are resolved by a WeightScheme.
struct Hyperedge {
  std::vector<NodeId> nodes;
  std::optional<double> weight;

  Hyperedge() = default;
  Hyperedge(std::vector<NodeId> ns, std::optional<double> w = std::nullopt);

  int size() const { return static_cast<int>(nodes.size()); }
};

// Hypergraph over dense node ids 0..n-1. Isolated nodes are legal; edges of
// size < 2 and duplicate member ids are not. Immutable by convention after
// construction: validate() once, then share freely across threads.
struct Hypergraph {
  int n = 0;
  std::vector<Hyperedge> edges;
  std::string name;

  int m() const { return static_cast<int>(edges.size()); }
  // Total membership count sum_k |e_k|.
  long total_pins() const;
};

enum class WeightSchemeKind { Unit, InverseCardinality, Explicit };

struct WeightScheme {
  WeightSchemeKind kind = WeightSchemeKind::Unit;

  static WeightScheme unit() { return {WeightSchemeKind::Unit}; }
  static WeightScheme inverse_cardinality() { return {WeightSchemeKind::InverseCardinality}; }
  static WeightScheme explicit_weights() { return {WeightSchemeKind::Explicit}; }
};

std::string to_string(WeightSchemeKind kind);
WeightSchemeKind weight_scheme_from_string(const std::string& name);

// Resolved per-edge weight; throws std::invalid_argument if the scheme is
// Explicit and the edge has no stored weight, or if the result is not > 0.
double resolve_weight(const Hyperedge& e, const WeightScheme& ws);
std::vector<double> resolve_weights(const Hypergraph& h, const WeightScheme& ws);

enum class ValidationError { None, OutOfRangeNode, DegenerateEdge, NegativeWeight };

struct ValidationResult {
  ValidationError error = ValidationError::None;
  std::string message;

  bool ok() const { return error == ValidationError::None; }
};

ValidationResult validate(const Hypergraph& h);
// Throws std::invalid_argument carrying the validation message.
void validate_or_throw(const Hypergraph& h);

// Growth-model constants. r_k = |e_k|/n, R/R' its max/min, d_i the scaled
// node degree n * sum_{k | i in e_k} w(e_k), D = max_i d_i.
struct GrowthStats {
  std::vector<double> r;
  double R = 0.0;
  double R_min = 0.0;
  std::vector<double> d;
  double D = 0.0;
};

GrowthStats growth_stats(const Hypergraph& h, const WeightScheme& ws);

// Weighted graph on the original node set; pair weight accumulates w(e) over
// every edge containing both endpoints. Pairs are stored once with i < j.
struct WeightedGraph {
  int n = 0;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<double> weights;

  double pair_weight(NodeId i, NodeId j) const;
  // Laplacian quadratic form sum_{(i,j)} w_ij (f_i - f_j)^2.
  double laplacian_quadratic(const Eigen::VectorXd& f) const;
};

WeightedGraph clique_expansion(const Hypergraph& h, const WeightScheme& ws);

// Bipartite star expansion: node ids 0..n-1 keep their identity, edge k gets
// the auxiliary node n+k, connected to each member with weight w(e_k).
struct StarGraph {
  int n_original = 0;
  int n_stars = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;  // (star node, member node)
  std::vector<double> weights;

  int total_nodes() const { return n_original + n_stars; }
};

StarGraph star_expansion(const Hypergraph& h, const WeightScheme& ws);

}  // namespace hypersparse

#endif  // HYPERSPARSE_HYPERGRAPH_HPP
