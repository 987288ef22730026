#ifndef HYPERSPARSE_SMOOTHNESS_HPP
#define HYPERSPARSE_SMOOTHNESS_HPP

#include <functional>
#include <span>

#include "hypersparse/hypergraph.hpp"

namespace hypersparse {

// One level of the combinator pair (T over edges, t over node pairs).
// Sum and Max apply directly to the combined items; LpNorm(p) applies
// (sum items)^(1/p), so pairing it with kernel exponent p yields the usual
// within- or between-edge l_p norm.
struct Combinator {
  enum class Kind { Sum, Max, LpNorm };
  Kind kind = Kind::Sum;
  double p = 2.0;  // only read for LpNorm

  static Combinator sum() { return {Kind::Sum, 0.0}; }
  static Combinator max() { return {Kind::Max, 0.0}; }
  static Combinator lp_norm(double p) { return {Kind::LpNorm, p}; }
};

// Choice of (T, t, s) realizing one row of the variant table: the pairwise
// kernel is s(f_i, f_j) = |f_i - f_j|^kernel_exponent.
struct CombinatorSpec {
  Combinator T = Combinator::sum();
  Combinator t = Combinator::sum();
  double kernel_exponent = 2.0;
};

struct ShResult {
  double value = 0.0;
  bool empty_hypergraph = false;  // m == 0: value is 0 by convention
};

// Per-pair weight w_ij for pair (i, j) of edge k. When omitted, pairs weigh
// 1 scaled by the resolved edge weight w(e_k).
using PairWeightFn = std::function<double(EdgeId k, NodeId i, NodeId j)>;

// Evaluates T over edges of t over within-edge pairs of w_ij * s(f_i, f_j).
ShResult sh_general(const Eigen::VectorXd& f, const Hypergraph& h, const WeightScheme& ws,
                    const CombinatorSpec& spec, const PairWeightFn& pair_weights = nullptr);

// Per-edge smoothness value together with the representative label that
// attains it.
struct EdgeSmoothness {
  double mu = 0.0;
  double value = 0.0;
};

// ss1: w * sum_i |f_i - mu| minimized over mu; mu is the median (even
// cardinality takes the midpoint of the two middle order statistics).
EdgeSmoothness ss1(std::span<const double> f_on_edge, double w);

// ss2: w * max_i |f_i - mu| minimized over mu; mu is the mid-range and the
// value is half the weighted range, i.e. half of total variation.
EdgeSmoothness ss2(std::span<const double> f_on_edge, double w);

// Dense measure: w * sum_i (f_i - mu)^2 minimized over mu; mu is the mean.
EdgeSmoothness ss_dense(std::span<const double> f_on_edge, double w);

// The per-edge measure matching a model's slack definition.
EdgeSmoothness edge_smoothness(ModelKind model, std::span<const double> f_on_edge, double w);

// Gathers f restricted to edge e.
std::vector<double> restrict_to_edge(const Eigen::VectorXd& f, const Hyperedge& e);

// Minimizer set of x -> sum_i w_i |x - v_i|: a point or a closed interval.
struct MedianInterval {
  double lo = 0.0;
  double hi = 0.0;

  double midpoint() const { return 0.5 * (lo + hi); }
};

MedianInterval weighted_median_interval(std::span<const double> values,
                                        std::span<const double> weights);

}  // namespace hypersparse

#endif  // HYPERSPARSE_SMOOTHNESS_HPP
