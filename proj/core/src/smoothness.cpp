#include "hypersparse/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hypersparse {

namespace {

// Running accumulator for one combinator level.
struct Accumulator {
  Combinator c;
  double acc = 0.0;
  bool any = false;

  explicit Accumulator(const Combinator& comb) : c(comb) {
    if (c.kind == Combinator::Kind::Max) acc = -std::numeric_limits<double>::infinity();
  }

  void add(double x) {
    any = true;
    if (c.kind == Combinator::Kind::Max)
      acc = std::max(acc, x);
    else
      acc += x;
  }

  double finish() const {
    if (!any) return 0.0;
    if (c.kind == Combinator::Kind::LpNorm) return std::pow(acc, 1.0 / c.p);
    return acc;
  }
};

}  // namespace

ShResult sh_general(const Eigen::VectorXd& f, const Hypergraph& h, const WeightScheme& ws,
                    const CombinatorSpec& spec, const PairWeightFn& pair_weights) {
  if (f.size() != h.n) throw std::invalid_argument("label vector length must equal node count");
  if (spec.kernel_exponent < 1.0) throw std::invalid_argument("kernel exponent must be >= 1");
  if (spec.T.kind == Combinator::Kind::LpNorm && spec.T.p < 1.0)
    throw std::invalid_argument("LpNorm exponent must be >= 1");
  if (spec.t.kind == Combinator::Kind::LpNorm && spec.t.p < 1.0)
    throw std::invalid_argument("LpNorm exponent must be >= 1");
  if (h.m() == 0) return {0.0, true};

  Accumulator outer(spec.T);
  for (int k = 0; k < h.m(); ++k) {
    const auto& e = h.edges[k];
    const double we = pair_weights ? 1.0 : resolve_weight(e, ws);
    Accumulator inner(spec.t);
    for (std::size_t a = 0; a < e.nodes.size(); ++a) {
      for (std::size_t b = a + 1; b < e.nodes.size(); ++b) {
        const NodeId i = e.nodes[a];
        const NodeId j = e.nodes[b];
        const double wij = pair_weights ? pair_weights(k, i, j) : we;
        const double s = std::pow(std::abs(f[i] - f[j]), spec.kernel_exponent);
        inner.add(wij * s);
      }
    }
    outer.add(inner.finish());
  }
  return {outer.finish(), false};
}

EdgeSmoothness ss1(std::span<const double> f_on_edge, double w) {
  if (f_on_edge.size() < 2) throw std::invalid_argument("edge must have >= 2 nodes");
  if (!(w > 0.0)) throw std::invalid_argument("edge weight must be > 0");
  std::vector<double> sorted(f_on_edge.begin(), f_on_edge.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double mu =
      (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  double total = 0.0;
  for (double v : sorted) total += std::abs(v - mu);
  return {mu, w * total};
}

EdgeSmoothness ss2(std::span<const double> f_on_edge, double w) {
  if (f_on_edge.size() < 2) throw std::invalid_argument("edge must have >= 2 nodes");
  if (!(w > 0.0)) throw std::invalid_argument("edge weight must be > 0");
  const auto [lo, hi] = std::minmax_element(f_on_edge.begin(), f_on_edge.end());
  const double mu = 0.5 * (*lo + *hi);
  return {mu, 0.5 * w * (*hi - *lo)};
}

EdgeSmoothness ss_dense(std::span<const double> f_on_edge, double w) {
  if (f_on_edge.size() < 2) throw std::invalid_argument("edge must have >= 2 nodes");
  if (!(w > 0.0)) throw std::invalid_argument("edge weight must be > 0");
  const double mu =
      std::accumulate(f_on_edge.begin(), f_on_edge.end(), 0.0) / static_cast<double>(f_on_edge.size());
  double total = 0.0;
  for (double v : f_on_edge) {
    const double d = v - mu;
    total += d * d;
  }
  return {mu, w * total};
}

EdgeSmoothness edge_smoothness(ModelKind model, std::span<const double> f_on_edge, double w) {
  switch (model) {
    case ModelKind::Dense: return ss_dense(f_on_edge, w);
    case ModelKind::HyperedgeSelection: return ss2(f_on_edge, w);
    case ModelKind::NodeSelection:
    case ModelKind::JointSelection: return ss1(f_on_edge, w);
  }
  throw std::logic_error("unreachable");
}

std::vector<double> restrict_to_edge(const Eigen::VectorXd& f, const Hyperedge& e) {
  std::vector<double> vals;
  vals.reserve(e.nodes.size());
  for (NodeId i : e.nodes) vals.push_back(f[i]);
  return vals;
}

MedianInterval weighted_median_interval(std::span<const double> values,
                                        std::span<const double> weights) {
  if (values.empty() || values.size() != weights.size())
    throw std::invalid_argument("weighted median needs matching nonempty inputs");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  double total = 0.0;
  for (double w : weights) total += w;
  const double half = 0.5 * total;
  double cum = 0.0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    cum += weights[order[r]];
    if (cum > half) {
      const double v = values[order[r]];
      return {v, v};
    }
    if (cum == half) {
      const double lo = values[order[r]];
      const double hi = r + 1 < order.size() ? values[order[r + 1]] : lo;
      return {lo, hi};
    }
  }
  const double v = values[order.back()];
  return {v, v};
}

}  // namespace hypersparse
