#include "hypersparse/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hypersparse {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Dense: return "dense";
    case ModelKind::HyperedgeSelection: return "edge";
    case ModelKind::NodeSelection: return "node";
    case ModelKind::JointSelection: return "joint";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "dense") return ModelKind::Dense;
  if (name == "edge" || name == "hyperedge") return ModelKind::HyperedgeSelection;
  if (name == "node") return ModelKind::NodeSelection;
  if (name == "joint") return ModelKind::JointSelection;
  throw std::invalid_argument("unknown model kind: " + name);
}

int LabeledProblem::observed_count() const {
  int c = 0;
  for (auto b : mask) c += b ? 1 : 0;
  return c;
}

Hyperedge::Hyperedge(std::vector<NodeId> ns, std::optional<double> w)
    : nodes(std::move(ns)), weight(w) {
  std::sort(nodes.begin(), nodes.end());
}

long Hypergraph::total_pins() const {
  long pins = 0;
  for (const auto& e : edges) pins += e.size();
  return pins;
}

std::string to_string(WeightSchemeKind kind) {
  switch (kind) {
    case WeightSchemeKind::Unit: return "unit";
    case WeightSchemeKind::InverseCardinality: return "invcard";
    case WeightSchemeKind::Explicit: return "explicit";
  }
  return "?";
}

WeightSchemeKind weight_scheme_from_string(const std::string& name) {
  if (name == "unit") return WeightSchemeKind::Unit;
  if (name == "invcard") return WeightSchemeKind::InverseCardinality;
  if (name == "explicit") return WeightSchemeKind::Explicit;
  throw std::invalid_argument("unknown weight scheme: " + name);
}

double resolve_weight(const Hyperedge& e, const WeightScheme& ws) {
  double w = 0.0;
  switch (ws.kind) {
    case WeightSchemeKind::Unit:
      w = 1.0;
      break;
    case WeightSchemeKind::InverseCardinality:
      w = 1.0 / static_cast<double>(e.size());
      break;
    case WeightSchemeKind::Explicit:
      if (!e.weight) throw std::invalid_argument("explicit weight scheme but edge has no weight");
      w = *e.weight;
      break;
  }
  if (!(w > 0.0)) throw std::invalid_argument("resolved edge weight must be strictly positive");
  return w;
}

std::vector<double> resolve_weights(const Hypergraph& h, const WeightScheme& ws) {
  std::vector<double> w;
  w.reserve(h.edges.size());
  for (const auto& e : h.edges) w.push_back(resolve_weight(e, ws));
  return w;
}

ValidationResult validate(const Hypergraph& h) {
  if (h.n < 0) return {ValidationError::OutOfRangeNode, "node count is negative"};
  for (std::size_t k = 0; k < h.edges.size(); ++k) {
    const auto& e = h.edges[k];
    const std::string where = "edge " + std::to_string(k);
    if (e.size() < 2) return {ValidationError::DegenerateEdge, where + " has fewer than 2 nodes"};
    for (std::size_t i = 0; i < e.nodes.size(); ++i) {
      if (e.nodes[i] < 0 || e.nodes[i] >= h.n)
        return {ValidationError::OutOfRangeNode,
                where + " contains node " + std::to_string(e.nodes[i]) + " outside [0, " +
                    std::to_string(h.n) + ")"};
      if (i > 0 && e.nodes[i] == e.nodes[i - 1])
        return {ValidationError::DegenerateEdge,
                where + " contains duplicate node " + std::to_string(e.nodes[i])};
      if (i > 0 && e.nodes[i] < e.nodes[i - 1])
        return {ValidationError::DegenerateEdge, where + " node list is not sorted"};
    }
    if (e.weight && (*e.weight < 0.0 || !std::isfinite(*e.weight)))
      return {ValidationError::NegativeWeight, where + " has negative or non-finite weight"};
  }
  return {};
}

void validate_or_throw(const Hypergraph& h) {
  auto r = validate(h);
  if (!r.ok()) throw std::invalid_argument("invalid hypergraph: " + r.message);
}

GrowthStats growth_stats(const Hypergraph& h, const WeightScheme& ws) {
  GrowthStats gs;
  gs.d.assign(h.n, 0.0);
  gs.r.reserve(h.edges.size());
  const double n = static_cast<double>(h.n);
  for (const auto& e : h.edges) {
    const double w = resolve_weight(e, ws);
    gs.r.push_back(static_cast<double>(e.size()) / n);
    for (NodeId i : e.nodes) gs.d[i] += n * w;
  }
  if (!gs.r.empty()) {
    gs.R = *std::max_element(gs.r.begin(), gs.r.end());
    gs.R_min = *std::min_element(gs.r.begin(), gs.r.end());
  }
  if (!gs.d.empty()) gs.D = *std::max_element(gs.d.begin(), gs.d.end());
  return gs;
}

double WeightedGraph::pair_weight(NodeId i, NodeId j) const {
  if (i > j) std::swap(i, j);
  for (std::size_t p = 0; p < pairs.size(); ++p)
    if (pairs[p].first == i && pairs[p].second == j) return weights[p];
  return 0.0;
}

double WeightedGraph::laplacian_quadratic(const Eigen::VectorXd& f) const {
  double q = 0.0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const double diff = f[pairs[p].first] - f[pairs[p].second];
    q += weights[p] * diff * diff;
  }
  return q;
}

WeightedGraph clique_expansion(const Hypergraph& h, const WeightScheme& ws) {
  std::map<std::pair<NodeId, NodeId>, double> acc;
  for (const auto& e : h.edges) {
    const double w = resolve_weight(e, ws);
    for (std::size_t a = 0; a < e.nodes.size(); ++a)
      for (std::size_t b = a + 1; b < e.nodes.size(); ++b)
        acc[{e.nodes[a], e.nodes[b]}] += w;
  }
  WeightedGraph g;
  g.n = h.n;
  g.pairs.reserve(acc.size());
  g.weights.reserve(acc.size());
  for (const auto& [pair, w] : acc) {
    g.pairs.push_back(pair);
    g.weights.push_back(w);
  }
  return g;
}

StarGraph star_expansion(const Hypergraph& h, const WeightScheme& ws) {
  StarGraph g;
  g.n_original = h.n;
  g.n_stars = h.m();
  g.edges.reserve(h.total_pins());
  g.weights.reserve(h.total_pins());
  for (int k = 0; k < h.m(); ++k) {
    const auto& e = h.edges[k];
    const double w = resolve_weight(e, ws);
    const NodeId star = h.n + k;
    for (NodeId i : e.nodes) {
      g.edges.emplace_back(star, i);
      g.weights.push_back(w);
    }
  }
  return g;
}

}  // namespace hypersparse
