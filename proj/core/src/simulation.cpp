#include "hypersparse/simulation.hpp"

#include <algorithm>
#include <stdexcept>

#include "hypersparse/rng.hpp"

namespace hypersparse {

void SimSpec::validate() const {
  if (n < 2) throw std::invalid_argument("simulation needs n >= 2");
  if (!(band_width > 0.0)) throw std::invalid_argument("band width must be > 0");
  if (n_relevant < 0 || n_irrelevant < 0 || noisy_per_edge < 0)
    throw std::invalid_argument("counts must be >= 0");
  if (n_irrelevant > 0 && (irrelevant_size < 2 || irrelevant_size > n))
    throw std::invalid_argument("irrelevant edge size must be in [2, n]");
  if (label_noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be >= 0");
}

SimulatedProblem gen_simulation(const SimSpec& spec, std::uint64_t seed) {
  spec.validate();
  SimulatedProblem out;

  Rng label_rng = Rng::substream(seed, 0);
  Eigen::VectorXd y(spec.n);
  for (int i = 0; i < spec.n; ++i) y[i] = label_rng.next_double();
  out.y_true = y;

  Hypergraph h;
  h.n = spec.n;
  h.name = "simulated";

  // Relevant edges: band [a, a + width) over the true labels, starts evenly
  // spaced over [0, 0.9].
  for (int j = 0; j < spec.n_relevant; ++j) {
    const double a =
        spec.n_relevant > 1 ? 0.9 * static_cast<double>(j) / (spec.n_relevant - 1) : 0.0;
    std::vector<NodeId> nodes;
    for (int i = 0; i < spec.n; ++i)
      if (y[i] >= a && y[i] < a + spec.band_width) nodes.push_back(i);
    if (nodes.size() < 2) {
      out.warnings.push_back("relevant band starting at " + std::to_string(a) +
                             " has fewer than 2 nodes; dropped");
      continue;
    }
    h.edges.emplace_back(std::move(nodes));
    out.relevant.push_back(static_cast<EdgeId>(h.edges.size()) - 1);
  }

  // Noisy nodes: appended to each relevant edge, sampled uniformly from the
  // non-members without replacement.
  if (spec.noisy_per_edge > 0) {
    Rng noise_rng = Rng::substream(seed, 1);
    for (EdgeId k : out.relevant) {
      auto& e = h.edges[k];
      std::vector<NodeId> non_members;
      std::vector<std::uint8_t> member(spec.n, 0);
      for (NodeId i : e.nodes) member[i] = 1;
      for (int i = 0; i < spec.n; ++i)
        if (!member[i]) non_members.push_back(i);
      const int take = std::min<int>(spec.noisy_per_edge, static_cast<int>(non_members.size()));
      if (take < spec.noisy_per_edge)
        out.warnings.push_back("edge " + std::to_string(k) + ": only " + std::to_string(take) +
                               " non-members available for noisy nodes");
      const auto picks = noise_rng.sample_without_replacement(static_cast<int>(non_members.size()),
                                                              take);
      for (int p : picks) e.nodes.push_back(non_members[p]);
      std::sort(e.nodes.begin(), e.nodes.end());
    }
  }

  // Irrelevant edges: uniform node groups regardless of labels.
  if (spec.n_irrelevant > 0) {
    Rng irr_rng = Rng::substream(seed, 2);
    for (int j = 0; j < spec.n_irrelevant; ++j) {
      const auto picks = irr_rng.sample_without_replacement(spec.n, spec.irrelevant_size);
      std::vector<NodeId> nodes(picks.begin(), picks.end());
      h.edges.emplace_back(std::move(nodes));
    }
  }

  validate_or_throw(h);
  out.hypergraph = std::move(h);

  if (spec.label_noise_sigma > 0.0) {
    Rng obs_rng = Rng::substream(seed, 3);
    Eigen::VectorXd yo = out.y_true;
    for (int i = 0; i < spec.n; ++i) yo[i] += spec.label_noise_sigma * obs_rng.next_gaussian();
    out.y_observed = std::move(yo);
  } else {
    out.y_observed = out.y_true;
  }
  return out;
}

LambdaGapTable lambda_gap_experiment(const SimSpec& spec, std::uint64_t seed,
                                     const std::vector<double>& grid, const AdmmConfig& solver,
                                     ModelKind model) {
  if (grid.empty()) throw std::invalid_argument("lambda grid must be nonempty");
  LambdaGapTable table;
  table.problem = gen_simulation(spec, seed);
  const auto& prob = table.problem;

  LabeledProblem labels;
  labels.y = prob.y_observed;
  labels.mask.assign(prob.hypergraph.n, 1);

  std::vector<std::uint8_t> is_relevant(prob.hypergraph.m(), 0);
  for (EdgeId k : prob.relevant) is_relevant[k] = 1;

  const auto path = lambda_path(prob.hypergraph, labels, model, grid, std::nullopt, solver);
  for (const auto& pt : path) {
    if (!pt.result) continue;
    LambdaGapRow row;
    row.lambda = pt.lambda;
    row.edge_ss = pt.result->edge_ss_values();
    double max_rel = -std::numeric_limits<double>::infinity();
    double min_irr = std::numeric_limits<double>::infinity();
    for (int k = 0; k < prob.hypergraph.m(); ++k) {
      if (is_relevant[k])
        max_rel = std::max(max_rel, row.edge_ss[k]);
      else
        min_irr = std::min(min_irr, row.edge_ss[k]);
    }
    row.support_gap =
        (std::isfinite(max_rel) && std::isfinite(min_irr)) ? min_irr - max_rel : 0.0;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace hypersparse
