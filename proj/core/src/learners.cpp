#include "hypersparse/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "hypersparse/errors.hpp"
#include "hypersparse/smoothness.hpp"

namespace hypersparse {

WeightScheme default_weight_scheme(ModelKind model) {
  return model == ModelKind::HyperedgeSelection ? WeightScheme::unit()
                                                : WeightScheme::inverse_cardinality();
}

std::vector<double> FitResult::edge_ss_values() const {
  std::vector<double> ss(delta_hat.size());
  for (std::size_t k = 0; k < ss.size(); ++k) ss[k] = edge_weights[k] * delta_hat[k];
  return ss;
}

namespace {

// Dense model: eliminate mu_k (per-edge mean) and solve
// (M_L + 2 lambda L_w) f = M_L y with (L_w f)_i = sum_{k: i in e_k}
// w_k (f_i - mean_{e_k}(f)).
FitResult fit_dense(const Hypergraph& h, const LabeledProblem& labels, const LearnerConfig& cfg) {
  const WeightScheme ws = cfg.resolved_weights();
  const auto w = resolve_weights(h, ws);
  const int n = h.n;

  const StackedOperator A(h);
  if (auto bad = A.unlabeled_component_node(labels.mask))
    throw SingularSystemError("connected component of node " + std::to_string(*bad) +
                              " has no labeled node");

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(h.total_pins() * 4 + n);
  for (int i = 0; i < n; ++i)
    if (labels.mask[i]) trips.emplace_back(i, i, 1.0);
  for (int k = 0; k < h.m(); ++k) {
    const auto& e = h.edges[k];
    const double size = static_cast<double>(e.size());
    const double coeff = 2.0 * cfg.lambda * w[k];
    for (NodeId i : e.nodes) {
      trips.emplace_back(i, i, coeff * (1.0 - 1.0 / size));
      for (NodeId j : e.nodes)
        if (j != i) trips.emplace_back(i, j, -coeff / size);
    }
  }
  Eigen::SparseMatrix<double> M(n, n);
  M.setFromTriplets(trips.begin(), trips.end());

  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    if (labels.mask[i]) b[i] = labels.y[i];

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(M);
  if (solver.info() != Eigen::Success)
    throw SingularSystemError("dense-model system factorization failed");
  const Eigen::VectorXd f = solver.solve(b);

  FitResult res;
  res.model = ModelKind::Dense;
  res.lambda = cfg.lambda;
  res.f_hat = f;
  res.mu_hat.resize(h.m());
  res.delta_hat.resize(h.m());
  res.edge_weights = w;
  for (int k = 0; k < h.m(); ++k) {
    const auto es = ss_dense(restrict_to_edge(f, h.edges[k]), w[k]);
    res.mu_hat[k] = es.mu;
    res.delta_hat[k] = es.value / w[k];
  }
  res.objective =
      equivalent_objective(h, labels, ModelKind::Dense, cfg.lambda, ws, res.f_hat, res.mu_hat);
  res.diagnostics.converged = true;
  res.diagnostics.iterations = 1;
  res.diagnostics.objective_trace = {res.objective};
  res.diagnostics.primal_residual = (M * f - b).norm();
  return res;
}

}  // namespace

FitResult fit(const Hypergraph& h, const LabeledProblem& labels, const LearnerConfig& cfg,
              const AdmmState* warm) {
  validate_or_throw(h);
  if (cfg.lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (labels.observed_count() == 0) throw std::invalid_argument("mask must be nonempty");

  if (cfg.model == ModelKind::Dense) return fit_dense(h, labels, cfg);

  const WeightScheme ws = cfg.resolved_weights();
  AdmmResult ar = admm_solve(h, labels, cfg.model, cfg.lambda, ws, cfg.solver, warm);

  FitResult res;
  res.model = cfg.model;
  res.lambda = cfg.lambda;
  res.f_hat = std::move(ar.f);
  res.mu_hat = std::move(ar.mu);
  res.delta_hat = std::move(ar.delta);
  res.edge_weights = resolve_weights(h, ws);
  res.objective = ar.objective;
  res.diagnostics = std::move(ar.diagnostics);
  res.solver_state = std::move(ar.state);
  return res;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int i = 7; i >= 1; --i) grid.push_back(std::pow(10.0, i - 5));
  return grid;
}

std::vector<PathPoint> lambda_path(const Hypergraph& h, const LabeledProblem& labels,
                                   ModelKind model, const std::vector<double>& grid,
                                   std::optional<WeightScheme> ws, const AdmmConfig& solver) {
  if (grid.empty()) throw std::invalid_argument("lambda grid must be nonempty");
  std::vector<PathPoint> path;
  path.reserve(grid.size());
  AdmmState warm;
  bool have_warm = false;
  for (double lambda : grid) {
    if (lambda < 0.0) throw std::invalid_argument("lambda grid values must be >= 0");
    PathPoint pt;
    pt.lambda = lambda;
    LearnerConfig cfg{model, lambda, ws, solver};
    try {
      FitResult r = fit(h, labels, cfg, have_warm ? &warm : nullptr);
      if (r.solver_state) {
        warm = *r.solver_state;
        have_warm = true;
      }
      pt.result = std::move(r);
    } catch (const SingularSystemError& ex) {
      pt.error = ex.what();
      pt.singular = true;
    } catch (const std::exception& ex) {
      pt.error = ex.what();
    }
    path.push_back(std::move(pt));
  }
  return path;
}

namespace {

struct WeightedValue {
  double value;
  double weight;
};

// Minimizer of sum_k w_k |x - v_k|; a tie interval resolves to its midpoint.
double weighted_median(const std::vector<WeightedValue>& vals) {
  std::vector<double> values, weights;
  values.reserve(vals.size());
  weights.reserve(vals.size());
  for (const auto& v : vals) {
    values.push_back(v.value);
    weights.push_back(v.weight);
  }
  return weighted_median_interval(values, weights).midpoint();
}

// Minimizer of max_k w_k |x - v_k|. Piecewise-linear upper envelope: the
// optimum lies at a crossing of two cones or at a single point.
double weighted_midrange(const std::vector<WeightedValue>& vals) {
  double best_x = vals[0].value;
  auto envelope = [&](double x) {
    double mx = 0.0;
    for (const auto& v : vals) mx = std::max(mx, v.weight * std::abs(x - v.value));
    return mx;
  };
  double best = envelope(best_x);
  for (std::size_t a = 0; a < vals.size(); ++a) {
    for (std::size_t b = 0; b < vals.size(); ++b) {
      const double denom = vals[a].weight + vals[b].weight;
      const double x = (vals[a].weight * vals[a].value + vals[b].weight * vals[b].value) / denom;
      const double g = envelope(x);
      if (g < best) {
        best = g;
        best_x = x;
      }
    }
  }
  return best_x;
}

}  // namespace

double predict_out_of_sample(const FitResult& fitted, const std::vector<EdgeId>& memberships,
                             ModelKind model) {
  if (memberships.empty()) throw std::invalid_argument("membership list is empty");
  std::vector<WeightedValue> vals;
  vals.reserve(memberships.size());
  for (EdgeId k : memberships) {
    if (k < 0 || k >= static_cast<EdgeId>(fitted.mu_hat.size()))
      throw std::invalid_argument("membership edge id out of range");
    vals.push_back({fitted.mu_hat[k], fitted.edge_weights[k]});
  }
  switch (model) {
    case ModelKind::Dense: {
      double num = 0.0, den = 0.0;
      for (const auto& v : vals) {
        num += v.weight * v.value;
        den += v.weight;
      }
      return num / den;
    }
    case ModelKind::HyperedgeSelection:
      return weighted_midrange(vals);
    case ModelKind::NodeSelection:
    case ModelKind::JointSelection:
      return weighted_median(vals);
  }
  throw std::logic_error("unreachable");
}

namespace {

SupportReport build_report(const std::vector<double>& ss, double gamma) {
  SupportReport rep;
  rep.gamma = gamma;
  double max_rel = -std::numeric_limits<double>::infinity();
  double min_irr = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < ss.size(); ++k) {
    if (ss[k] <= gamma) {
      rep.relevant.push_back(static_cast<EdgeId>(k));
      max_rel = std::max(max_rel, ss[k]);
    } else {
      rep.irrelevant.push_back(static_cast<EdgeId>(k));
      min_irr = std::min(min_irr, ss[k]);
    }
  }
  rep.gap = (!rep.relevant.empty() && !rep.irrelevant.empty()) ? min_irr - max_rel : 0.0;
  return rep;
}

}  // namespace

SupportReport classify_support(const FitResult& fitted, double gamma) {
  return build_report(fitted.edge_ss_values(), gamma);
}

SupportReport classify_support(const FitResult& fitted, AutoGamma) {
  const auto ss = fitted.edge_ss_values();
  std::vector<double> sorted = ss;
  std::sort(sorted.begin(), sorted.end());
  double best_gap = 0.0;
  double gamma = sorted.empty() ? 0.0 : sorted.back();
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const double gap = sorted[i + 1] - sorted[i];
    if (gap > best_gap) {
      best_gap = gap;
      gamma = 0.5 * (sorted[i] + sorted[i + 1]);
    }
  }
  if (best_gap == 0.0) {
    SupportReport rep = build_report(ss, gamma);
    rep.zero_gap = true;
    return rep;
  }
  return build_report(ss, gamma);
}

SparsistencyCertificate sparsistency_certificate(const Hypergraph& h, ModelKind model,
                                                 double gamma_r, double gamma_i, double delta,
                                                 const WeightScheme& ws) {
  if (!(gamma_i > gamma_r) || gamma_r < 0.0)
    throw std::invalid_argument("requires gamma_i > gamma_r >= 0");
  if (delta < 0.0) throw std::invalid_argument("requires delta >= 0");

  const auto gs = growth_stats(h, ws);
  if (!(gs.D > 0.0)) throw std::invalid_argument("hypergraph must have at least one edge");
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double noise_term = 2.0 * std::numbers::sqrt2 * delta / sqrt_pi;
  const double gap = gamma_i - gamma_r;

  SparsistencyCertificate cert;
  cert.model = model;
  cert.D = gs.D;
  cert.R = gs.R;
  cert.gap_condition = gap > noise_term;

  double bound = 0.0;
  switch (model) {
    case ModelKind::HyperedgeSelection:
      bound = (sqrt_pi * gap - 2.0 * std::numbers::sqrt2 * delta) / (gs.D * sqrt_pi);
      cert.probability_note = "support recovered with probability >= (1 - 1/(1+c^2 n))^n";
      break;
    case ModelKind::JointSelection:
      bound = (sqrt_pi * gap - 2.0 * std::numbers::sqrt2 * delta) / (2.0 * sqrt_pi * gs.D * gs.R);
      cert.probability_note = "support recovered with probability >= 1 - O(1/n)";
      break;
    default:
      throw std::invalid_argument("no support-recovery certificate for model " + to_string(model));
  }
  cert.lambda_max = cert.gap_condition ? std::max(bound, 0.0) : 0.0;
  return cert;
}

}  // namespace hypersparse
