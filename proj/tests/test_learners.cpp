#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hypersparse/learners.hpp"
#include "hypersparse/rng.hpp"
#include "hypersparse/smoothness.hpp"
#include "oracles.hpp"

using namespace hypersparse;

namespace {

LabeledProblem full_labels(const Eigen::VectorXd& y) {
  LabeledProblem p;
  p.y = y;
  p.mask.assign(y.size(), 1);
  return p;
}

LabeledProblem component_covering_labels(Rng& rng, const Hypergraph& h, double frac) {
  LabeledProblem p;
  p.y.resize(h.n);
  p.mask.assign(h.n, 0);
  for (int i = 0; i < h.n; ++i) {
    p.y[i] = rng.next_double();
    p.mask[i] = rng.next_double() < frac ? 1 : 0;
  }
  const StackedOperator A(h);
  std::vector<std::uint8_t> seen(h.n, 0);
  for (int i = 0; i < h.n; ++i) {
    const int c = A.node_components()[i];
    if (!seen[c]) {
      seen[c] = 1;
      p.mask[i] = 1;
    }
  }
  return p;
}

}  // namespace

TEST_CASE("lambda 0 with full mask reproduces the labels for every model") {
  Rng rng(41);
  const auto h = oracles::random_instance(rng, 10, 3, 4);
  Eigen::VectorXd y(h.n);
  for (int i = 0; i < h.n; ++i) y[i] = rng.next_double();
  for (auto model : {ModelKind::Dense, ModelKind::HyperedgeSelection, ModelKind::NodeSelection,
                     ModelKind::JointSelection}) {
    LearnerConfig cfg;
    cfg.model = model;
    cfg.lambda = 0.0;
    const auto fitres = fit(h, full_labels(y), cfg);
    CHECK((fitres.f_hat - y).lpNorm<Eigen::Infinity>() < 1e-9);
  }
}

TEST_CASE("two-node dense closed form") {
  Hypergraph h;
  h.n = 2;
  h.edges.emplace_back(std::vector<NodeId>{0, 1}, 1.0);
  Eigen::VectorXd y(2);
  y << 0.0, 1.0;
  LearnerConfig cfg;
  cfg.model = ModelKind::Dense;
  cfg.lambda = 0.5;
  cfg.weights = WeightScheme::explicit_weights();
  const auto fitres = fit(h, full_labels(y), cfg);
  // Closed form: the smaller label moves to lambda/(1+2*lambda).
  CHECK(fitres.f_hat[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(fitres.f_hat[1] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("dense fit matches a dense matrix oracle") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = oracles::random_instance(rng, 12, 4, 5);
    const auto labels = component_covering_labels(rng, h, 0.7);
    LearnerConfig cfg;
    cfg.model = ModelKind::Dense;
    cfg.lambda = 0.4;
    const auto fitres = fit(h, labels, cfg);

    // Oracle: clique-expansion Laplacian with pair weights w_k/|e_k|.
    const WeightScheme ws = cfg.resolved_weights();
    const auto w = resolve_weights(h, ws);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(h.n, h.n);
    for (int i = 0; i < h.n; ++i)
      if (labels.mask[i]) M(i, i) += 1.0;
    for (int k = 0; k < h.m(); ++k) {
      const auto& e = h.edges[k].nodes;
      const double pw = w[k] / static_cast<double>(e.size());
      for (std::size_t a = 0; a < e.size(); ++a)
        for (std::size_t b = a + 1; b < e.size(); ++b) {
          M(e[a], e[a]) += 2.0 * cfg.lambda * pw;
          M(e[b], e[b]) += 2.0 * cfg.lambda * pw;
          M(e[a], e[b]) -= 2.0 * cfg.lambda * pw;
          M(e[b], e[a]) -= 2.0 * cfg.lambda * pw;
        }
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(h.n);
    for (int i = 0; i < h.n; ++i)
      if (labels.mask[i]) b[i] = labels.y[i];
    const Eigen::VectorXd want = M.ldlt().solve(b);
    CHECK((fitres.f_hat - want).lpNorm<Eigen::Infinity>() < 1e-8);
  }
}

TEST_CASE("masked fitting never reads hidden labels") {
  Rng rng(43);
  const auto h = oracles::random_instance(rng, 12, 4, 5);
  auto labels = component_covering_labels(rng, h, 0.6);
  auto poisoned = labels;
  for (int i = 0; i < h.n; ++i)
    if (!poisoned.mask[i]) poisoned.y[i] = 999.0;

  for (auto model : {ModelKind::Dense, ModelKind::JointSelection, ModelKind::NodeSelection,
                     ModelKind::HyperedgeSelection}) {
    LearnerConfig cfg;
    cfg.model = model;
    cfg.lambda = 0.3;
    const auto a = fit(h, labels, cfg);
    const auto b = fit(h, poisoned, cfg);
    CHECK((a.f_hat - b.f_hat).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("joint selection fuses an edge at large lambda") {
  Hypergraph h;
  h.n = 3;
  h.edges.emplace_back(std::vector<NodeId>{0, 1, 2});
  Eigen::VectorXd y(3);
  y << 0.0, 0.0, 1.0;
  LearnerConfig cfg;
  cfg.model = ModelKind::JointSelection;
  cfg.lambda = 3.0;  // w = 1/3, large enough to fuse all labels
  const auto fitres = fit(h, full_labels(y), cfg);
  CHECK(std::abs(fitres.f_hat[0] - fitres.f_hat[1]) < 1e-6);
  CHECK(std::abs(fitres.f_hat[0] - fitres.f_hat[2]) < 1e-6);
  CHECK(fitres.delta_hat[0] < 1e-5);

  // Subgradient oracle agrees that the fused solution is optimal.
  const auto w = resolve_weights(h, cfg.resolved_weights());
  const auto oracle = oracles::subgradient_oracle(h, full_labels(y), cfg.model, cfg.lambda, w,
                                                  200000);
  CHECK(fitres.objective <= oracle.best_objective + 1e-5);
}

TEST_CASE("delta recomputation identity") {
  Rng rng(44);
  const auto h = oracles::random_instance(rng, 12, 4, 5);
  const auto labels = component_covering_labels(rng, h, 1.0);
  for (auto model :
       {ModelKind::JointSelection, ModelKind::NodeSelection, ModelKind::HyperedgeSelection}) {
    LearnerConfig cfg;
    cfg.model = model;
    cfg.lambda = 0.2;
    const auto fitres = fit(h, labels, cfg);
    for (int k = 0; k < h.m(); ++k) {
      double expect = 0.0;
      for (auto i : h.edges[k].nodes) {
        const double d = std::abs(fitres.f_hat[i] - fitres.mu_hat[k]);
        if (model == ModelKind::HyperedgeSelection)
          expect = std::max(expect, d);
        else
          expect += d;
      }
      CHECK(fitres.delta_hat[k] == doctest::Approx(expect).epsilon(1e-6));
      // ss recomputed from f_hat reproduces delta * w.
      const auto es = edge_smoothness(model, restrict_to_edge(fitres.f_hat, h.edges[k]),
                                      fitres.edge_weights[k]);
      CHECK(es.value == doctest::Approx(fitres.delta_hat[k] * fitres.edge_weights[k])
                            .epsilon(1e-6));
    }
  }
}

TEST_CASE("refitting from the solution is a fixed point") {
  Rng rng(45);
  const auto h = oracles::random_instance(rng, 10, 3, 4);
  const auto labels = component_covering_labels(rng, h, 0.9);
  LearnerConfig cfg;
  cfg.model = ModelKind::JointSelection;
  cfg.lambda = 0.5;
  const auto first = fit(h, labels, cfg);
  REQUIRE(first.solver_state.has_value());
  const auto second = fit(h, labels, cfg, &*first.solver_state);
  CHECK(std::abs(second.objective - first.objective) < 1e-9);
}

TEST_CASE("lambda path basics") {
  Rng rng(46);
  const auto h = oracles::random_instance(rng, 10, 3, 4);
  const auto labels = component_covering_labels(rng, h, 1.0);

  SUBCASE("grid of only zero gives the pure least-squares fit") {
    const auto path = lambda_path(h, labels, ModelKind::JointSelection, {0.0});
    REQUIRE(path.size() == 1);
    REQUIRE(path[0].result.has_value());
    CHECK((path[0].result->f_hat - labels.y).lpNorm<Eigen::Infinity>() < 1e-9);
  }

  SUBCASE("default grid spans 1e-4 to 1e2 descending") {
    const auto grid = default_lambda_grid();
    REQUIRE(grid.size() == 7);
    CHECK(grid.front() == doctest::Approx(100.0));
    CHECK(grid.back() == doctest::Approx(1e-4));
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] < grid[i - 1]);
  }

  SUBCASE("fit term is nondecreasing in lambda") {
    const auto grid = default_lambda_grid();
    const auto path = lambda_path(h, labels, ModelKind::JointSelection, grid);
    std::vector<double> fit_terms;
    for (const auto& pt : path) {
      REQUIRE(pt.result.has_value());
      double fit_term = 0.0;
      for (int i = 0; i < h.n; ++i)
        if (labels.mask[i]) fit_term += 0.5 * std::pow(pt.result->f_hat[i] - labels.y[i], 2);
      fit_terms.push_back(fit_term);
    }
    // Grid is descending, so the fit term must decrease along the path.
    for (std::size_t i = 1; i < fit_terms.size(); ++i)
      CHECK(fit_terms[i] <= fit_terms[i - 1] + 1e-7);
  }
}

TEST_CASE("lambda path records per-point errors and continues") {
  Hypergraph h;
  h.n = 3;
  h.edges.emplace_back(std::vector<NodeId>{0, 1});
  LabeledProblem labels;
  labels.y = Eigen::VectorXd::Zero(3);
  labels.mask = {1, 1, 0};  // node 2 unlabeled and isolated -> singular
  const auto path = lambda_path(h, labels, ModelKind::JointSelection, {1.0, 0.1});
  REQUIRE(path.size() == 2);
  CHECK_FALSE(path[0].result.has_value());
  CHECK_FALSE(path[1].result.has_value());
  CHECK(path[0].singular);
  CHECK(path[0].error.find("no labeled node") != std::string::npos);
}

TEST_CASE("out-of-sample prediction rules") {
  FitResult fitted;
  fitted.mu_hat.resize(3);
  fitted.mu_hat << 0.2, 0.8, 0.8;
  fitted.edge_weights = {1.0, 1.0, 1.0};

  SUBCASE("single membership returns its representative") {
    FitResult single;
    single.mu_hat.resize(1);
    single.mu_hat << 0.8;
    single.edge_weights = {1.0};
    for (auto model : {ModelKind::Dense, ModelKind::HyperedgeSelection, ModelKind::NodeSelection,
                       ModelKind::JointSelection})
      CHECK(predict_out_of_sample(single, {0}, model) == doctest::Approx(0.8));
  }

  SUBCASE("joint takes the weighted median") {
    CHECK(predict_out_of_sample(fitted, {0, 1, 2}, ModelKind::JointSelection) ==
          doctest::Approx(0.8));
  }

  SUBCASE("even tie resolves to the interval midpoint") {
    CHECK(predict_out_of_sample(fitted, {0, 1}, ModelKind::JointSelection) ==
          doctest::Approx(0.5));
  }

  SUBCASE("dense takes the weighted mean") {
    CHECK(predict_out_of_sample(fitted, {0, 1, 2}, ModelKind::Dense) ==
          doctest::Approx((0.2 + 0.8 + 0.8) / 3.0));
  }

  SUBCASE("hyperedge selection takes the weighted mid-range") {
    CHECK(predict_out_of_sample(fitted, {0, 1}, ModelKind::HyperedgeSelection) ==
          doctest::Approx(0.5));
    FitResult weighted;
    weighted.mu_hat.resize(2);
    weighted.mu_hat << 0.0, 1.0;
    weighted.edge_weights = {2.0, 1.0};
    // 2|x| = |x - 1| -> x = 1/3.
    CHECK(predict_out_of_sample(weighted, {0, 1}, ModelKind::HyperedgeSelection) ==
          doctest::Approx(1.0 / 3.0));
  }

  SUBCASE("empty membership throws") {
    CHECK_THROWS_AS(predict_out_of_sample(fitted, {}, ModelKind::Dense), std::invalid_argument);
  }
}

TEST_CASE("out-of-sample consistency on a training node") {
  // Re-solving the fixed-mu problem for an existing node cannot yield a
  // larger fixed-mu penalty than the trained value.
  Rng rng(47);
  const auto h = oracles::random_instance(rng, 10, 3, 4);
  const auto labels = component_covering_labels(rng, h, 1.0);
  LearnerConfig cfg;
  cfg.model = ModelKind::JointSelection;
  cfg.lambda = 0.1;
  const auto fitted = fit(h, labels, cfg);

  for (int i = 0; i < h.n; ++i) {
    std::vector<EdgeId> memberships;
    for (int k = 0; k < h.m(); ++k)
      for (auto node : h.edges[k].nodes)
        if (node == i) memberships.push_back(k);
    if (memberships.empty()) continue;
    const double pred = predict_out_of_sample(fitted, memberships, cfg.model);
    auto penalty = [&](double x) {
      double acc = 0.0;
      for (EdgeId k : memberships)
        acc += fitted.edge_weights[k] * std::abs(x - fitted.mu_hat[k]);
      return acc;
    };
    CHECK(penalty(pred) <= penalty(fitted.f_hat[i]) + 1e-8);
  }
}

TEST_CASE("classify_support with explicit threshold") {
  FitResult fitted;
  fitted.delta_hat = {0.01, 0.02, 0.5};
  fitted.edge_weights = {1.0, 1.0, 1.0};
  const auto rep = classify_support(fitted, 0.1);
  CHECK(rep.relevant == std::vector<EdgeId>{0, 1});
  CHECK(rep.irrelevant == std::vector<EdgeId>{2});
  CHECK(rep.gap == doctest::Approx(0.48));
  CHECK_FALSE(rep.zero_gap);
}

TEST_CASE("classify_support auto threshold") {
  SUBCASE("finds the largest gap") {
    FitResult fitted;
    fitted.delta_hat = {0.011, 0.008, 0.41, 0.52};
    fitted.edge_weights = {1.0, 1.0, 1.0, 1.0};
    const auto rep = classify_support(fitted, AutoGamma{});
    CHECK(rep.relevant == std::vector<EdgeId>{0, 1});
    CHECK(rep.irrelevant == std::vector<EdgeId>{2, 3});
    CHECK(rep.gamma == doctest::Approx(0.5 * (0.011 + 0.41)));
  }
  SUBCASE("all-equal values flag a zero gap") {
    FitResult fitted;
    fitted.delta_hat = {0.2, 0.2, 0.2};
    fitted.edge_weights = {1.0, 1.0, 1.0};
    const auto rep = classify_support(fitted, AutoGamma{});
    CHECK(rep.zero_gap);
    CHECK(rep.relevant.size() == 3);
    CHECK(rep.irrelevant.empty());
  }
}

TEST_CASE("hyperedge selection sparsity is monotone in lambda") {
  // Noiseless smooth planted instance: labels piecewise constant, one edge
  // per level plus one mixed edge.
  Hypergraph h;
  h.n = 12;
  h.edges.emplace_back(std::vector<NodeId>{0, 1, 2, 3});
  h.edges.emplace_back(std::vector<NodeId>{4, 5, 6, 7});
  h.edges.emplace_back(std::vector<NodeId>{8, 9, 10, 11});
  h.edges.emplace_back(std::vector<NodeId>{0, 4, 8, 11});
  Eigen::VectorXd y(12);
  y << 0.1, 0.1, 0.1, 0.1, 0.5, 0.5, 0.5, 0.5, 0.9, 0.9, 0.9, 0.9;
  const auto labels = full_labels(y);

  int last_count = 0;
  for (double lambda : {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
    LearnerConfig cfg;
    cfg.model = ModelKind::HyperedgeSelection;
    cfg.lambda = lambda;
    const auto fitres = fit(h, labels, cfg);
    int count = 0;
    for (double d : fitres.delta_hat)
      if (d <= 1e-6) ++count;
    CHECK(count >= last_count);
    last_count = count;
  }
}

TEST_CASE("sparsistency certificate formulas") {
  Hypergraph h;
  h.n = 20;
  h.edges.emplace_back(std::vector<NodeId>{0, 1, 2, 3, 4});

  SUBCASE("noiseless case always certifies") {
    const auto cert = sparsistency_certificate(h, ModelKind::JointSelection, 0.1, 0.5, 0.0,
                                               WeightScheme::inverse_cardinality());
    CHECK(cert.gap_condition);
    CHECK(cert.lambda_max > 0.0);
  }

  SUBCASE("boundary gap fails the strict condition") {
    const double delta = 0.05;
    const double boundary = 2.0 * std::numbers::sqrt2 * delta / std::sqrt(std::numbers::pi);
    const auto cert = sparsistency_certificate(h, ModelKind::JointSelection, 0.1, 0.1 + boundary,
                                               delta, WeightScheme::inverse_cardinality());
    CHECK_FALSE(cert.gap_condition);
    CHECK(cert.lambda_max == 0.0);
  }

  SUBCASE("joint model quoted formula") {
    // D = 4, R = 0.25 for the 5-node edge in a 20-node hypergraph with 1/|e|.
    const auto cert = sparsistency_certificate(h, ModelKind::JointSelection, 0.1, 0.5, 0.05,
                                               WeightScheme::inverse_cardinality());
    CHECK(cert.D == doctest::Approx(4.0));
    CHECK(cert.R == doctest::Approx(0.25));
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    const double want = (sqrt_pi * 0.4 - 2.0 * std::numbers::sqrt2 * 0.05) /
                        (2.0 * sqrt_pi * 4.0 * 0.25);
    CHECK(cert.lambda_max == doctest::Approx(want).epsilon(1e-15));
  }

  SUBCASE("edge model quoted formula") {
    const auto cert = sparsistency_certificate(h, ModelKind::HyperedgeSelection, 0.1, 0.5, 0.05,
                                               WeightScheme::unit());
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    // Unit weights: D = n * 1 = 20 on covered nodes.
    CHECK(cert.D == doctest::Approx(20.0));
    const double want = (sqrt_pi * 0.4 - 2.0 * std::numbers::sqrt2 * 0.05) / (20.0 * sqrt_pi);
    CHECK(cert.lambda_max == doctest::Approx(want).epsilon(1e-15));
  }

  SUBCASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(sparsistency_certificate(h, ModelKind::JointSelection, 0.5, 0.5, 0.0,
                                             WeightScheme::unit()),
                    std::invalid_argument);
    CHECK_THROWS_AS(sparsistency_certificate(h, ModelKind::Dense, 0.1, 0.5, 0.0,
                                             WeightScheme::unit()),
                    std::invalid_argument);
  }
}

TEST_CASE("default weight schemes per model") {
  CHECK(default_weight_scheme(ModelKind::HyperedgeSelection).kind == WeightSchemeKind::Unit);
  CHECK(default_weight_scheme(ModelKind::JointSelection).kind ==
        WeightSchemeKind::InverseCardinality);
  CHECK(default_weight_scheme(ModelKind::NodeSelection).kind ==
        WeightSchemeKind::InverseCardinality);
  CHECK(default_weight_scheme(ModelKind::Dense).kind == WeightSchemeKind::InverseCardinality);
}
