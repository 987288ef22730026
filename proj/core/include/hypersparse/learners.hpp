#ifndef HYPERSPARSE_LEARNERS_HPP
#define HYPERSPARSE_LEARNERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "hypersparse/admm.hpp"
#include "hypersparse/hypergraph.hpp"
#include "hypersparse/types.hpp"

namespace hypersparse {

// Per-model default edge weights: HyperedgeSelection uses unit weights, the
// other models 1/|e|.
WeightScheme default_weight_scheme(ModelKind model);

struct LearnerConfig {
  ModelKind model = ModelKind::Dense;
  double lambda = 0.0;
  std::optional<WeightScheme> weights;  // defaults per model
  AdmmConfig solver;

  WeightScheme resolved_weights() const {
    return weights ? *weights : default_weight_scheme(model);
  }
};

struct FitResult {
  ModelKind model = ModelKind::Dense;
  double lambda = 0.0;
  Eigen::VectorXd f_hat;
  Eigen::VectorXd mu_hat;
  std::vector<double> delta_hat;     // per-edge slack, = ss(f_hat, e_k) / w_k
  std::vector<double> edge_weights;  // resolved w(e_k)
  double objective = 0.0;
  Diagnostics diagnostics;
  std::optional<AdmmState> solver_state;  // set for the ADMM models

  // Smoothness value ss(f_hat, e_k) = w_k * delta_hat[k].
  double edge_ss(int k) const { return edge_weights[k] * delta_hat[k]; }
  std::vector<double> edge_ss_values() const;
};

// Fits one model. Dense is a single sparse SPD solve with mu eliminated;
// the sparse models run the operator-splitting solver. The fitting term only
// reads labels where the mask is set.
FitResult fit(const Hypergraph& h, const LabeledProblem& labels, const LearnerConfig& cfg,
              const AdmmState* warm = nullptr);

struct PathPoint {
  double lambda = 0.0;
  std::optional<FitResult> result;
  std::string error;     // nonempty if this grid point failed
  bool singular = false; // failure was a singular system
};

// One fit per grid value, warm-started in grid order.
std::vector<PathPoint> lambda_path(const Hypergraph& h, const LabeledProblem& labels,
                                   ModelKind model, const std::vector<double>& grid,
                                   std::optional<WeightScheme> ws = std::nullopt,
                                   const AdmmConfig& solver = {});

// The grid {10^(i-5)}, i = 1..7, descending.
std::vector<double> default_lambda_grid();

// Label for a new node with known hyperedge memberships, from fixed mu_hat:
// weighted median (Joint/Node), weighted mean (Dense) or weighted mid-range
// (HyperedgeSelection) of the member representatives.
double predict_out_of_sample(const FitResult& fitted, const std::vector<EdgeId>& memberships,
                             ModelKind model);

struct SupportReport {
  double gamma = 0.0;
  std::vector<EdgeId> relevant;    // edges with ss <= gamma
  std::vector<EdgeId> irrelevant;  // the rest
  double gap = 0.0;                // min irrelevant ss - max relevant ss
  bool zero_gap = false;           // Auto threshold found no separation
};

struct AutoGamma {};

SupportReport classify_support(const FitResult& fitted, double gamma);
// Auto picks the midpoint of the largest gap in the sorted per-edge ss
// values; all-equal values yield an all-relevant report with zero_gap set.
SupportReport classify_support(const FitResult& fitted, AutoGamma);

struct SparsistencyCertificate {
  ModelKind model = ModelKind::JointSelection;
  bool gap_condition = false;  // gamma_i - gamma_r > 2*sqrt(2)*delta/sqrt(pi)
  double lambda_max = 0.0;     // 0 when the gap condition fails
  double D = 0.0;
  double R = 0.0;
  std::string probability_note;
};

// Support-recovery certificate. HyperedgeSelection uses the bound
// (sqrt(pi)(gamma_i - gamma_r) - 2 sqrt(2) delta) / (D sqrt(pi)) with success
// probability (1 - 1/(1+c^2 n))^n; JointSelection uses
// (sqrt(pi)(gamma_i - gamma_r) - 2 sqrt(2) delta) / (2 sqrt(pi) D R) with
// probability 1 - O(1/n). Other models have no recovery guarantee and are
// rejected.
SparsistencyCertificate sparsistency_certificate(const Hypergraph& h, ModelKind model,
                                                 double gamma_r, double gamma_i, double delta,
                                                 const WeightScheme& ws);

}  // namespace hypersparse

#endif  // HYPERSPARSE_LEARNERS_HPP
