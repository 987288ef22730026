#ifndef HYPERSPARSE_CROSS_VALIDATION_HPP
#define HYPERSPARSE_CROSS_VALIDATION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hypersparse/learners.hpp"

namespace hypersparse {

struct CvSpec {
  int folds = 10;
  std::vector<double> lambda_grid = default_lambda_grid();
  int repeats = 10;
  std::uint64_t seed = 0;
  int threads = 1;  // folds x repeats are embarrassingly parallel
  std::optional<WeightScheme> weights;  // default: per-model scheme
  AdmmConfig solver;

  void validate() const;
};

struct LambdaCvStat {
  double lambda = 0.0;
  double mean_rmse = 0.0;                       // over all (repeat, fold) cells
  double std_over_repeats = 0.0;                // std of per-repeat means
  std::vector<std::vector<double>> rmse;        // [repeat][fold]
  std::vector<double> repeat_means;             // [repeat]
};

struct CvResult {
  std::vector<LambdaCvStat> per_lambda;
  double best_lambda = 0.0;
  double best_rmse = 0.0;
  double best_std = 0.0;
  int failed_fits = 0;
  std::vector<std::string> errors;
};

// Ten-fold style cross-validation in the transductive setting: test nodes
// stay in the hypergraph, their labels are masked during fitting, and the
// fold RMSE scores predictions against the held-out labels. Fold membership
// is a seeded shuffle per repeat; reduction is by (repeat, fold) index, so
// results do not depend on the thread count.
CvResult cross_validate(const Hypergraph& h, const Eigen::VectorXd& y, ModelKind model,
                        const CvSpec& cv);

double rmse(const Eigen::VectorXd& pred, const Eigen::VectorXd& truth,
            const std::vector<int>& indices);

// Runs tasks 0..count-1 on up to `threads` workers; each task owns its
// output slot.
void parallel_for_tasks(int count, int threads, const std::function<void(int)>& task);

}  // namespace hypersparse

#endif  // HYPERSPARSE_CROSS_VALIDATION_HPP
