#include "hypersparse/cross_validation.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hypersparse/rng.hpp"

namespace hypersparse {

void CvSpec::validate() const {
  if (folds < 2) throw std::invalid_argument("cross-validation needs >= 2 folds");
  if (lambda_grid.empty()) throw std::invalid_argument("lambda grid must be nonempty");
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

double rmse(const Eigen::VectorXd& pred, const Eigen::VectorXd& truth,
            const std::vector<int>& indices) {
  if (indices.empty()) throw std::invalid_argument("rmse over empty index set");
  double acc = 0.0;
  for (int i : indices) {
    const double d = pred[i] - truth[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(indices.size()));
}

void parallel_for_tasks(int count, int threads, const std::function<void(int)>& task) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int t = 0; t < count; ++t) task(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int t = next.fetch_add(1);
        if (t >= count) return;
        task(t);
      }
    });
  }
  for (auto& th : pool) th.join();
}

CvResult cross_validate(const Hypergraph& h, const Eigen::VectorXd& y, ModelKind model,
                        const CvSpec& cv) {
  cv.validate();
  validate_or_throw(h);
  const int n = h.n;
  if (y.size() != n) throw std::invalid_argument("label vector length must equal node count");
  if (cv.folds > n) throw std::invalid_argument("more folds than nodes");

  // Fold assignment per repeat: seeded shuffle, then striped so fold sizes
  // differ by at most one.
  std::vector<std::vector<std::vector<int>>> fold_indices(cv.repeats);
  for (int r = 0; r < cv.repeats; ++r) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Rng rng = Rng::substream(cv.seed, 100 + static_cast<std::uint64_t>(r));
    rng.shuffle(perm);
    fold_indices[r].assign(cv.folds, {});
    for (int i = 0; i < n; ++i) fold_indices[r][i % cv.folds].push_back(perm[i]);
  }

  const int n_lambda = static_cast<int>(cv.lambda_grid.size());
  const int cells = cv.repeats * cv.folds;
  // rmse_table[lambda][repeat * folds + fold]; NaN marks a failed fit.
  std::vector<std::vector<double>> rmse_table(
      n_lambda, std::vector<double>(cells, std::numeric_limits<double>::quiet_NaN()));
  std::vector<std::vector<std::string>> cell_errors(cells);
  CvResult result;

  parallel_for_tasks(cells, cv.threads, [&](int cell) {
    const int r = cell / cv.folds;
    const int f = cell % cv.folds;
    const auto& test = fold_indices[r][f];

    LabeledProblem labels;
    labels.y = y;
    labels.mask.assign(n, 1);
    for (int i : test) labels.mask[i] = 0;

    const auto path = lambda_path(h, labels, model, cv.lambda_grid, cv.weights, cv.solver);
    for (int li = 0; li < n_lambda; ++li) {
      const auto& pt = path[li];
      if (pt.result) {
        rmse_table[li][cell] = rmse(pt.result->f_hat, y, test);
      } else {
        cell_errors[cell].push_back("repeat " + std::to_string(r) + " fold " + std::to_string(f) +
                                    " lambda " + std::to_string(pt.lambda) + ": " + pt.error);
      }
    }
  });
  for (auto& errs : cell_errors)
    for (auto& e : errs) result.errors.push_back(std::move(e));

  result.per_lambda.resize(n_lambda);
  int best_index = -1;
  for (int li = 0; li < n_lambda; ++li) {
    auto& stat = result.per_lambda[li];
    stat.lambda = cv.lambda_grid[li];
    stat.rmse.assign(cv.repeats, std::vector<double>(cv.folds, 0.0));
    stat.repeat_means.assign(cv.repeats, 0.0);
    double total = 0.0;
    int count = 0;
    for (int r = 0; r < cv.repeats; ++r) {
      double rep_sum = 0.0;
      int rep_count = 0;
      for (int f = 0; f < cv.folds; ++f) {
        const double v = rmse_table[li][r * cv.folds + f];
        stat.rmse[r][f] = v;
        if (std::isnan(v)) {
          ++result.failed_fits;
          continue;
        }
        rep_sum += v;
        ++rep_count;
        total += v;
        ++count;
      }
      stat.repeat_means[r] = rep_count > 0 ? rep_sum / rep_count
                                           : std::numeric_limits<double>::quiet_NaN();
    }
    stat.mean_rmse = count > 0 ? total / count : std::numeric_limits<double>::quiet_NaN();

    double var = 0.0;
    int reps = 0;
    for (double rm : stat.repeat_means) {
      if (std::isnan(rm)) continue;
      const double d = rm - stat.mean_rmse;
      var += d * d;
      ++reps;
    }
    stat.std_over_repeats = reps > 1 ? std::sqrt(var / (reps - 1)) : 0.0;

    if (!std::isnan(stat.mean_rmse) &&
        (best_index < 0 || stat.mean_rmse < result.per_lambda[best_index].mean_rmse))
      best_index = li;
  }

  if (best_index >= 0) {
    result.best_lambda = result.per_lambda[best_index].lambda;
    result.best_rmse = result.per_lambda[best_index].mean_rmse;
    result.best_std = result.per_lambda[best_index].std_over_repeats;
  }
  return result;
}

}  // namespace hypersparse
