#ifndef HYPERSPARSE_ADMM_HPP
#define HYPERSPARSE_ADMM_HPP

#include <vector>

#include "hypersparse/stacked_operator.hpp"
#include "hypersparse/types.hpp"

namespace hypersparse {

struct AdmmConfig {
  double rho = 1.0;
  double tol_abs = 1e-8;
  double tol_rel = 1e-6;
  int max_iter = 10000;
  double over_relaxation = 1.0;  // alpha in [1, 1.8]
  bool adapt_rho = false;        // residual balancing, off for determinism
  double cg_tol = 1e-10;         // relative residual of the x-update solve
};

struct Diagnostics {
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double eps_primal = 0.0;
  double eps_dual = 0.0;
  // Objective of the incumbent solution, one entry per iteration. The
  // incumbent is the best iterate so far, which is also what the solver
  // returns, so the trace is nonincreasing.
  std::vector<double> objective_trace;
  bool converged = false;
};

// Solver state carried across warm starts (lambda grids, CV folds).
struct AdmmState {
  Eigen::VectorXd x;  // (f, mu)
  Eigen::VectorXd z;
  Eigen::VectorXd u;  // scaled dual
};

struct AdmmResult {
  Eigen::VectorXd f;
  Eigen::VectorXd mu;
  std::vector<double> delta;  // per-edge slack of (f, mu), model specific
  double objective = 0.0;
  Diagnostics diagnostics;
  AdmmState state;
};

struct QuadSubproblemResult {
  Eigen::VectorXd x;
  int cg_iterations = 0;
  double rel_residual = 0.0;
};

// Solves (M_L + rho A^T A) x = M_L y + reg_rhs by Jacobi-preconditioned
// conjugate gradient, warm-started from *warm_start when given. M_L is the
// 0/1 diagonal observation mask on the f coordinates. Throws
// SingularSystemError if some star-expansion component has no labeled node.
QuadSubproblemResult solve_quadratic_subproblem(const std::vector<std::uint8_t>& mask,
                                                const Eigen::VectorXd& y,
                                                const StackedOperator& A, double rho,
                                                const Eigen::VectorXd& reg_rhs,
                                                const Eigen::VectorXd* warm_start = nullptr,
                                                double tol = 1e-10);

// Equivalent unconstrained objective
//   1/2 |f - y|^2_L + lambda sum_k w_k N_k((f_i - mu_k)_{i in e_k})
// with N_k the max-norm (HyperedgeSelection), l1 norm (JointSelection),
// squared l1 norm (NodeSelection) or squared l2 norm (Dense).
double equivalent_objective(const Hypergraph& h, const LabeledProblem& labels, ModelKind model,
                            double lambda, const WeightScheme& ws, const Eigen::VectorXd& f,
                            const Eigen::VectorXd& mu);

// Operator-splitting solve of the chosen formulation. Returns the best
// iterate found when the iteration cap is hit (converged=false).
AdmmResult admm_solve(const Hypergraph& h, const LabeledProblem& labels, ModelKind model,
                      double lambda, const WeightScheme& ws, const AdmmConfig& cfg = {},
                      const AdmmState* warm = nullptr);

// Stationarity certificate: the infinity norm of grad g(x) + A^T y* where
// y* is the blockwise projection of dual_y onto the regularizer
// subdifferential at A x. Zero (up to solver tolerance) at an optimum.
double kkt_residual(const Hypergraph& h, const LabeledProblem& labels, ModelKind model,
                    double lambda, const WeightScheme& ws, const Eigen::VectorXd& f,
                    const Eigen::VectorXd& mu, const Eigen::VectorXd& dual_y,
                    double zero_tol = 1e-6);

}  // namespace hypersparse

#endif  // HYPERSPARSE_ADMM_HPP
