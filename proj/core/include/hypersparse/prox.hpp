#ifndef HYPERSPARSE_PROX_HPP
#define HYPERSPARSE_PROX_HPP

#include <Eigen/Core>

namespace hypersparse {

// Euclidean projection onto {u : ||u||_1 <= radius}, sorted-threshold method.
Eigen::VectorXd project_l1_ball(const Eigen::VectorXd& v, double radius);

// prox of tau * ||.||_1: elementwise soft threshold.
Eigen::VectorXd prox_l1(const Eigen::VectorXd& v, double tau);

// prox of tau * ||.||_inf, via the Moreau identity
// v = prox_linf(v, tau) + project_l1_ball(v, tau).
Eigen::VectorXd prox_linf(const Eigen::VectorXd& v, double tau);

// prox of u -> tau * ||u||_1^2. Exact active-set solve: the minimizer is
// u_i = sign(v_i) * max(|v_i| - 2*tau*S, 0) with S = ||u||_1 determined by
// sorting |v| and growing the active set.
Eigen::VectorXd prox_sql1(const Eigen::VectorXd& v, double tau);

}  // namespace hypersparse

#endif  // HYPERSPARSE_PROX_HPP
