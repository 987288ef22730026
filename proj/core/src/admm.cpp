#include "hypersparse/admm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hypersparse/errors.hpp"
#include "hypersparse/prox.hpp"
#include "hypersparse/smoothness.hpp"

namespace hypersparse {

namespace {

void check_labels(const LabeledProblem& labels, int n) {
  if (labels.y.size() != n || static_cast<int>(labels.mask.size()) != n)
    throw std::invalid_argument("labels and mask must have one entry per node");
  if (labels.observed_count() == 0)
    throw std::invalid_argument("at least one node must be labeled");
}

// Projection of b onto the scaled simplex {a >= 0, sum a = tau}.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& b, double tau) {
  std::vector<double> s(b.data(), b.data() + b.size());
  std::sort(s.begin(), s.end(), std::greater<double>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    cumsum += s[j];
    const double t = (cumsum - tau) / static_cast<double>(j + 1);
    if (s[j] - t <= 0.0) break;
    theta = t;
  }
  return (b.array() - theta).cwiseMax(0.0);
}

}  // namespace

QuadSubproblemResult solve_quadratic_subproblem(const std::vector<std::uint8_t>& mask,
                                                const Eigen::VectorXd& y,
                                                const StackedOperator& A, double rho,
                                                const Eigen::VectorXd& reg_rhs,
                                                const Eigen::VectorXd* warm_start, double tol) {
  const int n = A.n();
  const int m = A.m();
  const int dim = n + m;
  if (auto bad = A.unlabeled_component_node(mask))
    throw SingularSystemError("connected component of node " + std::to_string(*bad) +
                              " has no labeled node; system is singular");

  Eigen::VectorXd b = reg_rhs;
  if (b.size() == 0) b = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < n; ++i)
    if (mask[i]) b[i] += y[i];

  // Jacobi preconditioner diag(M_L + rho A^T A).
  Eigen::VectorXd inv_diag(dim);
  for (int i = 0; i < n; ++i)
    inv_diag[i] = 1.0 / ((mask[i] ? 1.0 : 0.0) + rho * A.node_degree(i));
  for (int k = 0; k < m; ++k) inv_diag[n + k] = 1.0 / (rho * A.block_size(k));

  Eigen::VectorXd z_buf(A.rows());
  Eigen::VectorXd tmp(dim);
  auto apply_system = [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    A.apply(x, z_buf);
    A.apply_transpose(z_buf, out);
    out *= rho;
    for (int i = 0; i < n; ++i)
      if (mask[i]) out[i] += x[i];
  };

  QuadSubproblemResult res;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    res.x = Eigen::VectorXd::Zero(dim);
    return res;
  }

  Eigen::VectorXd x = warm_start && warm_start->size() == dim ? *warm_start
                                                              : Eigen::VectorXd::Zero(dim);
  apply_system(x, tmp);
  Eigen::VectorXd r = b - tmp;
  Eigen::VectorXd zp = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = zp;
  double rz = r.dot(zp);

  const int max_cg = std::max(200, 8 * dim);
  int it = 0;
  double rel = r.norm() / bnorm;
  while (rel > tol && it < max_cg) {
    apply_system(p, tmp);
    const double alpha = rz / p.dot(tmp);
    x += alpha * p;
    r -= alpha * tmp;
    rel = r.norm() / bnorm;
    zp = inv_diag.cwiseProduct(r);
    const double rz_new = r.dot(zp);
    p = zp + (rz_new / rz) * p;
    rz = rz_new;
    ++it;
  }
  res.x = std::move(x);
  res.cg_iterations = it;
  res.rel_residual = rel;
  return res;
}

double equivalent_objective(const Hypergraph& h, const LabeledProblem& labels, ModelKind model,
                            double lambda, const WeightScheme& ws, const Eigen::VectorXd& f,
                            const Eigen::VectorXd& mu) {
  double fit = 0.0;
  for (int i = 0; i < h.n; ++i) {
    if (!labels.mask[i]) continue;
    const double d = f[i] - labels.y[i];
    fit += 0.5 * d * d;
  }
  double reg = 0.0;
  for (int k = 0; k < h.m(); ++k) {
    const auto& e = h.edges[k];
    const double w = resolve_weight(e, ws);
    double block = 0.0;
    switch (model) {
      case ModelKind::Dense:
        for (NodeId i : e.nodes) {
          const double d = f[i] - mu[k];
          block += d * d;
        }
        break;
      case ModelKind::HyperedgeSelection:
        for (NodeId i : e.nodes) block = std::max(block, std::abs(f[i] - mu[k]));
        break;
      case ModelKind::NodeSelection: {
        double l1 = 0.0;
        for (NodeId i : e.nodes) l1 += std::abs(f[i] - mu[k]);
        block = l1 * l1;
        break;
      }
      case ModelKind::JointSelection:
        for (NodeId i : e.nodes) block += std::abs(f[i] - mu[k]);
        break;
    }
    reg += w * block;
  }
  return fit + lambda * reg;
}

namespace {

void apply_block_prox(ModelKind model, double lambda, double rho, const std::vector<double>& w,
                      const StackedOperator& A, const Eigen::VectorXd& v, Eigen::VectorXd& z) {
  z.resize(v.size());
  for (int k = 0; k < A.m(); ++k) {
    const int off = A.block_offset(k);
    const int len = A.block_size(k);
    const Eigen::VectorXd vk = v.segment(off, len);
    const double tau = lambda * w[k] / rho;
    switch (model) {
      case ModelKind::HyperedgeSelection:
        z.segment(off, len) = prox_linf(vk, tau);
        break;
      case ModelKind::JointSelection:
        z.segment(off, len) = prox_l1(vk, tau);
        break;
      case ModelKind::NodeSelection:
        z.segment(off, len) = prox_sql1(vk, tau);
        break;
      case ModelKind::Dense:
        z.segment(off, len) = vk / (1.0 + 2.0 * tau);
        break;
    }
  }
}

}  // namespace

AdmmResult admm_solve(const Hypergraph& h, const LabeledProblem& labels, ModelKind model,
                      double lambda, const WeightScheme& ws, const AdmmConfig& cfg,
                      const AdmmState* warm) {
  validate_or_throw(h);
  check_labels(labels, h.n);
  if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (!(cfg.rho > 0.0)) throw std::invalid_argument("rho must be > 0");
  if (cfg.over_relaxation < 1.0 || cfg.over_relaxation > 1.8)
    throw std::invalid_argument("over_relaxation must be in [1, 1.8]");
  if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");

  const StackedOperator A(h);
  if (auto bad = A.unlabeled_component_node(labels.mask))
    throw SingularSystemError("connected component of node " + std::to_string(*bad) +
                              " has no labeled node");
  const auto w = resolve_weights(h, ws);
  const int n = h.n;
  const int m = h.m();
  const int dim = n + m;
  const int rows = A.rows();
  double rho = cfg.rho;

  Eigen::VectorXd x(dim), z(rows), u(rows);
  if (warm && warm->x.size() == dim && warm->z.size() == rows && warm->u.size() == rows) {
    x = warm->x;
    z = warm->z;
    u = warm->u;
  } else {
    double mean_obs = 0.0;
    int cnt = 0;
    for (int i = 0; i < n; ++i)
      if (labels.mask[i]) {
        mean_obs += labels.y[i];
        ++cnt;
      }
    mean_obs /= std::max(cnt, 1);
    for (int i = 0; i < n; ++i) x[i] = labels.mask[i] ? labels.y[i] : mean_obs;
    for (int k = 0; k < m; ++k) {
      double s = 0.0;
      for (NodeId i : h.edges[k].nodes) s += x[i];
      x[n + k] = s / h.edges[k].size();
    }
    A.apply(x, z);
    u.setZero(rows);
  }

  const double alpha = cfg.over_relaxation;
  Eigen::VectorXd ax(rows), ax_hat(rows), v(rows), z_old(rows), dual_vec(dim);
  Diagnostics diag;
  diag.objective_trace.reserve(256);

  double best_obj = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x = x;

  auto objective_at = [&](const Eigen::VectorXd& xx) {
    return equivalent_objective(h, labels, model, lambda, ws,
                                xx.head(n), xx.tail(m));
  };

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    // x-update: (M_L + rho A^T A) x = M_L y + rho A^T (z - u)
    Eigen::VectorXd reg_rhs = rho * A.apply_transpose(z - u);
    auto sub = solve_quadratic_subproblem(labels.mask, labels.y, A, rho, reg_rhs, &x, cfg.cg_tol);
    x = std::move(sub.x);

    A.apply(x, ax);
    z_old = z;
    ax_hat = alpha * ax + (1.0 - alpha) * z_old;
    v = ax_hat + u;
    apply_block_prox(model, lambda, rho, w, A, v, z);
    u += ax_hat - z;

    const double r_norm = (ax - z).norm();
    A.apply_transpose(z - z_old, dual_vec);
    const double s_norm = rho * dual_vec.norm();
    A.apply_transpose(u, dual_vec);
    const double dual_scale = rho * dual_vec.norm();
    diag.eps_primal = std::sqrt(static_cast<double>(rows)) * cfg.tol_abs +
                      cfg.tol_rel * std::max(ax.norm(), z.norm());
    diag.eps_dual = std::sqrt(static_cast<double>(dim)) * cfg.tol_abs + cfg.tol_rel * dual_scale;
    diag.primal_residual = r_norm;
    diag.dual_residual = s_norm;

    // The trace records the incumbent (the iterate that would be returned if
    // stopping now), matching the best-iterate return contract.
    const double obj = objective_at(x);
    if (obj < best_obj) {
      best_obj = obj;
      best_x = x;
    }
    diag.objective_trace.push_back(best_obj);
    diag.iterations = iter + 1;

    if (r_norm <= diag.eps_primal && s_norm <= diag.eps_dual) {
      diag.converged = true;
      break;
    }

    if (cfg.adapt_rho && (iter + 1) % 10 == 0) {
      if (r_norm > 10.0 * s_norm) {
        rho *= 2.0;
        u *= 0.5;
      } else if (s_norm > 10.0 * r_norm) {
        rho *= 0.5;
        u *= 2.0;
      }
    }
  }

  Eigen::VectorXd x_final = best_x;

  // Degenerate-face centering. At the optimum, unlabeled nodes that bind no
  // constraint are free on an interval: for the max-norm model the
  // intersection of the per-edge slack intervals, for the l1 model the
  // weighted-median set of the edge representatives. Both moves keep the
  // objective (an unlabeled node has no fit term and stays inside every
  // slack), so pick the midpoint to make predictions deterministic, matching
  // the interval-midpoint rule of out-of-sample prediction.
  if (model == ModelKind::HyperedgeSelection || model == ModelKind::JointSelection) {
    std::vector<std::vector<int>> memberships(n);
    for (int k = 0; k < m; ++k)
      for (NodeId i : h.edges[k].nodes) memberships[i].push_back(k);

    if (model == ModelKind::HyperedgeSelection) {
      // Alternate mid-range updates with interval centering; every step keeps
      // each edge's max deviation from growing, so the pass is
      // objective-nonincreasing and settles in a few rounds.
      std::vector<double> slack(m);
      for (int pass = 0; pass < 4; ++pass) {
        for (int k = 0; k < m; ++k) {
          const auto vals = restrict_to_edge(x_final.head(n), h.edges[k]);
          const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
          x_final[n + k] = 0.5 * (*lo + *hi);
          slack[k] = 0.5 * (*hi - *lo);
        }
        for (int i = 0; i < n; ++i) {
          if (labels.mask[i] || memberships[i].empty()) continue;
          double lo = -std::numeric_limits<double>::infinity();
          double hi = std::numeric_limits<double>::infinity();
          for (int k : memberships[i]) {
            lo = std::max(lo, x_final[n + k] - slack[k]);
            hi = std::min(hi, x_final[n + k] + slack[k]);
          }
          if (lo <= hi) x_final[i] = 0.5 * (lo + hi);
        }
      }
    } else {
      for (int i = 0; i < n; ++i) {
        if (labels.mask[i] || memberships[i].empty()) continue;
        std::vector<double> mus, mws;
        for (int k : memberships[i]) {
          mus.push_back(x_final[n + k]);
          mws.push_back(w[k]);
        }
        x_final[i] = weighted_median_interval(mus, mws).midpoint();
      }
    }
  }

  AdmmResult res;
  res.f = x_final.head(n);
  res.mu.resize(m);
  res.delta.resize(m);
  for (int k = 0; k < m; ++k) {
    const auto vals = restrict_to_edge(res.f, h.edges[k]);
    const auto es = edge_smoothness(model, vals, w[k]);
    res.mu[k] = es.mu;
    res.delta[k] = es.value / w[k];
  }
  res.objective = equivalent_objective(h, labels, model, lambda, ws, res.f, res.mu);
  res.diagnostics = std::move(diag);
  res.state = AdmmState{x_final, z, u};
  return res;
}

double kkt_residual(const Hypergraph& h, const LabeledProblem& labels, ModelKind model,
                    double lambda, const WeightScheme& ws, const Eigen::VectorXd& f,
                    const Eigen::VectorXd& mu, const Eigen::VectorXd& dual_y, double zero_tol) {
  const StackedOperator A(h);
  const auto w = resolve_weights(h, ws);
  const int n = h.n;
  const int m = h.m();

  Eigen::VectorXd x(n + m);
  x.head(n) = f;
  x.tail(m) = mu;
  const Eigen::VectorXd z = A.apply(x);

  Eigen::VectorXd y_star = Eigen::VectorXd::Zero(A.rows());
  for (int k = 0; k < m; ++k) {
    const int off = A.block_offset(k);
    const int len = A.block_size(k);
    const Eigen::VectorXd zk = z.segment(off, len);
    Eigen::VectorXd yk = dual_y.size() == A.rows() ? Eigen::VectorXd(dual_y.segment(off, len))
                                                   : Eigen::VectorXd::Zero(len);
    const double lw = lambda * w[k];
    switch (model) {
      case ModelKind::Dense:
        yk = 2.0 * lw * zk;
        break;
      case ModelKind::JointSelection:
        for (int i = 0; i < len; ++i)
          yk[i] = std::abs(zk[i]) <= zero_tol ? std::clamp(yk[i], -lw, lw)
                                              : lw * (zk[i] > 0 ? 1.0 : -1.0);
        break;
      case ModelKind::NodeSelection: {
        const double S = zk.lpNorm<1>();
        const double tau = 2.0 * lw * S;
        if (S <= zero_tol) {
          yk.setZero();
        } else {
          for (int i = 0; i < len; ++i)
            yk[i] = std::abs(zk[i]) <= zero_tol ? std::clamp(yk[i], -tau, tau)
                                                : tau * (zk[i] > 0 ? 1.0 : -1.0);
        }
        break;
      }
      case ModelKind::HyperedgeSelection: {
        const double M = zk.lpNorm<Eigen::Infinity>();
        if (lw == 0.0) {
          yk.setZero();
        } else if (M <= zero_tol) {
          if (yk.lpNorm<1>() > lw) yk = project_l1_ball(yk, lw);
        } else {
          // Subdifferential support lies on the (near) maximal coordinates
          // with matching signs and total mass lw.
          const double tie = std::max(zero_tol, 1e-9 * M);
          std::vector<int> eligible;
          for (int i = 0; i < len; ++i)
            if (std::abs(zk[i]) >= M - tie) eligible.push_back(i);
          Eigen::VectorXd b(eligible.size());
          for (std::size_t j = 0; j < eligible.size(); ++j) {
            const int i = eligible[j];
            b[j] = yk[i] * (zk[i] > 0 ? 1.0 : -1.0);
          }
          const Eigen::VectorXd a = project_simplex(b, lw);
          yk.setZero();
          for (std::size_t j = 0; j < eligible.size(); ++j) {
            const int i = eligible[j];
            yk[i] = a[j] * (zk[i] > 0 ? 1.0 : -1.0);
          }
        }
        break;
      }
    }
    y_star.segment(off, len) = yk;
  }

  Eigen::VectorXd grad = A.apply_transpose(y_star);
  for (int i = 0; i < n; ++i)
    if (labels.mask[i]) grad[i] += f[i] - labels.y[i];
  return grad.lpNorm<Eigen::Infinity>();
}

}  // namespace hypersparse
