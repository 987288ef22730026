#include "hypersparse/prox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hypersparse {

Eigen::VectorXd project_l1_ball(const Eigen::VectorXd& v, double radius) {
  if (radius < 0.0) throw std::invalid_argument("l1 ball radius must be >= 0");
  const double l1 = v.lpNorm<1>();
  if (l1 <= radius) return v;
  if (radius == 0.0) return Eigen::VectorXd::Zero(v.size());

  std::vector<double> u(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) u[i] = std::abs(v[i]);
  std::sort(u.begin(), u.end(), std::greater<double>());

  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double t = (cumsum - radius) / static_cast<double>(j + 1);
    if (u[j] - t <= 0.0) break;
    theta = t;
  }

  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::max(std::abs(v[i]) - theta, 0.0);
    out[i] = std::copysign(mag, v[i]);
  }
  return out;
}

Eigen::VectorXd prox_l1(const Eigen::VectorXd& v, double tau) {
  if (tau < 0.0) throw std::invalid_argument("prox threshold must be >= 0");
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::max(std::abs(v[i]) - tau, 0.0);
    out[i] = std::copysign(mag, v[i]);
  }
  return out;
}

Eigen::VectorXd prox_linf(const Eigen::VectorXd& v, double tau) {
  if (tau < 0.0) throw std::invalid_argument("prox threshold must be >= 0");
  if (tau == 0.0) return v;
  return v - project_l1_ball(v, tau);
}

Eigen::VectorXd prox_sql1(const Eigen::VectorXd& v, double tau) {
  if (tau < 0.0) throw std::invalid_argument("prox threshold must be >= 0");
  if (tau == 0.0 || v.size() == 0) return v;

  std::vector<double> a(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) a[i] = std::abs(v[i]);
  std::sort(a.begin(), a.end(), std::greater<double>());

  // With active set of size k, S = (sum of the k largest |v_i|) / (1 + 2*tau*k).
  // Grow k while the k-th entry stays above the threshold 2*tau*S.
  double cumsum = 0.0;
  double S = 0.0;
  for (std::size_t k = 1; k <= a.size(); ++k) {
    cumsum += a[k - 1];
    const double cand = cumsum / (1.0 + 2.0 * tau * static_cast<double>(k));
    if (a[k - 1] <= 2.0 * tau * cand) break;
    S = cand;
  }

  const double theta = 2.0 * tau * S;
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::max(std::abs(v[i]) - theta, 0.0);
    out[i] = std::copysign(mag, v[i]);
  }
  return out;
}

}  // namespace hypersparse
