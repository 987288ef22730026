#include "hypersparse/stacked_operator.hpp"

#include <numeric>

namespace hypersparse {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

StackedOperator::StackedOperator(const Hypergraph& h) : n_(h.n), m_(h.m()) {
  offsets_.reserve(m_ + 1);
  offsets_.push_back(0);
  members_.reserve(h.total_pins());
  degree_.assign(n_, 0);
  for (const auto& e : h.edges) {
    for (NodeId i : e.nodes) {
      members_.push_back(i);
      ++degree_[i];
    }
    offsets_.push_back(static_cast<int>(members_.size()));
  }

  // Union-find over nodes; each edge merges its members.
  std::vector<int> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& e : h.edges) {
    for (std::size_t j = 1; j < e.nodes.size(); ++j) {
      const int a = find_root(parent, e.nodes[0]);
      const int b = find_root(parent, e.nodes[j]);
      if (a != b) parent[b] = a;
    }
  }
  component_.assign(n_, -1);
  for (int i = 0; i < n_; ++i) {
    const int r = find_root(parent, i);
    if (component_[r] < 0) component_[r] = n_components_++;
    component_[i] = component_[r];
  }
}

void StackedOperator::apply(const Eigen::VectorXd& x, Eigen::VectorXd& z) const {
  z.resize(rows());
  for (int k = 0; k < m_; ++k) {
    const double mu = x[n_ + k];
    for (int r = offsets_[k]; r < offsets_[k + 1]; ++r) z[r] = x[members_[r]] - mu;
  }
}

Eigen::VectorXd StackedOperator::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd z;
  apply(x, z);
  return z;
}

void StackedOperator::apply_transpose(const Eigen::VectorXd& z, Eigen::VectorXd& x) const {
  x.setZero(cols());
  for (int k = 0; k < m_; ++k) {
    double msum = 0.0;
    for (int r = offsets_[k]; r < offsets_[k + 1]; ++r) {
      x[members_[r]] += z[r];
      msum += z[r];
    }
    x[n_ + k] = -msum;
  }
}

Eigen::VectorXd StackedOperator::apply_transpose(const Eigen::VectorXd& z) const {
  Eigen::VectorXd x;
  apply_transpose(z, x);
  return x;
}

std::optional<NodeId> StackedOperator::unlabeled_component_node(
    const std::vector<std::uint8_t>& mask) const {
  std::vector<std::uint8_t> labeled(n_components_, 0);
  for (int i = 0; i < n_; ++i)
    if (mask[i]) labeled[component_[i]] = 1;
  for (int i = 0; i < n_; ++i)
    if (!labeled[component_[i]]) return i;
  return std::nullopt;
}

}  // namespace hypersparse
