#ifndef HYPERSPARSE_STACKED_OPERATOR_HPP
#define HYPERSPARSE_STACKED_OPERATOR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "hypersparse/hypergraph.hpp"

namespace hypersparse {

// Linear map A taking x = (f in R^n, mu in R^m) to the stacked per-edge
// blocks z_k = (f_i - mu_k)_{i in e_k}. Block k occupies rows
// [offset(k), offset(k) + |e_k|).
class StackedOperator {
 public:
  explicit StackedOperator(const Hypergraph& h);

  int n() const { return n_; }
  int m() const { return m_; }
  int rows() const { return static_cast<int>(members_.size()); }
  int cols() const { return n_ + m_; }

  int block_offset(int k) const { return offsets_[k]; }
  int block_size(int k) const { return offsets_[k + 1] - offsets_[k]; }
  NodeId row_member(int row) const { return members_[row]; }

  // z = A x, with x = (f, mu) stacked.
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& z) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  // x = A^T z.
  void apply_transpose(const Eigen::VectorXd& z, Eigen::VectorXd& x) const;
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& z) const;

  // Number of edges containing node i.
  int node_degree(NodeId i) const { return degree_[i]; }

  // Connected-component label per node over the star expansion; isolated
  // nodes form singleton components.
  const std::vector<int>& node_components() const { return component_; }

  // First node of a component with no observed label, if any. Such a
  // component makes M_L + rho A^T A singular.
  std::optional<NodeId> unlabeled_component_node(const std::vector<std::uint8_t>& mask) const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<int> offsets_;       // m + 1 entries
  std::vector<NodeId> members_;    // rows() entries: node id per stacked row
  std::vector<int> degree_;        // per node
  std::vector<int> component_;     // per node
  int n_components_ = 0;
};

}  // namespace hypersparse

#endif  // HYPERSPARSE_STACKED_OPERATOR_HPP
