#ifndef HYPERSPARSE_IO_HPP
#define HYPERSPARSE_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "hypersparse/hypergraph.hpp"
#include "hypersparse/types.hpp"

namespace hypersparse {

// Canonical hypergraph JSON:
//   {"n": <int>, "edges": [{"nodes": [<int>...], "weight": <float>?}...],
//    "name": <string>?}
// Node lists serialize sorted ascending.
std::string hypergraph_to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const std::string& json_text);
void write_hypergraph_json(const Hypergraph& h, const std::string& path);
Hypergraph read_hypergraph_json(const std::string& path);

// Labels CSV with header "node_id,value"; nodes without a row are unlabeled.
void write_labels_csv(const Eigen::VectorXd& y, const std::vector<std::uint8_t>& mask,
                      const std::string& path);
LabeledProblem read_labels_csv(const std::string& path, int n);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Fixed shortest-round-trip formatting used by all CSV emitters.
std::string format_double(double v);

}  // namespace hypersparse

#endif  // HYPERSPARSE_IO_HPP
