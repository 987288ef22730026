#ifndef HYPERSPARSE_CATEGORICAL_HPP
#define HYPERSPARSE_CATEGORICAL_HPP

#include <string>
#include <vector>

#include "hypersparse/hypergraph.hpp"

namespace hypersparse {

// Minimal RFC-4180 style CSV: comma delimiter, double-quoted fields with ""
// escapes, header row required by the callers below.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);
std::vector<std::vector<std::string>> parse_csv_file(const std::string& path);

struct CategoricalIngestOptions {
  std::string label_column;
  std::vector<std::string> drop_columns;
  // Map non-numeric label categories to 0,1,2,... in lexicographic order
  // instead of requiring numeric labels.
  bool ordinal_encode_labels = false;
};

struct CategoricalIngestResult {
  Hypergraph hypergraph;        // one node per data row
  Eigen::VectorXd y;            // labels from the label column
  std::vector<std::string> node_ids;   // row keys, "row0", "row1", ...
  std::vector<std::string> edge_names; // "column=category" per hyperedge
  std::vector<std::string> warnings;   // skipped singleton categories etc.
  int skipped_categories = 0;
};

// One node per row, one hyperedge per (column, category) pair observed on at
// least 2 rows. Throws ParseError / MissingLabelColumnError / EmptyDataError.
CategoricalIngestResult ingest_categorical_csv(const std::string& path,
                                               const CategoricalIngestOptions& opts);
CategoricalIngestResult ingest_categorical_rows(
    const std::vector<std::vector<std::string>>& rows, const CategoricalIngestOptions& opts);

}  // namespace hypersparse

#endif  // HYPERSPARSE_CATEGORICAL_HPP
