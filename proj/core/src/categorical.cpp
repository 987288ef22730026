#include "hypersparse/categorical.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hypersparse/errors.hpp"

namespace hypersparse {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_has_content = false;

  const auto end_field = [&] {
    row.push_back(field);
    field.clear();
  };
  const auto end_row = [&] {
    end_field();
    rows.push_back(row);
    row.clear();
    row_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) throw ParseError("unexpected quote inside unquoted field");
        in_quotes = true;
        row_has_content = true;
        break;
      case ',':
        end_field();
        row_has_content = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_has_content || !field.empty() || !row.empty()) end_row();
        break;
      default:
        field.push_back(c);
        row_has_content = true;
        break;
    }
  }
  if (in_quotes) throw ParseError("unterminated quoted field");
  if (row_has_content || !field.empty() || !row.empty()) end_row();
  return rows;
}

std::vector<std::vector<std::string>> parse_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open CSV file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

CategoricalIngestResult ingest_categorical_csv(const std::string& path,
                                               const CategoricalIngestOptions& opts) {
  return ingest_categorical_rows(parse_csv_file(path), opts);
}

CategoricalIngestResult ingest_categorical_rows(
    const std::vector<std::vector<std::string>>& rows, const CategoricalIngestOptions& opts) {
  if (rows.empty()) throw EmptyDataError("CSV has no header row");
  const auto& header = rows[0];
  if (rows.size() < 2) throw EmptyDataError("CSV has no data rows");

  int label_col = -1;
  std::vector<int> feature_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == opts.label_column) {
      label_col = static_cast<int>(c);
      continue;
    }
    if (std::find(opts.drop_columns.begin(), opts.drop_columns.end(), header[c]) !=
        opts.drop_columns.end())
      continue;
    feature_cols.push_back(static_cast<int>(c));
  }
  if (label_col < 0)
    throw MissingLabelColumnError("label column '" + opts.label_column + "' not found");
  if (feature_cols.empty()) throw EmptyDataError("no feature columns left after drops");

  const int n = static_cast<int>(rows.size()) - 1;
  CategoricalIngestResult out;
  out.y.resize(n);
  out.node_ids.reserve(n);

  // Labels: numeric, or ordinal-encoded when requested.
  std::vector<std::string> raw_labels(n);
  for (int r = 0; r < n; ++r) {
    const auto& row = rows[r + 1];
    if (static_cast<int>(row.size()) <= label_col)
      throw ParseError("row " + std::to_string(r) + " has too few fields");
    raw_labels[r] = row[label_col];
    out.node_ids.push_back("row" + std::to_string(r));
  }
  if (opts.ordinal_encode_labels) {
    std::set<std::string> cats(raw_labels.begin(), raw_labels.end());
    std::map<std::string, double> code;
    double next = 0.0;
    for (const auto& c : cats) code[c] = next++;
    for (int r = 0; r < n; ++r) out.y[r] = code[raw_labels[r]];
  } else {
    for (int r = 0; r < n; ++r) {
      try {
        std::size_t pos = 0;
        out.y[r] = std::stod(raw_labels[r], &pos);
        if (pos != raw_labels[r].size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ParseError("label '" + raw_labels[r] + "' in row " + std::to_string(r) +
                         " is not numeric (use ordinal encoding for categorical labels)");
      }
    }
  }

  Hypergraph h;
  h.n = n;
  for (int c : feature_cols) {
    std::map<std::string, std::vector<NodeId>> groups;
    for (int r = 0; r < n; ++r) {
      const auto& row = rows[r + 1];
      if (static_cast<int>(row.size()) <= c)
        throw ParseError("row " + std::to_string(r) + " has too few fields");
      groups[row[c]].push_back(r);
    }
    for (const auto& [category, members] : groups) {
      if (members.size() < 2) {
        ++out.skipped_categories;
        out.warnings.push_back("category " + header[c] + "=" + category +
                               " has a single row; skipped");
        continue;
      }
      h.edges.emplace_back(members);
      out.edge_names.push_back(header[c] + "=" + category);
    }
  }
  validate_or_throw(h);
  out.hypergraph = std::move(h);
  return out;
}

}  // namespace hypersparse
