#include "hypersparse/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hypersparse/categorical.hpp"
#include "hypersparse/errors.hpp"

namespace hypersparse {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string hypergraph_to_json(const Hypergraph& h) {
  json j;
  j["n"] = h.n;
  j["edges"] = json::array();
  for (const auto& e : h.edges) {
    json je;
    je["nodes"] = e.nodes;  // stored sorted
    if (e.weight) je["weight"] = *e.weight;
    j["edges"].push_back(std::move(je));
  }
  if (!h.name.empty()) j["name"] = h.name;
  return j.dump(2) + "\n";
}

Hypergraph hypergraph_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("invalid hypergraph JSON: ") + ex.what());
  }
  Hypergraph h;
  try {
    h.n = j.at("n").get<int>();
    for (const auto& je : j.at("edges")) {
      Hyperedge e(je.at("nodes").get<std::vector<NodeId>>());
      if (je.contains("weight")) e.weight = je.at("weight").get<double>();
      h.edges.push_back(std::move(e));
    }
    if (j.contains("name")) h.name = j.at("name").get<std::string>();
  } catch (const json::exception& ex) {
    throw ParseError(std::string("hypergraph JSON missing field: ") + ex.what());
  }
  validate_or_throw(h);
  return h;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

void write_hypergraph_json(const Hypergraph& h, const std::string& path) {
  write_text_file(path, hypergraph_to_json(h));
}

Hypergraph read_hypergraph_json(const std::string& path) {
  return hypergraph_from_json(read_text_file(path));
}

void write_labels_csv(const Eigen::VectorXd& y, const std::vector<std::uint8_t>& mask,
                      const std::string& path) {
  std::ostringstream out;
  out << "node_id,value\n";
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (!mask.empty() && !mask[i]) continue;
    out << i << "," << format_double(y[i]) << "\n";
  }
  write_text_file(path, out.str());
}

LabeledProblem read_labels_csv(const std::string& path, int n) {
  const auto rows = parse_csv_file(path);
  if (rows.empty()) throw EmptyDataError("labels CSV is empty");
  if (rows[0].size() < 2 || rows[0][0] != "node_id" || rows[0][1] != "value")
    throw ParseError("labels CSV must have header 'node_id,value'");
  LabeledProblem p;
  p.y = Eigen::VectorXd::Zero(n);
  p.mask.assign(n, 0);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() < 2) throw ParseError("labels CSV row " + std::to_string(r) + " malformed");
    int id = 0;
    double value = 0.0;
    try {
      id = std::stoi(rows[r][0]);
      value = std::stod(rows[r][1]);
    } catch (const std::exception&) {
      throw ParseError("labels CSV row " + std::to_string(r) + " is not numeric");
    }
    if (id < 0 || id >= n)
      throw ParseError("labels CSV node id " + std::to_string(id) + " outside [0, " +
                       std::to_string(n) + ")");
    p.y[id] = value;
    p.mask[id] = 1;
  }
  return p;
}

}  // namespace hypersparse
