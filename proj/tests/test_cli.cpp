// End-to-end tests that drive the built CLI binary. The binary path arrives
// as the last command-line argument (wired up in CMake).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "hypersparse/io.hpp"
#include "hypersparse/simulation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hypersparse;

namespace {

std::string g_cli;

int run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hypersparse_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string strip_timestamp(std::string text) {
  static const std::regex ts("\"timestamp\": \"[^\"]*\"");
  return std::regex_replace(text, ts, "\"timestamp\": \"X\"");
}

std::string strip_out_path(std::string text) {
  static const std::regex out("\"out\": \"[^\"]*\"");
  return std::regex_replace(text, out, "\"out\": \"X\"");
}

void write_simple_problem(const fs::path& dir) {
  Hypergraph h;
  h.n = 4;
  h.edges.emplace_back(std::vector<NodeId>{0, 1, 2});
  h.edges.emplace_back(std::vector<NodeId>{1, 2, 3});
  write_hypergraph_json(h, (dir / "hypergraph.json").string());
  Eigen::VectorXd y(4);
  y << 0.1, 0.4, 0.6, 0.9;
  write_labels_csv(y, {1, 1, 1, 1}, (dir / "labels.csv").string());
}

}  // namespace

TEST_CASE("train with lambda 0 reproduces the labels") {
  const auto dir = fresh_dir("train0");
  write_simple_problem(dir);
  const auto out = dir / "out";
  const int code = run_cli("train --hypergraph " + (dir / "hypergraph.json").string() +
                           " --labels " + (dir / "labels.csv").string() + " --model joint" +
                           " --lambda 0 --out " + out.string());
  REQUIRE(code == 0);
  const json fit = json::parse(read_text_file((out / "fit.json").string()));
  const auto f = fit.at("fits").at(0).at("f_hat").get<std::vector<double>>();
  CHECK(f[0] == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(f[3] == doctest::Approx(0.9).epsilon(1e-9));
  CHECK(fs::exists(out / "config.json"));
  CHECK(fs::exists(out / "edge_table.csv"));
}

TEST_CASE("missing labels file exits with the input-error code") {
  const auto dir = fresh_dir("missing");
  write_simple_problem(dir);
  const int code = run_cli("train --hypergraph " + (dir / "hypergraph.json").string() +
                           " --labels " + (dir / "nope.csv").string() +
                           " --lambda 0.1 --out " + (dir / "out").string());
  CHECK(code == 2);
}

TEST_CASE("unlabeled component exits 4, pinning flag rescues it") {
  const auto dir = fresh_dir("singular");
  Hypergraph h;
  h.n = 5;
  h.edges.emplace_back(std::vector<NodeId>{0, 1});
  h.edges.emplace_back(std::vector<NodeId>{2, 3});
  write_hypergraph_json(h, (dir / "hypergraph.json").string());
  Eigen::VectorXd y(5);
  y << 0.2, 0.8, 0.0, 0.0, 0.0;
  write_labels_csv(y, {1, 1, 0, 0, 0}, (dir / "labels.csv").string());

  const std::string base = "train --hypergraph " + (dir / "hypergraph.json").string() +
                           " --labels " + (dir / "labels.csv").string() +
                           " --model joint --lambda 0.1 --out " + (dir / "out").string();
  CHECK(run_cli(base) == 4);

  const int code = run_cli(base + " --pin-unlabeled-components");
  REQUIRE(code == 0);
  const json fit = json::parse(read_text_file((dir / "out" / "fit.json").string()));
  CHECK(fit.at("pinned_nodes").get<int>() == 3);
  const auto f = fit.at("fits").at(0).at("f_hat").get<std::vector<double>>();
  // Pinned nodes sit at the mean of the observed labels.
  CHECK(f[4] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("predict applies the fixed-mu rules") {
  const auto dir = fresh_dir("predict");
  write_simple_problem(dir);
  const auto out = dir / "out";
  REQUIRE(run_cli("train --hypergraph " + (dir / "hypergraph.json").string() + " --labels " +
                  (dir / "labels.csv").string() + " --model joint --lambda 0.05 --out " +
                  out.string()) == 0);

  json memberships{{"memberships",
                    json::array({{{"id", "a"}, {"edges", {0}}}, {{"id", "b"}, {"edges", {0, 1}}}})}};
  write_text_file((dir / "members.json").string(), memberships.dump());

  REQUIRE(run_cli("predict --fit " + (out / "fit.json").string() + " --memberships " +
                  (dir / "members.json").string() + " --out " + (dir / "pred").string()) == 0);

  const json fit = json::parse(read_text_file((out / "fit.json").string()));
  const auto mu = fit.at("fits").at(0).at("mu_hat").get<std::vector<double>>();

  std::ifstream in((dir / "pred" / "predictions.csv").string());
  std::string header, row_a, row_b;
  std::getline(in, header);
  std::getline(in, row_a);
  std::getline(in, row_b);
  CHECK(header == "id,prediction");
  // Single membership: the edge representative itself.
  CHECK(row_a.substr(0, 2) == "a,");
  CHECK(std::stod(row_a.substr(2)) == doctest::Approx(mu[0]).epsilon(1e-12));
  // Two memberships with equal weights: interval midpoint.
  CHECK(std::stod(row_b.substr(2)) == doctest::Approx(0.5 * (mu[0] + mu[1])).epsilon(1e-12));
}

TEST_CASE("ingest then train round trip") {
  const auto dir = fresh_dir("ingest");
  std::ofstream csv((dir / "data.csv").string());
  csv << "color,size,target\n";
  csv << "red,small,1.0\nred,large,2.0\nblue,small,3.0\nblue,large,4.0\nblue,small,5.0\n";
  csv.close();

  const auto out = dir / "out";
  REQUIRE(run_cli("ingest --input " + (dir / "data.csv").string() +
                  " --label-column target --out " + out.string()) == 0);
  const Hypergraph h = read_hypergraph_json((out / "hypergraph.json").string());
  CHECK(h.n == 5);
  CHECK(h.m() == 4);  // color: red(2)+blue(3); size: small(3)+large(2)

  const json summary = json::parse(read_text_file((out / "ingest_summary.json").string()));
  CHECK(summary.at("skipped_categories").get<int>() == 0);

  CHECK(run_cli("train --hypergraph " + (out / "hypergraph.json").string() + " --labels " +
                (out / "labels.csv").string() + " --model dense --lambda 0.1 --out " +
                (dir / "trained").string()) == 0);
}

TEST_CASE("ingest parse errors exit 2") {
  const auto dir = fresh_dir("ingest_bad");
  std::ofstream csv((dir / "data.csv").string());
  csv << "a,target\nx,not_a_number\ny,2\n";
  csv.close();
  CHECK(run_cli("ingest --input " + (dir / "data.csv").string() + " --label-column target --out " +
                (dir / "out").string()) == 2);
  CHECK(run_cli("ingest --input " + (dir / "data.csv").string() + " --label-column nope --out " +
                (dir / "out").string()) == 2);
}

TEST_CASE("solver non-convergence exits 3") {
  const auto dir = fresh_dir("noconv");
  write_simple_problem(dir);
  const int code = run_cli("train --hypergraph " + (dir / "hypergraph.json").string() +
                           " --labels " + (dir / "labels.csv").string() +
                           " --model joint --lambda 0.3 --max-iter 2 --out " +
                           (dir / "out").string());
  CHECK(code == 3);
}

TEST_CASE("sparsistency rejects a violated separation assumption") {
  const auto dir = fresh_dir("sparsistency_bad");
  write_simple_problem(dir);
  const int code = run_cli("sparsistency --hypergraph " + (dir / "hypergraph.json").string() +
                           " --model joint --gamma-r 0.3 --gamma-i 0.3 --delta 0 --out " +
                           (dir / "out").string());
  CHECK(code == 2);
}

TEST_CASE("sparsistency certificate from explicit gammas") {
  const auto dir = fresh_dir("sparsistency");
  Hypergraph h;
  h.n = 20;
  h.edges.emplace_back(std::vector<NodeId>{0, 1, 2, 3, 4});
  write_hypergraph_json(h, (dir / "hypergraph.json").string());

  REQUIRE(run_cli("sparsistency --hypergraph " + (dir / "hypergraph.json").string() +
                  " --model joint --gamma-r 0.1 --gamma-i 0.5 --delta 0.05 --out " +
                  (dir / "out").string()) == 0);
  const json cert = json::parse(read_text_file((dir / "out" / "certificate.json").string()));
  CHECK(cert.at("gap_condition").get<bool>());
  CHECK(cert.at("D").get<double>() == doctest::Approx(4.0));
  CHECK(cert.at("R").get<double>() == doctest::Approx(0.25));
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double want =
      (sqrt_pi * 0.4 - 2.0 * std::numbers::sqrt2 * 0.05) / (2.0 * sqrt_pi * 4.0 * 0.25);
  CHECK(cert.at("lambda_max").get<double>() == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("simulate emits the long-format table") {
  const auto dir = fresh_dir("simulate");
  REQUIRE(run_cli("simulate --n 60 --relevant 10 --irrelevant 1 --noisy 0 --folds 3 --repeats 1"
                  " --grid 0.01 --models dense,joint --seed 9 --out " +
                  (dir / "out").string()) == 0);
  std::ifstream in((dir / "out" / "results.csv").string());
  std::string line;
  std::getline(in, line);
  CHECK(line == "model,n_irrelevant,n_noisy,lambda,repeat,fold,rmse");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2 * 1 * 1 * 1 * 3);  // models x settings x lambdas x repeats x folds

  const json summary = json::parse(read_text_file((dir / "out" / "summary.json").string()));
  CHECK(summary.at("settings").size() == 1);
  CHECK(summary.at("settings").at(0).at("models").contains("dense"));
}

TEST_CASE("runs are reproducible and the config echo round-trips") {
  const auto dir = fresh_dir("repro");
  write_simple_problem(dir);
  const std::string base = "train --hypergraph " + (dir / "hypergraph.json").string() +
                           " --labels " + (dir / "labels.csv").string() +
                           " --model edge --grid 1e-2..1:log3";
  REQUIRE(run_cli(base + " --out " + (dir / "a").string()) == 0);
  REQUIRE(run_cli(base + " --out " + (dir / "b").string()) == 0);

  const auto read = [](const fs::path& p) { return read_text_file(p.string()); };
  CHECK(read(dir / "a" / "fit.json") == read(dir / "b" / "fit.json"));
  CHECK(read(dir / "a" / "edge_table.csv") == read(dir / "b" / "edge_table.csv"));
  CHECK(strip_out_path(strip_timestamp(read(dir / "a" / "config.json"))) ==
        strip_out_path(strip_timestamp(read(dir / "b" / "config.json"))));

  // Round trip: rerun from the echoed config (flags only override --out).
  REQUIRE(run_cli("train --config " + (dir / "a" / "config.json").string() + " --out " +
                  (dir / "c").string()) == 0);
  CHECK(read(dir / "a" / "fit.json") == read(dir / "c" / "fit.json"));
}

TEST_CASE("train per-edge table matches the gap experiment") {
  const auto dir = fresh_dir("fig5");
  SimSpec spec;
  spec.n = 80;
  spec.n_relevant = 5;
  spec.n_irrelevant = 5;
  spec.irrelevant_size = 10;
  const std::uint64_t seed = 17;
  const std::vector<double> grid = {1.0, 1e-3};

  const auto table = lambda_gap_experiment(spec, seed, grid);
  const auto& prob = table.problem;
  write_hypergraph_json(prob.hypergraph, (dir / "hypergraph.json").string());
  std::vector<std::uint8_t> mask(prob.hypergraph.n, 1);
  write_labels_csv(prob.y_observed, mask, (dir / "labels.csv").string());

  REQUIRE(run_cli("train --hypergraph " + (dir / "hypergraph.json").string() + " --labels " +
                  (dir / "labels.csv").string() + " --model joint --grid 1,1e-3 --out " +
                  (dir / "out").string()) == 0);

  const json fit = json::parse(read_text_file((dir / "out" / "fit.json").string()));
  REQUIRE(fit.at("fits").size() == 2);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto ss = fit.at("fits").at(g).at("edge_ss").get<std::vector<double>>();
    REQUIRE(ss.size() == table.rows[g].edge_ss.size());
    for (std::size_t k = 0; k < ss.size(); ++k)
      CHECK(ss[k] == doctest::Approx(table.rows[g].edge_ss[k]).epsilon(1e-9));
  }
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli [doctest flags] <cli-binary-path>\n");
    return 1;
  }
  g_cli = argv[argc - 1];
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv);
  return ctx.run();
}
