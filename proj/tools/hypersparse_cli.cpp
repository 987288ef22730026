// hypersparse command line: train, predict, simulate, sparsistency, ingest.
//
// Every run writes its fully resolved configuration next to the outputs
// (config.json); re-running with --config on that file reproduces the run
// byte for byte, apart from the meta.timestamp field.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypersparse/admm.hpp"
#include "hypersparse/categorical.hpp"
#include "hypersparse/cross_validation.hpp"
#include "hypersparse/errors.hpp"
#include "hypersparse/io.hpp"
#include "hypersparse/learners.hpp"
#include "hypersparse/simulation.hpp"
#include "hypersparse/smoothness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hypersparse;

namespace {

constexpr int kExitInputError = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitSingular = 4;

struct NotConvergedError : std::runtime_error {
  NotConvergedError() : std::runtime_error("solver did not converge") {}
};

int worker_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("HYPERSPARSE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

// Pre-scan for --config so config values become flag defaults; actual flags
// then win by overwriting.
json load_config_json(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") return json::parse(read_text_file(argv[i + 1]));
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--config=", 0) == 0) return json::parse(read_text_file(arg.substr(9)));
  }
  return json::object();
}

template <typename T>
void from_config(const json& cfg, const char* key, T& value) {
  if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

// "1e-4..1e2:log7" (inclusive log-spaced), "0.1,0.01" or a single number.
std::vector<double> parse_grid(const std::string& text) {
  const auto log_pos = text.find(":log");
  if (log_pos != std::string::npos) {
    const auto dots = text.find("..");
    if (dots == std::string::npos || dots > log_pos)
      throw std::invalid_argument("grid syntax: A..B:logN");
    const double a = std::stod(text.substr(0, dots));
    const double b = std::stod(text.substr(dots + 2, log_pos - dots - 2));
    const int count = std::stoi(text.substr(log_pos + 4));
    if (count < 1 || a <= 0.0 || b <= 0.0)
      throw std::invalid_argument("log grid needs positive endpoints and count");
    if (count == 1) return {a};
    std::vector<double> grid;
    const double la = std::log10(a), lb = std::log10(b);
    for (int i = 0; i < count; ++i)
      grid.push_back(std::pow(10.0, la + (lb - la) * i / (count - 1)));
    return grid;
  }
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) grid.push_back(std::stod(item));
  if (grid.empty()) throw std::invalid_argument("empty lambda grid");
  return grid;
}

// "1..10", "5" or "0,2,4".
std::vector<int> parse_int_list(const std::string& text) {
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int a = std::stoi(text.substr(0, dots));
    const int b = std::stoi(text.substr(dots + 2));
    if (b < a) throw std::invalid_argument("range must be ascending");
    std::vector<int> out;
    for (int v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<std::string> split_csv_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct SolverFlags {
  double rho = 1.0;
  double tol_abs = 1e-8;
  double tol_rel = 1e-6;
  int max_iter = 10000;
  double over_relaxation = 1.0;
  bool adapt_rho = false;

  void load(const json& cfg) {
    from_config(cfg, "rho", rho);
    from_config(cfg, "tol_abs", tol_abs);
    from_config(cfg, "tol_rel", tol_rel);
    from_config(cfg, "max_iter", max_iter);
    from_config(cfg, "over_relaxation", over_relaxation);
    from_config(cfg, "adapt_rho", adapt_rho);
  }
  void add_flags(CLI::App* cmd) {
    cmd->add_option("--rho", rho, "ADMM penalty parameter");
    cmd->add_option("--tol-abs", tol_abs, "absolute stopping tolerance");
    cmd->add_option("--tol-rel", tol_rel, "relative stopping tolerance");
    cmd->add_option("--max-iter", max_iter, "iteration cap");
    cmd->add_option("--over-relaxation", over_relaxation, "over-relaxation alpha in [1, 1.8]");
    cmd->add_flag("--adapt-rho", adapt_rho, "enable residual-balancing rho adaptation");
  }
  AdmmConfig to_config() const {
    AdmmConfig c;
    c.rho = rho;
    c.tol_abs = tol_abs;
    c.tol_rel = tol_rel;
    c.max_iter = max_iter;
    c.over_relaxation = over_relaxation;
    c.adapt_rho = adapt_rho;
    return c;
  }
  void echo(json& out) const {
    out["rho"] = rho;
    out["tol_abs"] = tol_abs;
    out["tol_rel"] = tol_rel;
    out["max_iter"] = max_iter;
    out["over_relaxation"] = over_relaxation;
    out["adapt_rho"] = adapt_rho;
  }
};

void write_config_echo(const fs::path& out_dir, const std::string& command, const json& resolved) {
  json full = resolved;
  full["meta"] = {{"command", command}, {"timestamp", iso_timestamp()}};
  write_text_file((out_dir / "config.json").string(), full.dump(2) + "\n");
}

json diagnostics_to_json(const Diagnostics& d) {
  return json{{"iterations", d.iterations},
              {"primal_residual", d.primal_residual},
              {"dual_residual", d.dual_residual},
              {"eps_primal", d.eps_primal},
              {"eps_dual", d.eps_dual},
              {"converged", d.converged},
              {"objective_trace", d.objective_trace}};
}

json support_to_json(const SupportReport& rep) {
  return json{{"gamma", rep.gamma},
              {"relevant", rep.relevant},
              {"irrelevant", rep.irrelevant},
              {"gap", rep.gap},
              {"zero_gap", rep.zero_gap}};
}

json fit_to_json(const FitResult& fit, const SupportReport& support) {
  json j;
  j["model"] = to_string(fit.model);
  j["lambda"] = fit.lambda;
  j["f_hat"] = std::vector<double>(fit.f_hat.data(), fit.f_hat.data() + fit.f_hat.size());
  j["mu_hat"] = std::vector<double>(fit.mu_hat.data(), fit.mu_hat.data() + fit.mu_hat.size());
  j["delta_hat"] = fit.delta_hat;
  j["edge_weights"] = fit.edge_weights;
  j["edge_ss"] = fit.edge_ss_values();
  j["objective"] = fit.objective;
  j["diagnostics"] = diagnostics_to_json(fit.diagnostics);
  j["support"] = support_to_json(support);
  return j;
}

// Pins every component without an observed label to the mean observed label.
int pin_unlabeled_components(const Hypergraph& h, LabeledProblem& labels) {
  const StackedOperator A(h);
  std::vector<std::uint8_t> has_label(h.n, 0);
  for (int i = 0; i < h.n; ++i)
    if (labels.mask[i]) has_label[A.node_components()[i]] = 1;
  double mean = 0.0;
  int cnt = 0;
  for (int i = 0; i < h.n; ++i)
    if (labels.mask[i]) {
      mean += labels.y[i];
      ++cnt;
    }
  if (cnt > 0) mean /= cnt;
  int pinned = 0;
  for (int i = 0; i < h.n; ++i) {
    if (!has_label[A.node_components()[i]]) {
      labels.y[i] = mean;
      labels.mask[i] = 1;
      ++pinned;
    }
  }
  return pinned;
}

// ---------------------------------------------------------------------------
// train

struct TrainState {
  std::string config_path, hypergraph_path, labels_path, out_dir = "out";
  std::string model_name = "joint", weights_name, grid_text, gamma_text = "auto";
  double lambda = -1.0;
  std::uint64_t seed = 0;  // training is deterministic; echoed for tooling
  bool pin_components = false;
  SolverFlags solver;
};

void setup_train(const json& cfg, CLI::App* cmd) {
  auto st = std::make_shared<TrainState>();
  from_config(cfg, "hypergraph", st->hypergraph_path);
  from_config(cfg, "labels", st->labels_path);
  from_config(cfg, "out", st->out_dir);
  from_config(cfg, "model", st->model_name);
  from_config(cfg, "weights", st->weights_name);
  from_config(cfg, "grid", st->grid_text);
  from_config(cfg, "gamma", st->gamma_text);
  from_config(cfg, "lambda", st->lambda);
  from_config(cfg, "seed", st->seed);
  from_config(cfg, "pin_unlabeled_components", st->pin_components);
  st->solver.load(cfg);

  cmd->add_option("--config", st->config_path, "JSON config file (flags win)");
  cmd->add_option("--hypergraph", st->hypergraph_path, "hypergraph JSON path");
  cmd->add_option("--labels", st->labels_path, "labels CSV path (node_id,value)");
  cmd->add_option("--out", st->out_dir, "output directory");
  cmd->add_option("--model", st->model_name, "dense|edge|node|joint");
  cmd->add_option("--weights", st->weights_name, "unit|invcard|explicit (default per model)");
  cmd->add_option("--lambda", st->lambda, "single tradeoff parameter");
  cmd->add_option("--grid", st->grid_text, "lambda grid, e.g. 1e-4..1e2:log7");
  cmd->add_option("--gamma", st->gamma_text, "support threshold or 'auto'");
  cmd->add_option("--seed", st->seed, "echoed into the resolved config");
  cmd->add_flag("--pin-unlabeled-components", st->pin_components,
                "pin unlabeled components to the mean observed label");
  st->solver.add_flags(cmd);

  cmd->callback([st]() {
    if (st->hypergraph_path.empty() || st->labels_path.empty())
      throw std::invalid_argument("train requires --hypergraph and --labels");
    if (st->lambda < 0.0 && st->grid_text.empty())
      throw std::invalid_argument("train requires --lambda or --grid");

    const Hypergraph h = read_hypergraph_json(st->hypergraph_path);
    LabeledProblem labels = read_labels_csv(st->labels_path, h.n);
    if (labels.observed_count() == 0) throw std::invalid_argument("labels file has no rows");

    int pinned = 0;
    if (st->pin_components) pinned = pin_unlabeled_components(h, labels);

    const ModelKind model = model_kind_from_string(st->model_name);
    std::optional<WeightScheme> ws;
    if (!st->weights_name.empty())
      ws = WeightScheme{weight_scheme_from_string(st->weights_name)};
    const std::vector<double> grid =
        st->grid_text.empty() ? std::vector<double>{st->lambda} : parse_grid(st->grid_text);

    fs::create_directories(st->out_dir);
    json resolved{{"hypergraph", st->hypergraph_path},
                  {"labels", st->labels_path},
                  {"out", st->out_dir},
                  {"model", st->model_name},
                  {"gamma", st->gamma_text},
                  {"seed", st->seed},
                  {"pin_unlabeled_components", st->pin_components}};
    if (!st->weights_name.empty()) resolved["weights"] = st->weights_name;
    if (!st->grid_text.empty())
      resolved["grid"] = st->grid_text;
    else
      resolved["lambda"] = st->lambda;
    st->solver.echo(resolved);
    write_config_echo(st->out_dir, "train", resolved);

    const auto path = lambda_path(h, labels, model, grid, ws, st->solver.to_config());

    json fits = json::array();
    std::ostringstream table;
    table << "lambda,edge_id,delta,ss\n";
    bool any_unconverged = false;
    for (const auto& pt : path) {
      if (!pt.result) {
        if (pt.singular) throw SingularSystemError(pt.error);
        throw std::runtime_error(pt.error);
      }
      const auto& fit = *pt.result;
      if (!fit.diagnostics.converged) any_unconverged = true;
      SupportReport support = st->gamma_text == "auto"
                                  ? classify_support(fit, AutoGamma{})
                                  : classify_support(fit, std::stod(st->gamma_text));
      fits.push_back(fit_to_json(fit, support));
      for (int k = 0; k < h.m(); ++k)
        table << format_double(pt.lambda) << "," << k << ","
              << format_double(fit.delta_hat[k]) << "," << format_double(fit.edge_ss(k)) << "\n";
    }

    json out{{"pinned_nodes", pinned}, {"fits", std::move(fits)}};
    write_text_file((fs::path(st->out_dir) / "fit.json").string(), out.dump(2) + "\n");
    write_text_file((fs::path(st->out_dir) / "edge_table.csv").string(), table.str());
    std::cout << "wrote " << (fs::path(st->out_dir) / "fit.json").string() << " (" << grid.size()
              << " fits)\n";
    if (any_unconverged) throw NotConvergedError();
  });
}

// ---------------------------------------------------------------------------
// predict

struct PredictState {
  std::string config_path, fit_path, memberships_path, out_dir = "out", format = "csv";
  double lambda = -1.0;
  std::uint64_t seed = 0;
};

void setup_predict(const json& cfg, CLI::App* cmd) {
  auto st = std::make_shared<PredictState>();
  from_config(cfg, "fit", st->fit_path);
  from_config(cfg, "memberships", st->memberships_path);
  from_config(cfg, "out", st->out_dir);
  from_config(cfg, "format", st->format);
  from_config(cfg, "lambda", st->lambda);
  from_config(cfg, "seed", st->seed);

  cmd->add_option("--config", st->config_path, "JSON config file (flags win)");
  cmd->add_option("--fit", st->fit_path, "fit.json produced by train");
  cmd->add_option("--memberships", st->memberships_path,
                  "JSON file: {\"memberships\": [{\"id\": str, \"edges\": [int]}]}");
  cmd->add_option("--out", st->out_dir, "output directory");
  cmd->add_option("--format", st->format, "csv|json");
  cmd->add_option("--lambda", st->lambda, "select this lambda from a multi-fit file");
  cmd->add_option("--seed", st->seed, "echoed into the resolved config");

  cmd->callback([st]() {
    if (st->fit_path.empty() || st->memberships_path.empty())
      throw std::invalid_argument("predict requires --fit and --memberships");
    if (st->format != "csv" && st->format != "json")
      throw std::invalid_argument("format must be csv or json");

    json fit_json;
    try {
      fit_json = json::parse(read_text_file(st->fit_path));
    } catch (const json::exception& ex) {
      throw ParseError(std::string("invalid fit JSON: ") + ex.what());
    }
    const auto& fits = fit_json.at("fits");
    if (fits.empty()) throw std::invalid_argument("fit file contains no fits");
    const json* chosen = nullptr;
    if (st->lambda >= 0.0) {
      for (const auto& f : fits)
        if (f.at("lambda").get<double>() == st->lambda) chosen = &f;
      if (!chosen) throw std::invalid_argument("no fit with the requested lambda");
    } else {
      if (fits.size() > 1)
        throw std::invalid_argument("fit file has several lambdas; pass --lambda");
      chosen = &fits.front();
    }
    if (!chosen->at("diagnostics").at("converged").get<bool>()) throw NotConvergedError();

    FitResult fit;
    fit.model = model_kind_from_string(chosen->at("model").get<std::string>());
    const auto mu = chosen->at("mu_hat").get<std::vector<double>>();
    fit.mu_hat = Eigen::Map<const Eigen::VectorXd>(mu.data(), mu.size());
    fit.edge_weights = chosen->at("edge_weights").get<std::vector<double>>();

    json mem_json;
    try {
      mem_json = json::parse(read_text_file(st->memberships_path));
    } catch (const json::exception& ex) {
      throw ParseError(std::string("invalid memberships JSON: ") + ex.what());
    }

    fs::create_directories(st->out_dir);
    json resolved{{"fit", st->fit_path},
                  {"memberships", st->memberships_path},
                  {"out", st->out_dir},
                  {"format", st->format},
                  {"seed", st->seed}};
    if (st->lambda >= 0.0) resolved["lambda"] = st->lambda;
    write_config_echo(st->out_dir, "predict", resolved);

    std::ostringstream csv;
    csv << "id,prediction\n";
    json rows = json::array();
    for (const auto& entry : mem_json.at("memberships")) {
      const std::string id = entry.at("id").get<std::string>();
      const auto edges = entry.at("edges").get<std::vector<EdgeId>>();
      const double pred = predict_out_of_sample(fit, edges, fit.model);
      csv << id << "," << format_double(pred) << "\n";
      rows.push_back({{"id", id}, {"prediction", pred}});
    }
    const fs::path out_path = fs::path(st->out_dir) /
                              (st->format == "csv" ? "predictions.csv" : "predictions.json");
    if (st->format == "csv")
      write_text_file(out_path.string(), csv.str());
    else
      write_text_file(out_path.string(), json{{"predictions", rows}}.dump(2) + "\n");
    std::cout << "wrote " << out_path.string() << "\n";
  });
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateState {
  std::string config_path, out_dir = "out", models_text = "dense,edge,node,joint";
  std::string irrelevant_text = "0", noisy_text = "0", grid_text = "1e-4..1e2:log7";
  // Benchmarks compare the models under one common weighting; unit keeps
  // band and irrelevant edges on an equal footing.
  std::string weights_name = "unit";
  std::uint64_t seed = 0;
  int n = 200, n_relevant = 10, irrelevant_size = 20, folds = 10, repeats = 10;
  double band_width = 0.15, sigma = 0.0;
  SolverFlags solver;
};

void setup_simulate(const json& cfg, CLI::App* cmd) {
  auto st = std::make_shared<SimulateState>();
  from_config(cfg, "out", st->out_dir);
  from_config(cfg, "models", st->models_text);
  from_config(cfg, "irrelevant", st->irrelevant_text);
  from_config(cfg, "noisy", st->noisy_text);
  from_config(cfg, "grid", st->grid_text);
  from_config(cfg, "weights", st->weights_name);
  from_config(cfg, "seed", st->seed);
  from_config(cfg, "n", st->n);
  from_config(cfg, "relevant", st->n_relevant);
  from_config(cfg, "irrelevant_size", st->irrelevant_size);
  from_config(cfg, "folds", st->folds);
  from_config(cfg, "repeats", st->repeats);
  from_config(cfg, "band_width", st->band_width);
  from_config(cfg, "sigma", st->sigma);
  st->solver.load(cfg);

  cmd->add_option("--config", st->config_path, "JSON config file (flags win)");
  cmd->add_option("--out", st->out_dir, "output directory");
  cmd->add_option("--models", st->models_text, "comma list of dense|edge|node|joint");
  cmd->add_option("--irrelevant", st->irrelevant_text,
                  "irrelevant-edge counts, e.g. 1..10 or 5");
  cmd->add_option("--noisy", st->noisy_text, "noisy-node counts per relevant edge, e.g. 0..5");
  cmd->add_option("--grid", st->grid_text, "lambda grid");
  cmd->add_option("--weights", st->weights_name,
                  "unit|invcard|default (common weighting across models)");
  cmd->add_option("--seed", st->seed, "base seed");
  cmd->add_option("--n", st->n, "node count");
  cmd->add_option("--relevant", st->n_relevant, "number of relevant band edges");
  cmd->add_option("--irrelevant-size", st->irrelevant_size, "irrelevant edge size");
  cmd->add_option("--folds", st->folds, "cross-validation folds");
  cmd->add_option("--repeats", st->repeats, "cross-validation repeats");
  cmd->add_option("--band-width", st->band_width, "relevant band width");
  cmd->add_option("--sigma", st->sigma, "label noise standard deviation");
  st->solver.add_flags(cmd);

  cmd->callback([st]() {
    const auto irr_list = parse_int_list(st->irrelevant_text);
    const auto noisy_list = parse_int_list(st->noisy_text);
    std::vector<ModelKind> models;
    for (const auto& name : split_csv_list(st->models_text))
      models.push_back(model_kind_from_string(name));
    if (models.empty()) throw std::invalid_argument("no models requested");
    const auto grid = parse_grid(st->grid_text);
    std::optional<WeightScheme> weights;
    if (st->weights_name != "default")
      weights = WeightScheme{weight_scheme_from_string(st->weights_name)};

    fs::create_directories(st->out_dir);
    json resolved{{"out", st->out_dir},
                  {"models", st->models_text},
                  {"irrelevant", st->irrelevant_text},
                  {"noisy", st->noisy_text},
                  {"grid", st->grid_text},
                  {"weights", st->weights_name},
                  {"seed", st->seed},
                  {"n", st->n},
                  {"relevant", st->n_relevant},
                  {"irrelevant_size", st->irrelevant_size},
                  {"folds", st->folds},
                  {"repeats", st->repeats},
                  {"band_width", st->band_width},
                  {"sigma", st->sigma}};
    st->solver.echo(resolved);
    write_config_echo(st->out_dir, "simulate", resolved);

    std::ostringstream csv;
    csv << "model,n_irrelevant,n_noisy,lambda,repeat,fold,rmse\n";
    json summary = json::array();
    bool any_failed_fit = false;

    int setting_index = 0;
    for (int irr : irr_list) {
      for (int noisy : noisy_list) {
        SimSpec spec;
        spec.n = st->n;
        spec.n_relevant = st->n_relevant;
        spec.band_width = st->band_width;
        spec.n_irrelevant = irr;
        spec.irrelevant_size = st->irrelevant_size;
        spec.noisy_per_edge = noisy;
        spec.label_noise_sigma = st->sigma;
        const std::uint64_t instance_seed = st->seed + 1000003ULL * setting_index;
        const auto sim = gen_simulation(spec, instance_seed);

        json setting{{"n_irrelevant", irr}, {"n_noisy", noisy}, {"models", json::object()}};
        for (ModelKind model : models) {
          CvSpec cv;
          cv.folds = st->folds;
          cv.repeats = st->repeats;
          cv.lambda_grid = grid;
          cv.seed = instance_seed;
          cv.threads = worker_threads();
          cv.weights = weights;
          cv.solver = st->solver.to_config();
          const auto res = cross_validate(sim.hypergraph, sim.y_observed, model, cv);
          if (res.failed_fits > 0) any_failed_fit = true;

          for (const auto& stat : res.per_lambda)
            for (int r = 0; r < st->repeats; ++r)
              for (int f = 0; f < st->folds; ++f)
                csv << to_string(model) << "," << irr << "," << noisy << ","
                    << format_double(stat.lambda) << "," << r << "," << f << ","
                    << format_double(stat.rmse[r][f]) << "\n";

          setting["models"][to_string(model)] = {{"best_lambda", res.best_lambda},
                                                 {"best_rmse", res.best_rmse},
                                                 {"best_std", res.best_std},
                                                 {"failed_fits", res.failed_fits}};
        }
        summary.push_back(std::move(setting));
        ++setting_index;
      }
    }

    write_text_file((fs::path(st->out_dir) / "results.csv").string(), csv.str());
    write_text_file((fs::path(st->out_dir) / "summary.json").string(),
                    json{{"settings", summary}}.dump(2) + "\n");
    std::cout << "wrote " << (fs::path(st->out_dir) / "results.csv").string() << "\n";
    if (any_failed_fit) throw NotConvergedError();
  });
}

// ---------------------------------------------------------------------------
// sparsistency

struct SparsistencyState {
  std::string config_path, out_dir = "out", model_name = "joint", hypergraph_path;
  std::string grid_text = "1e-4..1e2:log7";
  bool from_sim = false;
  double gamma_r = -1.0, gamma_i = -1.0, delta = 0.0;
  std::uint64_t seed = 0;
  int n = 200, n_relevant = 5, n_irrelevant = 5, irrelevant_size = 20;
  double band_width = 0.15, sigma = 0.0;
  SolverFlags solver;
};

void setup_sparsistency(const json& cfg, CLI::App* cmd) {
  auto st = std::make_shared<SparsistencyState>();
  from_config(cfg, "out", st->out_dir);
  from_config(cfg, "model", st->model_name);
  from_config(cfg, "hypergraph", st->hypergraph_path);
  from_config(cfg, "grid", st->grid_text);
  from_config(cfg, "from_sim", st->from_sim);
  from_config(cfg, "gamma_r", st->gamma_r);
  from_config(cfg, "gamma_i", st->gamma_i);
  from_config(cfg, "delta", st->delta);
  from_config(cfg, "seed", st->seed);
  from_config(cfg, "n", st->n);
  from_config(cfg, "relevant", st->n_relevant);
  from_config(cfg, "irrelevant", st->n_irrelevant);
  from_config(cfg, "irrelevant_size", st->irrelevant_size);
  from_config(cfg, "band_width", st->band_width);
  from_config(cfg, "sigma", st->sigma);
  st->solver.load(cfg);

  cmd->add_option("--config", st->config_path, "JSON config file (flags win)");
  cmd->add_option("--out", st->out_dir, "output directory");
  cmd->add_option("--model", st->model_name, "edge|joint (models with a recovery theorem)");
  cmd->add_option("--hypergraph", st->hypergraph_path,
                  "hypergraph JSON for the growth constants");
  cmd->add_option("--grid", st->grid_text, "lambda grid for the gap table");
  cmd->add_flag("--from-sim", st->from_sim, "derive gammas from a generated instance");
  cmd->add_option("--gamma-r", st->gamma_r, "relevant smoothness level");
  cmd->add_option("--gamma-i", st->gamma_i, "irrelevant smoothness level");
  cmd->add_option("--delta", st->delta, "label noise standard deviation");
  cmd->add_option("--seed", st->seed, "instance seed (with --from-sim)");
  cmd->add_option("--n", st->n, "node count (with --from-sim)");
  cmd->add_option("--relevant", st->n_relevant, "relevant edges (with --from-sim)");
  cmd->add_option("--irrelevant", st->n_irrelevant, "irrelevant edges (with --from-sim)");
  cmd->add_option("--irrelevant-size", st->irrelevant_size, "irrelevant edge size");
  cmd->add_option("--band-width", st->band_width, "relevant band width");
  cmd->add_option("--sigma", st->sigma, "label noise (with --from-sim)");
  st->solver.add_flags(cmd);

  cmd->callback([st]() {
    const ModelKind model = model_kind_from_string(st->model_name);
    if (model != ModelKind::HyperedgeSelection && model != ModelKind::JointSelection)
      throw std::invalid_argument("sparsistency certificates exist for edge and joint only");
    const WeightScheme ws = default_weight_scheme(model);
    const auto grid = parse_grid(st->grid_text);
    fs::create_directories(st->out_dir);

    json resolved{{"out", st->out_dir},
                  {"model", st->model_name},
                  {"grid", st->grid_text},
                  {"from_sim", st->from_sim},
                  {"delta", st->delta}};
    st->solver.echo(resolved);

    Hypergraph h;
    json cert_extra;
    std::optional<LambdaGapTable> gap_table;
    double gamma_r = st->gamma_r, gamma_i = st->gamma_i, delta = st->delta;

    if (st->from_sim) {
      SimSpec spec;
      spec.n = st->n;
      spec.n_relevant = st->n_relevant;
      spec.band_width = st->band_width;
      spec.n_irrelevant = st->n_irrelevant;
      spec.irrelevant_size = st->irrelevant_size;
      spec.label_noise_sigma = st->sigma;
      resolved["seed"] = st->seed;
      resolved["n"] = st->n;
      resolved["relevant"] = st->n_relevant;
      resolved["irrelevant"] = st->n_irrelevant;
      resolved["irrelevant_size"] = st->irrelevant_size;
      resolved["band_width"] = st->band_width;
      resolved["sigma"] = st->sigma;
      write_config_echo(st->out_dir, "sparsistency", resolved);

      gap_table = lambda_gap_experiment(spec, st->seed, grid, st->solver.to_config(), model);
      h = gap_table->problem.hypergraph;

      // Gammas from the observed labels on the planted instance.
      const auto& prob = gap_table->problem;
      std::vector<std::uint8_t> relevant(h.m(), 0);
      for (EdgeId k : prob.relevant) relevant[k] = 1;
      const auto w = resolve_weights(h, ws);
      gamma_r = 0.0;
      gamma_i = std::numeric_limits<double>::infinity();
      for (int k = 0; k < h.m(); ++k) {
        const auto vals = restrict_to_edge(prob.y_observed, h.edges[k]);
        const double ss = edge_smoothness(model, vals, w[k]).value;
        if (relevant[k])
          gamma_r = std::max(gamma_r, ss);
        else
          gamma_i = std::min(gamma_i, ss);
      }
      delta = st->sigma;
      cert_extra["gamma_source"] = "generated instance";
    } else {
      if (st->hypergraph_path.empty())
        throw std::invalid_argument("sparsistency requires --hypergraph or --from-sim");
      if (gamma_r < 0.0 || gamma_i < 0.0)
        throw std::invalid_argument("sparsistency requires --gamma-r and --gamma-i");
      resolved["hypergraph"] = st->hypergraph_path;
      resolved["gamma_r"] = gamma_r;
      resolved["gamma_i"] = gamma_i;
      write_config_echo(st->out_dir, "sparsistency", resolved);
      h = read_hypergraph_json(st->hypergraph_path);
      cert_extra["gamma_source"] = "given";
    }

    if (!(gamma_i > gamma_r))
      throw std::invalid_argument("separation assumption violated: gamma_i <= gamma_r");

    const auto cert = sparsistency_certificate(h, model, gamma_r, gamma_i, delta, ws);
    json cj{{"model", to_string(cert.model)},
            {"gamma_r", gamma_r},
            {"gamma_i", gamma_i},
            {"delta", delta},
            {"gap_condition", cert.gap_condition},
            {"lambda_max", cert.lambda_max},
            {"D", cert.D},
            {"R", cert.R},
            {"probability_note", cert.probability_note}};
    cj.update(cert_extra);

    if (gap_table) {
      std::ostringstream csv;
      csv << "lambda,edge_id,ss,support_gap\n";
      for (const auto& row : gap_table->rows)
        for (std::size_t k = 0; k < row.edge_ss.size(); ++k)
          csv << format_double(row.lambda) << "," << k << "," << format_double(row.edge_ss[k])
              << "," << format_double(row.support_gap) << "\n";
      write_text_file((fs::path(st->out_dir) / "gap_table.csv").string(), csv.str());
      json gaps = json::array();
      for (const auto& row : gap_table->rows)
        gaps.push_back({{"lambda", row.lambda}, {"support_gap", row.support_gap}});
      cj["per_lambda_gap"] = std::move(gaps);
    }

    write_text_file((fs::path(st->out_dir) / "certificate.json").string(), cj.dump(2) + "\n");
    std::cout << "lambda_max = " << cert.lambda_max
              << (cert.gap_condition ? " (gap condition holds)\n" : " (gap condition fails)\n");
  });
}

// ---------------------------------------------------------------------------
// ingest

struct IngestState {
  std::string config_path, input_path, out_dir = "out", label_column, drop_text;
  std::uint64_t seed = 0;
  bool ordinal = false;
};

void setup_ingest(const json& cfg, CLI::App* cmd) {
  auto st = std::make_shared<IngestState>();
  from_config(cfg, "input", st->input_path);
  from_config(cfg, "out", st->out_dir);
  from_config(cfg, "label_column", st->label_column);
  from_config(cfg, "drop_columns", st->drop_text);
  from_config(cfg, "ordinal_labels", st->ordinal);
  from_config(cfg, "seed", st->seed);

  cmd->add_option("--config", st->config_path, "JSON config file (flags win)");
  cmd->add_option("--input", st->input_path, "categorical CSV path");
  cmd->add_option("--out", st->out_dir, "output directory");
  cmd->add_option("--label-column", st->label_column, "name of the label column");
  cmd->add_option("--drop", st->drop_text, "comma list of columns to ignore");
  cmd->add_flag("--ordinal-labels", st->ordinal, "ordinal-encode non-numeric labels");
  cmd->add_option("--seed", st->seed, "echoed into the resolved config");

  cmd->callback([st]() {
    if (st->input_path.empty() || st->label_column.empty())
      throw std::invalid_argument("ingest requires --input and --label-column");

    CategoricalIngestOptions opts;
    opts.label_column = st->label_column;
    opts.drop_columns = split_csv_list(st->drop_text);
    opts.ordinal_encode_labels = st->ordinal;
    const auto res = ingest_categorical_csv(st->input_path, opts);

    fs::create_directories(st->out_dir);
    json resolved{{"input", st->input_path},
                  {"out", st->out_dir},
                  {"label_column", st->label_column},
                  {"drop_columns", st->drop_text},
                  {"ordinal_labels", st->ordinal},
                  {"seed", st->seed}};
    write_config_echo(st->out_dir, "ingest", resolved);

    write_hypergraph_json(res.hypergraph, (fs::path(st->out_dir) / "hypergraph.json").string());
    std::vector<std::uint8_t> mask(res.hypergraph.n, 1);
    write_labels_csv(res.y, mask, (fs::path(st->out_dir) / "labels.csv").string());

    json summary{{"n", res.hypergraph.n},
                 {"m", res.hypergraph.m()},
                 {"skipped_categories", res.skipped_categories},
                 {"edge_names", res.edge_names},
                 {"warnings", res.warnings}};
    write_text_file((fs::path(st->out_dir) / "ingest_summary.json").string(),
                    summary.dump(2) + "\n");
    std::cout << "n=" << res.hypergraph.n << " m=" << res.hypergraph.m()
              << " skipped_categories=" << res.skipped_categories << "\n";
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparsely smooth learning on hypergraphs"};
  app.require_subcommand(1);

  json cfg;
  try {
    cfg = load_config_json(argc, argv);
  } catch (const std::exception& ex) {
    std::cerr << "error: cannot load config: " << ex.what() << "\n";
    return kExitInputError;
  }

  setup_train(cfg, app.add_subcommand("train", "fit a model on a hypergraph with labels"));
  setup_predict(cfg, app.add_subcommand("predict", "out-of-sample labels from a trained fit"));
  setup_simulate(cfg, app.add_subcommand("simulate", "synthetic benchmark RMSE tables"));
  setup_sparsistency(
      cfg, app.add_subcommand("sparsistency", "support-recovery certificate and gap table"));
  setup_ingest(cfg, app.add_subcommand("ingest", "hypergraph from categorical CSV data"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  } catch (const NotConvergedError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitNotConverged;
  } catch (const SingularSystemError& ex) {
    std::cerr << "error: singular system: " << ex.what() << "\n";
    return kExitSingular;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInputError;
  }
  return 0;
}
