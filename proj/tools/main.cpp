// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0
//
// pathlap: generate consensus datasets, run single simulations, print k-path
// spectral diagnostics and evaluate baselines.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pathlap/consensus.hpp"
#include "pathlap/dataset.hpp"
#include "pathlap/errors.hpp"
#include "pathlap/evaluate.hpp"
#include "pathlap/graphgen.hpp"
#include "pathlap/kpath.hpp"
#include "pathlap/rng.hpp"
#include "pathlap/spectral.hpp"

namespace fs = std::filesystem;
using namespace pathlap;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitGeneration = 3;
constexpr int kMaxDisconnectedRetries = 1000;

// Thrown for problems with flags or the config file.
struct ConfigError : Error {
  using Error::Error;
};

struct Options {
  std::string model = "ba";
  int n = 25;
  std::optional<double> p;
  int k_ring = 4;
  double beta = 0.1;
  int m = 3;
  double pb = 0.3;
  std::string case_name = "base";
  double alpha = 1.0;
  double c = 100.0;
  double tau = 1e-6;
  long iter_max = 200000;
  int record_length = 10;
  std::optional<std::uint64_t> seed;
  std::string config;
};

void add_graph_flags(CLI::App* app, Options& o) {
  app->add_option("--model", o.model, "graph model: er, ws or ba")
      ->capture_default_str();
  app->add_option("--n", o.n, "number of nodes")->capture_default_str();
  app->add_option("--p", o.p, "ER edge probability (default 2 ln n / n)");
  app->add_option("--k-ring", o.k_ring, "WS ring degree")->capture_default_str();
  app->add_option("--beta", o.beta, "WS rewiring probability")->capture_default_str();
  app->add_option("--m", o.m, "BA edges per new node")->capture_default_str();
  app->add_option("--pb", o.pb, "reverse-arc probability")->capture_default_str();
  app->add_option("--seed", o.seed, "master seed (falls back to PATHLAP_SEED, then 0)");
  app->add_option("--config", o.config, "key = value file; flags override it");
}

void add_consensus_flags(CLI::App* app, Options& o) {
  app->add_option("--alpha", o.alpha, "hop decay rate")->capture_default_str();
  app->add_option("--c", o.c, "step-size divisor")->capture_default_str();
  app->add_option("--tau", o.tau, "convergence tolerance")->capture_default_str();
  app->add_option("--iter-max", o.iter_max, "iteration cap")->capture_default_str();
  app->add_option("--T", o.record_length, "recorded prefix length")
      ->capture_default_str();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Applies a key = value file to every option the command line left unset.
void apply_config_file(CLI::App* app, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("--config: cannot open '" + path + "'");
  std::string line;
  for (int lineno = 1; std::getline(is, line); ++lineno) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "config") continue;
    CLI::Option* opt = app->get_option_no_throw("--" + key);
    if (!opt) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" +
                        key + "' for " + app->get_name());
    }
    if (opt->count() > 0) continue;
    try {
      if (opt->get_type_size() == 0) {
        if (value == "true" || value == "1") opt->add_result("true");
      } else {
        opt->add_result(value);
      }
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": --" + key +
                        ": " + e.what());
    }
  }
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("PATHLAP_SEED")) {
    try {
      std::size_t used = 0;
      auto v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("PATHLAP_SEED is not an unsigned integer: '" +
                        std::string(env) + "'");
    }
  }
  return 0;
}

GraphParams graph_params(const Options& o) {
  GraphParams p;
  p.er_p = o.p;
  p.ws_k = o.k_ring;
  p.ws_beta = o.beta;
  p.ba_m = o.m;
  return p;
}

ConsensusConfig consensus_config(const Options& o, CaseType c) {
  ConsensusConfig cfg;
  cfg.case_type = c;
  cfg.alpha = o.alpha;
  cfg.c = o.c;
  cfg.tau = o.tau;
  cfg.iter_max = o.iter_max;
  cfg.record_length = o.record_length;
  return cfg;
}

GraphModelSpec graph_spec(const Options& o) {
  GraphModelSpec spec;
  spec.model = parse_graph_model(o.model);
  spec.n = o.n;
  spec.params = graph_params(o);
  return spec;
}

void check_reverse_probability(const Options& o) {
  if (!(o.pb >= 0.0 && o.pb <= 1.0)) {
    throw ConfigError("--pb must lie in [0, 1], got " + std::to_string(o.pb));
  }
}

void warn_if_clamped(const UpdateOperator& op) {
  if (op.epsilon_clamped) {
    std::cerr << "note: step size clamped from " << op.base_epsilon << " to "
              << op.epsilon << " to keep the update nonnegative\n";
  }
}

// Graph drawn the same way the dataset layer draws sample `index`, retrying
// disconnected backbones.
DirectedGraph draw_connected(const Options& o, std::uint64_t master,
                             std::size_t index, std::uint64_t* seed_out) {
  auto spec = graph_spec(o);
  for (std::size_t attempt = 0; attempt < kMaxDisconnectedRetries; ++attempt) {
    auto seed = sample_seed(master, Split::Train, index, attempt);
    spec.seed = derive_seed(seed, {0});
    auto g = orient(sample_undirected(spec), o.pb, derive_seed(seed, {1}));
    try {
      (void)diameter(g);
    } catch (const ConnectivityError&) {
      continue;
    }
    if (seed_out) *seed_out = seed;
    return g;
  }
  throw GenerationError("no connected " + o.model + " graph on " +
                        std::to_string(o.n) + " nodes after " +
                        std::to_string(kMaxDisconnectedRetries) + " draws");
}

DirectedGraph load_graph(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("--graph: cannot open '" + path + "'");
  return read_directed_edge_list(is);
}

// --- generate --------------------------------------------------------------

struct GenerateArgs {
  std::size_t train = 2400;
  std::size_t test = 600;
  unsigned workers = 0;
  std::string out = "data";
  std::string grid;
  double resample_factor = 10.0;
  bool csv = false;
};

std::vector<DatasetConfig> paper_grid(const Options& o, std::uint64_t master,
                                      const GenerateArgs& a) {
  std::vector<DatasetConfig> grid;
  const GraphModel models[] = {GraphModel::ER, GraphModel::WS, GraphModel::BA};
  for (auto model : models) {
    for (int n : {25, 50, 100, 200, 300}) {
      for (auto c : {CaseType::Base, CaseType::Exponential}) {
        DatasetConfig cfg;
        cfg.model = model;
        cfg.n = n;
        cfg.params = graph_params(o);
        cfg.params.er_p.reset();
        cfg.reverse_p = o.pb;
        cfg.consensus = consensus_config(o, c);
        // Both cases of one (model, n) cell share graphs.
        cfg.master_seed = derive_seed(master, {static_cast<std::uint64_t>(model),
                                               static_cast<std::uint64_t>(n)});
        cfg.train_count = a.train;
        cfg.test_count = a.test;
        cfg.resample_factor = a.resample_factor;
        grid.push_back(cfg);
      }
    }
  }
  return grid;
}

int run_generate(const Options& o, const GenerateArgs& a) {
  const auto master = resolve_seed(o);
  std::vector<DatasetConfig> configs;
  if (a.grid.empty()) {
    DatasetConfig cfg;
    cfg.model = parse_graph_model(o.model);
    cfg.n = o.n;
    cfg.params = graph_params(o);
    cfg.reverse_p = o.pb;
    cfg.consensus = consensus_config(o, parse_case_type(o.case_name));
    cfg.master_seed = master;
    cfg.train_count = a.train;
    cfg.test_count = a.test;
    cfg.resample_factor = a.resample_factor;
    configs.push_back(cfg);
  } else {
    configs = paper_grid(o, master, a);
  }
  for (const auto& cfg : configs) cfg.validate();

  std::cout << "dataset\ttrain_file\ttest_file\ttrain_resamples\ttest_resamples\n";
  for (const auto& cfg : configs) {
    auto ds = generate_dataset(cfg, a.workers);
    auto files = write_dataset(ds, a.out);
    if (a.csv) {
      for (auto [split, samples] : {std::pair{"train", &ds.train},
                                    std::pair{"test", &ds.test}}) {
        std::ofstream os(fs::path(a.out) / (cfg.id() + "_" + split + ".csv"),
                         std::ios::binary);
        write_flat_csv(os, *samples, cfg.consensus.record_length);
      }
    }
    std::cout << cfg.id() << '\t' << files.train.string() << '\t'
              << files.test.string() << '\t' << ds.manifest.train_resamples
              << '\t' << ds.manifest.test_resamples << '\n';
  }
  return 0;
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
  int repeat = 1;
  std::string graph;
  std::string save_graph;
  std::string emit_trajectory;
};

int run_simulate(const Options& o, const SimulateArgs& a) {
  const auto master = resolve_seed(o);
  std::vector<CaseType> cases;
  if (o.case_name == "both") {
    cases = {CaseType::Base, CaseType::Exponential};
  } else {
    cases = {parse_case_type(o.case_name)};
  }
  if (a.repeat < 1) throw ConfigError("--repeat must be >= 1");
  if (!a.graph.empty() && a.repeat != 1) {
    throw ConfigError("--repeat needs generated graphs; drop --graph");
  }
  for (auto c : cases) consensus_config(o, c).validate();
  if (a.graph.empty()) {
    graph_spec(o).validate();
    check_reverse_probability(o);
  }

  std::ofstream trajectory;
  if (!a.emit_trajectory.empty()) {
    trajectory.open(a.emit_trajectory, std::ios::binary);
    if (!trajectory) {
      throw ConfigError("--emit-trajectory: cannot open '" + a.emit_trajectory + "'");
    }
    trajectory.precision(17);
  }

  std::map<CaseType, std::vector<long>> iterations;
  std::map<CaseType, int> converged_runs;
  std::cout << "run\tseed\tcase\tn\tarcs\tconverged\titerations\tfinal_value"
               "\tepsilon\n";
  for (int r = 0; r < a.repeat; ++r) {
    std::uint64_t seed = 0;
    DirectedGraph g = a.graph.empty()
                          ? draw_connected(o, master, static_cast<std::size_t>(r), &seed)
                          : load_graph(a.graph);
    if (r == 0 && !a.save_graph.empty()) {
      std::ofstream os(a.save_graph, std::ios::binary);
      if (!os) throw ConfigError("--save-graph: cannot open '" + a.save_graph + "'");
      write_edge_list(os, g);
    }
    for (auto c : cases) {
      auto cfg = consensus_config(o, c);
      auto op = build_update(g, cfg);
      if (r == 0) warn_if_clamped(op);
      StateObserver observer;
      if (r == 0 && trajectory.is_open()) {
        if (c == cases.front()) {
          trajectory << "case,t";
          for (int i = 0; i < g.node_count(); ++i) trajectory << ",phi_" << i;
          trajectory << '\n';
        }
        observer = [&trajectory, c](long t, const Eigen::VectorXd& phi) {
          trajectory << to_string(c) << ',' << t;
          for (double v : phi) trajectory << ',' << v;
          trajectory << '\n';
        };
      }
      auto run = run_consensus(op, initial_state(g), cfg, observer);
      iterations[c].push_back(run.iterations);
      converged_runs[c] += run.converged;
      std::cout.precision(10);
      std::cout << r << '\t' << seed << '\t' << to_string(c) << '\t'
                << g.node_count() << '\t' << g.arc_count() << '\t'
                << (run.converged ? "true" : "false") << '\t' << run.iterations
                << '\t' << run.final_value << '\t' << run.epsilon_used << '\n';
    }
  }

  if (a.repeat > 1) {
    std::cout << "\ncase\truns\tconverged\tmedian_iterations\n";
    for (auto c : cases) {
      auto& its = iterations[c];
      std::sort(its.begin(), its.end());
      const auto mid = its.size() / 2;
      double median = its.size() % 2 ? static_cast<double>(its[mid])
                                     : 0.5 * static_cast<double>(its[mid - 1] + its[mid]);
      std::cout << to_string(c) << '\t' << its.size() << '\t' << converged_runs[c]
                << '\t' << median << '\n';
    }
  }
  return 0;
}

// --- spectral --------------------------------------------------------------

struct SpectralArgs {
  std::string graph;
  std::string mode = "undirected";
  std::string export_dir;
};

int run_spectral(const Options& o, const SpectralArgs& a) {
  DistanceMode mode;
  if (a.mode == "undirected") {
    mode = DistanceMode::UnderlyingUndirected;
  } else if (a.mode == "directed") {
    mode = DistanceMode::Directed;
  } else {
    throw ConfigError("--mode must be 'directed' or 'undirected', got '" + a.mode + "'");
  }
  if (a.graph.empty()) {
    graph_spec(o).validate();
    check_reverse_probability(o);
  }
  DirectedGraph g = a.graph.empty() ? draw_connected(o, resolve_seed(o), 0, nullptr)
                                    : load_graph(a.graph);
  auto dec = k_path_decomposition(g, mode);
  if (!a.export_dir.empty()) export_decomposition_csv(dec, a.export_dir);

  std::cout.precision(12);
  std::cout << "k\tcomponents\tzero_multiplicity\tfiedler\n";
  for (const auto& row : spectral_report(dec)) {
    std::cout << row.k << '\t' << row.component_count << '\t'
              << row.zero_multiplicity << '\t';
    if (row.fiedler_value) {
      std::cout << *row.fiedler_value;
    } else {
      std::cout << "NA";
    }
    std::cout << '\n';
  }
  return 0;
}

// --- evaluate --------------------------------------------------------------

struct EvaluateArgs {
  std::vector<std::string> files;
  std::string strategy = "all";
};

int run_evaluate(const EvaluateArgs& a) {
  std::vector<BaselineStrategy> strategies;
  if (a.strategy == "all") {
    strategies = {BaselineStrategy::LastStateMean, BaselineStrategy::InitialMean};
  } else {
    strategies = {parse_baseline_strategy(a.strategy)};
  }
  std::cout.precision(10);
  std::cout << "model\tn\tcase\tsplit\tstrategy\trmse\tmape\tmape_excluded\ttime_ms\n";
  for (const auto& file : a.files) {
    auto data = read_jsonl(fs::path(file));
    const auto& cfg = data.manifest.config;
    if (data.samples.empty()) {
      std::cerr << "warning: " << file << " has no samples, skipped\n";
      continue;
    }
    for (auto s : strategies) {
      auto r = evaluate_baseline(data.samples, s, cfg.id());
      if (r.mape_excluded > 0) {
        std::cerr << "warning: " << file << ": " << r.mape_excluded
                  << " zero targets left out of MAPE\n";
      }
      std::cout << to_string(cfg.model) << '\t' << cfg.n << '\t'
                << to_string(cfg.consensus.case_type) << '\t'
                << to_string(data.split) << '\t' << r.model_name << '\t' << r.rmse
                << '\t' << r.mape << '\t' << r.mape_excluded << '\t'
                << r.prediction_time_ms << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-path Laplacian consensus dataset generator"};
  app.require_subcommand(1);

  Options o;

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write train/test JSONL datasets");
  add_graph_flags(generate, o);
  add_consensus_flags(generate, o);
  generate->add_option("--case", o.case_name, "base or exponential")->capture_default_str();
  generate->add_option("--train", gen.train, "training samples")->capture_default_str();
  generate->add_option("--test", gen.test, "test samples")->capture_default_str();
  generate->add_option("--workers", gen.workers, "worker threads (0 = all cores)")
      ->capture_default_str();
  generate->add_option("--out", gen.out, "output directory")->capture_default_str();
  generate->add_option("--grid", gen.grid, "named grid; 'paper' runs 3 models x 5 sizes x 2 cases")
      ->check(CLI::IsMember({"paper"}));
  generate->add_option("--resample-factor", gen.resample_factor,
                       "attempt budget per requested sample")
      ->capture_default_str();
  generate->add_flag("--csv", gen.csv, "also write flat CSV tables");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "run consensus on one graph per repeat");
  add_graph_flags(simulate, o);
  add_consensus_flags(simulate, o);
  simulate->add_option("--case", o.case_name, "base, exponential or both")
      ->capture_default_str();
  simulate->add_option("--repeat", sim.repeat, "number of graphs")->capture_default_str();
  simulate->add_option("--graph", sim.graph, "read a directed edge list instead");
  simulate->add_option("--save-graph", sim.save_graph, "write the first graph");
  simulate->add_option("--emit-trajectory", sim.emit_trajectory,
                       "CSV of every state of the first run");

  SpectralArgs spec;
  auto* spectral = app.add_subcommand("spectral", "k-path connectivity table");
  add_graph_flags(spectral, o);
  spectral->add_option("--graph", spec.graph, "read a directed edge list instead");
  spectral->add_option("--mode", spec.mode, "distance mode: undirected or directed")
      ->capture_default_str();
  spectral->add_option("--export-dir", spec.export_dir, "write P_k.csv and L_k.csv");

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "baseline metrics for JSONL datasets");
  evaluate->add_option("files", ev.files, "dataset JSONL files")->required();
  evaluate->add_option("--strategy", ev.strategy,
                       "last_state_mean, initial_mean or all")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!o.config.empty()) apply_config_file(active, o.config);
    if (active == generate) return run_generate(o, gen);
    if (active == simulate) return run_simulate(o, sim);
    if (active == spectral) return run_spectral(o, spec);
    return run_evaluate(ev);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGeneration;
  } catch (const ConnectivityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGeneration;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
