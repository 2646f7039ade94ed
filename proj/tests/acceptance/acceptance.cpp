// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
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
using Clock = std::chrono::steady_clock;

namespace {

constexpr GraphModel kModels[] = {GraphModel::ER, GraphModel::WS, GraphModel::BA};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

int failures = 0;
std::string only;  // optional substring filter from argv

template <class Body>
void criterion(const std::string& name, Body body) {
  if (!only.empty() && name.find(only) == std::string::npos) return;
  Outcome out;
  auto start = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::cout << (out.pass ? "PASS" : "FAIL") << "  " << name << "  ["
            << out.detail.str() << "elapsed " << std::fixed
            << std::setprecision(1) << secs << " s]" << std::endl;
  std::cout.unsetf(std::ios::fixed);
  if (!out.pass) ++failures;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// Connected oriented graph drawn like a dataset sample.
DirectedGraph connected_graph(GraphModel model, int n, double pb,
                              std::uint64_t master, std::size_t index) {
  GraphModelSpec spec;
  spec.model = model;
  spec.n = n;
  for (std::size_t attempt = 0;; ++attempt) {
    auto seed = sample_seed(master, Split::Train, index, attempt);
    spec.seed = derive_seed(seed, {0});
    auto g = orient(sample_undirected(spec), pb, derive_seed(seed, {1}));
    if (oracle::bfs_diameter(g)) return g;
  }
}

double max_abs_row_sum(const Eigen::MatrixXd& m) {
  return m.rowwise().sum().cwiseAbs().maxCoeff();
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(PATHLAP_CLI_PATH) + " " + args + " > /dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

double median(std::vector<long> v) {
  std::sort(v.begin(), v.end());
  auto mid = v.size() / 2;
  return v.size() % 2 ? static_cast<double>(v[mid])
                      : 0.5 * static_cast<double>(v[mid - 1] + v[mid]);
}

// --- criteria ---------------------------------------------------------------

void operator_invariants(Outcome& out) {
  auto start = Clock::now();
  std::mt19937_64 rng(41);
  std::normal_distribution<double> normal;
  ConsensusConfig base, expo;
  expo.case_type = CaseType::Exponential;
  double worst_row = 0, worst_quad = 0, worst_stoch = 0, min_entry = 1;
  int graphs = 0, layers = 0;
  for (auto model : kModels) {
    for (int n : {10, 25, 50}) {
      for (std::size_t i = 0; i < 100; ++i) {
        auto g = connected_graph(model, n, 0.3, 1001, i);
        ++graphs;
        auto fw_und = oracle::floyd_warshall(g, true);
        auto fw_dir = oracle::floyd_warshall(g, false);
        auto dir = k_path_decomposition(g, DistanceMode::Directed);
        auto und = k_path_decomposition(g, DistanceMode::UnderlyingUndirected);
        for (const auto& layer : dir.layers) {
          worst_row = std::max(worst_row, max_abs_row_sum(layer.laplacian));
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
              bool expect = a != b && fw_dir[a][b] && *fw_dir[a][b] == layer.k;
              if ((layer.adjacency(a, b) == 1.0) != expect)
                out.fail("directed P_k disagrees with Floyd-Warshall");
            }
        }
        for (const auto& layer : und.layers) {
          ++layers;
          worst_row = std::max(worst_row, max_abs_row_sum(layer.laplacian));
          Eigen::VectorXd y(n);
          for (auto& v : y) v = normal(rng);
          double q = y.dot(layer.laplacian * y);
          worst_quad = std::max(
              worst_quad, std::abs(q - oracle::pair_quadratic_form(fw_und, layer.k, y)));
        }
        for (const auto* cfg : {&base, &expo}) {
          auto op = build_update(g, *cfg);
          worst_stoch = std::max(
              worst_stoch, (op.matrix.rowwise().sum().array() - 1.0).abs().maxCoeff());
          min_entry = std::min(min_entry, op.matrix.minCoeff());
        }
      }
    }
  }
  double secs = seconds_since(start);
  if (worst_row > 1e-12) out.fail("L_k row sum " + std::to_string(worst_row));
  if (worst_quad > 1e-10) out.fail("quadratic form error " + std::to_string(worst_quad));
  if (worst_stoch > 1e-12) out.fail("update row sum off by " + std::to_string(worst_stoch));
  if (min_entry < 0) out.fail("negative update entry " + std::to_string(min_entry));
  if (secs >= 30) out.fail("runtime " + std::to_string(secs) + " s >= 30 s");
  out.detail << graphs << " graphs, " << layers << " undirected layers; max |row sum| "
             << worst_row << ", max quad-form error " << worst_quad
             << ", max |update row sum - 1| " << worst_stoch << ", min update entry "
             << min_entry << "; ";
}

void connectivity_theorem(Outcome& out) {
  auto start = Clock::now();
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> size(2, 12);
  std::uniform_real_distribution<double> density(0.15, 0.7);
  int graphs = 0, layers = 0, disconnected_layers = 0;
  while (graphs < 200) {
    auto g = oracle::random_symmetric(size(rng), density(rng), rng);
    if (!oracle::bfs_diameter(g)) continue;
    ++graphs;
    auto dec = k_path_decomposition(g, DistanceMode::UnderlyingUndirected);
    for (const auto& layer : dec.layers) {
      ++layers;
      int comps = component_count(k_path_components(dec, layer.k));
      int dfs = oracle::count_components(dec.n, [&](int i, int j) {
        return layer.adjacency(i, j) != 0.0;
      });
      int zeros = zero_multiplicity(layer.laplacian);
      disconnected_layers += comps > 1;
      if (zeros != comps || comps != dfs) {
        out.fail("k=" + std::to_string(layer.k) + ": zero multiplicity " +
                 std::to_string(zeros) + ", components " + std::to_string(comps) +
                 ", DFS " + std::to_string(dfs));
      }
    }
  }
  double secs = seconds_since(start);
  if (secs >= 10) out.fail("runtime " + std::to_string(secs) + " s >= 10 s");
  out.detail << graphs << " graphs, " << layers << " layers (" << disconnected_layers
             << " disconnected); ";
}

void consensus_oracle(Outcome& out) {
  auto start = Clock::now();
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> size(8, 30);
  double worst = 0, worst_sym = 0;
  int graphs = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    auto g = connected_graph(kModels[i % 3], size(rng), 0.3, 1003, i);
    ConsensusConfig cfg;
    cfg.case_type = i % 2 ? CaseType::Exponential : CaseType::Base;
    // Tight tolerance so the stopping error sits far below the 1e-6 check.
    cfg.c = 10;
    cfg.tau = 1e-12;
    cfg.iter_max = 20'000'000;
    auto op = build_update(g, cfg);
    auto phi0 = initial_state(g);
    auto run = run_consensus(op, phi0, cfg);
    if (!run.converged) out.fail("run " + std::to_string(i) + " did not converge");
    double predicted = oracle::limit_weights(op.matrix).dot(phi0);
    worst = std::max(worst, std::abs(run.final_value - predicted));
    ++graphs;
  }
  for (std::size_t i = 0; i < 30; ++i) {
    auto g = connected_graph(kModels[i % 3], size(rng), 1.0, 1004, i);
    ConsensusConfig cfg;  // defaults
    cfg.case_type = i % 2 ? CaseType::Exponential : CaseType::Base;
    auto phi0 = initial_state(g);
    auto run = run_consensus(build_update(g, cfg), phi0, cfg);
    worst_sym = std::max(worst_sym, std::abs(run.final_value - phi0.mean()));
  }
  double secs = seconds_since(start);
  if (worst > 1e-6) out.fail("left-Perron error " + std::to_string(worst));
  if (worst_sym > 1e-6) out.fail("p_b=1 mean error " + std::to_string(worst_sym));
  if (secs >= 30) out.fail("runtime " + std::to_string(secs) + " s >= 30 s");
  out.detail << graphs << " digraphs, max |final - left-Perron| " << worst
             << "; 30 p_b=1 graphs, max |final - mean(phi0)| " << worst_sym << "; ";
}

void acceleration(Outcome& out) {
  for (auto model : kModels) {
    std::vector<long> base_its, exp_its;
    int base_nc = 0, exp_nc = 0;
    for (std::size_t s = 0; s < 50; ++s) {
      auto g = connected_graph(model, 50, 0.3, 1005, s);
      auto phi0 = initial_state(g);
      for (auto c : {CaseType::Base, CaseType::Exponential}) {
        ConsensusConfig cfg;
        cfg.case_type = c;
        // Non-converged runs count as iter_max.
        auto run = run_consensus(build_update(g, cfg), phi0, cfg);
        (c == CaseType::Base ? base_its : exp_its).push_back(run.iterations);
        (c == CaseType::Base ? base_nc : exp_nc) += !run.converged;
      }
    }
    double mb = median(base_its), me = median(exp_its);
    out.detail << to_string(model) << " median base " << mb << " vs exponential " << me
               << " (non-converged " << base_nc << "/" << exp_nc << "); ";
    if (me > mb) out.fail(std::string(to_string(model)) + " exponential median slower");
  }
}

void generation_fidelity(Outcome& out) {
  const auto root = fs::temp_directory_path() / "pathlap_acceptance";
  fs::remove_all(root);
  const std::string grid = "generate --grid paper --train 24 --test 6 --seed 20260 ";
  auto t0 = Clock::now();
  int rc_a = run_cli(grid + "--workers 1 --out " + (root / "a").string());
  double grid_secs = seconds_since(t0);
  int rc_b = run_cli(grid + "--workers 4 --out " + (root / "b").string());
  if (rc_a != 0 || rc_b != 0) {
    out.fail("grid generation exit codes " + std::to_string(rc_a) + ", " +
             std::to_string(rc_b));
    return;
  }

  int files = 0, identical = 0, pairs = 0;
  std::size_t samples = 0;
  double worst_replay = 0;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    const auto name = entry.path().filename();
    ++files;
    if (slurp(entry.path()) == slurp(root / "b" / name)) ++identical;
    auto data = read_jsonl(entry.path());
    std::size_t want = data.split == Split::Train ? 24 : 6;
    if (data.samples.size() != want) out.fail(name.string() + " has wrong sample count");
    if (data.split == Split::Train && fs::exists(root / "a" / (data.manifest.config.id() + "_test.jsonl")))
      ++pairs;
    for (const auto& s : data.samples) {
      ++samples;
      auto run = replay_sample(data.manifest.config, s);
      if (run.iterations != s.iterations || run.valid_steps() != s.valid_steps()) {
        out.fail(name.string() + ": replay changed iterations or prefix length");
        continue;
      }
      double err = std::abs(run.final_value - s.final_value);
      for (std::size_t t = 0; t < run.states.size(); ++t)
        for (int i = 0; i < s.n; ++i)
          err = std::max(err, std::abs(run.states[t](i) -
                                       s.states[t][static_cast<std::size_t>(i)]));
      worst_replay = std::max(worst_replay, err);
    }
  }
  if (pairs != 30 || files != 60) out.fail("expected 30 dataset pairs");
  if (identical != files) out.fail("worker count changed output bytes");
  if (worst_replay > 1e-9) out.fail("replay error " + std::to_string(worst_replay));
  out.detail << pairs << " dataset pairs (" << files << " files, grid run "
             << static_cast<int>(grid_secs) << " s); " << identical
             << " byte-identical across --workers 1/4; " << samples
             << " samples replayed, max error " << worst_replay << "; ";
  fs::remove_all(root);

  // Full scale at n = 25: every model and case.
  auto full = root / "full";
  auto t1 = Clock::now();
  for (auto model : kModels) {
    for (const char* c : {"base", "exponential"}) {
      int rc = run_cli("generate --n 25 --train 2400 --test 600 --seed 7 --model " +
                       std::string(to_string(model)) + " --case " + c + " --out " +
                       full.string());
      if (rc != 0) out.fail("full-scale generation exit code " + std::to_string(rc));
    }
  }
  double full_secs = seconds_since(t1);
  std::size_t full_samples = 0;
  for (const auto& entry : fs::directory_iterator(full))
    full_samples += read_jsonl(entry.path()).samples.size();
  if (full_samples != 6 * 3000) out.fail("full-scale sample count " + std::to_string(full_samples));
  if (full_secs >= 600) out.fail("full-scale n=25 took " + std::to_string(full_secs) + " s");
  out.detail << "full scale 2400/600 at n=25 for 3 models x 2 cases in "
             << static_cast<int>(full_secs) << " s; ";
  fs::remove_all(root);
}

void baseline_metrics(Outcome& out) {
  double worst_mape = 0, worst_metric = 0;
  std::size_t fixture = 0;
  for (auto model : kModels) {
    for (auto c : {CaseType::Base, CaseType::Exponential}) {
      DatasetConfig cfg;
      cfg.model = model;
      cfg.n = 25;
      cfg.reverse_p = 1.0;
      cfg.consensus.case_type = c;
      cfg.master_seed = 1006;
      cfg.train_count = 20;
      cfg.test_count = 60;
      auto ds = generate_dataset(cfg, 1);
      fixture += ds.test.size();
      auto r = evaluate_baseline(ds.test, BaselineStrategy::InitialMean, cfg.id());
      worst_mape = std::max(worst_mape, r.mape);
      for (auto s : {BaselineStrategy::InitialMean, BaselineStrategy::LastStateMean}) {
        std::vector<double> p, t;
        for (const auto& x : ds.test) {
          p.push_back(baseline_predict(x, s));
          t.push_back(x.final_value);
        }
        worst_metric = std::max({worst_metric,
                                 std::abs(rmse(p, t) - oracle::reference_rmse(p, t)),
                                 std::abs(mape(p, t).percent - oracle::reference_mape(p, t))});
      }
    }
  }
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> target(0.5, 10.0);
  std::normal_distribution<double> noise(0.0, 0.5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> p(300), t(300);
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = target(rng);
      p[i] = t[i] + noise(rng);
    }
    worst_metric = std::max({worst_metric,
                             std::abs(rmse(p, t) - oracle::reference_rmse(p, t)),
                             std::abs(mape(p, t).percent - oracle::reference_mape(p, t))});
  }
  if (worst_mape >= 0.01) out.fail("initial_mean MAPE " + std::to_string(worst_mape) + "%");
  if (worst_metric > 1e-12) out.fail("metric mismatch " + std::to_string(worst_metric));
  out.detail << fixture << " p_b=1 test samples, max initial_mean MAPE " << worst_mape
             << "%; max |metric - reference| " << worst_metric << "; ";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) only = argv[1];
  std::cout.precision(4);
  criterion("operator invariants", operator_invariants);
  criterion("connectivity theorem", connectivity_theorem);
  criterion("consensus oracle", consensus_oracle);
  criterion("acceleration trend", acceleration);
  criterion("generation fidelity", generation_fidelity);
  criterion("baseline metrics", baseline_metrics);
  std::cout << (failures == 0 ? "all criteria passed" : "some criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
