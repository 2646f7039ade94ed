// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#include "pathlap/dataset.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "pathlap/errors.hpp"
#include "pathlap/kpath.hpp"
#include "pathlap/rng.hpp"

namespace pathlap {

std::string_view to_string(Split s) noexcept {
  return s == Split::Train ? "train" : "test";
}

GraphModelSpec DatasetConfig::graph_spec() const {
  GraphModelSpec spec;
  spec.model = model;
  spec.n = n;
  spec.params = params;
  return spec;
}

void DatasetConfig::validate() const {
  if (n < 2) throw ParameterError("datasets need n >= 2, got " + std::to_string(n));
  graph_spec().validate();
  consensus.validate();
  if (!(reverse_p >= 0.0 && reverse_p <= 1.0)) {
    throw ParameterError("reverse-arc probability must lie in [0, 1], got " +
                         std::to_string(reverse_p));
  }
  if (train_count < 1 || test_count < 1) {
    throw ParameterError("train and test counts must be >= 1");
  }
  if (!(resample_factor >= 1.0)) {
    throw ParameterError("resample factor must be >= 1, got " +
                         std::to_string(resample_factor));
  }
}

std::string DatasetConfig::id() const {
  return std::string(to_string(model)) + "_n" + std::to_string(n) + "_" +
         std::string(to_string(consensus.case_type));
}

std::uint64_t sample_seed(std::uint64_t master_seed, Split split,
                          std::size_t index, std::size_t attempt) {
  return derive_seed(master_seed, {split == Split::Train ? 0u : 1u, index,
                                   attempt});
}

SimulationOutcome simulate_seed(const DatasetConfig& cfg, std::uint64_t seed) {
  auto spec = cfg.graph_spec();
  spec.seed = derive_seed(seed, {0});
  auto backbone = sample_undirected(spec);

  SimulationOutcome out;
  out.graph = orient(backbone, cfg.reverse_p, derive_seed(seed, {1}));
  // Orientation keeps at least one arc per edge, so the backbone and the
  // underlying graph of out.graph coincide.
  std::optional<KPathDecomposition> dec;
  try {
    if (cfg.consensus.case_type == CaseType::Exponential) {
      dec = k_path_decomposition(out.graph, DistanceMode::Directed);
    } else {
      (void)diameter(out.graph);
    }
  } catch (const ConnectivityError&) {
    out.rejection = Rejection::Disconnected;
    return out;
  }
  auto op = dec ? build_update(out.graph, *dec, cfg.consensus)
                : build_update(out.graph, cfg.consensus);
  out.run = run_consensus(op, initial_state(out.graph), cfg.consensus);
  if (!out.run->converged) out.rejection = Rejection::NotConverged;
  return out;
}

ConsensusRun replay_sample(const DatasetConfig& cfg,
                           const TrajectorySample& sample) {
  auto out = simulate_seed(cfg, sample.seed);
  if (out.rejection != Rejection::None) {
    throw GenerationError("sample seed " + std::to_string(sample.seed) +
                          " does not reproduce an accepted run");
  }
  return std::move(*out.run);
}

namespace {

TrajectorySample to_sample(const DatasetConfig& cfg, std::uint64_t seed,
                           const ConsensusRun& run) {
  TrajectorySample s;
  s.model = cfg.model;
  s.n = cfg.n;
  s.case_type = cfg.consensus.case_type;
  s.seed = seed;
  s.states.reserve(run.states.size());
  for (const auto& st : run.states) {
    s.states.emplace_back(st.data(), st.data() + st.size());
  }
  s.final_value = run.final_value;
  s.iterations = run.iterations;
  s.epsilon = run.epsilon_used;
  return s;
}

struct Job {
  Split split;
  std::size_t index;
};

}  // namespace

Dataset generate_dataset(const DatasetConfig& cfg, unsigned workers) {
  cfg.validate();
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

  Dataset ds;
  ds.manifest.config = cfg;
  ds.manifest.train_count = cfg.train_count;
  ds.manifest.test_count = cfg.test_count;
  ds.train.resize(cfg.train_count);
  ds.test.resize(cfg.test_count);

  const std::size_t total = cfg.train_count + cfg.test_count;
  const auto budget = static_cast<std::size_t>(
      std::ceil(cfg.resample_factor * static_cast<double>(total)));
  std::vector<std::size_t> attempts_used(total, 0);

  std::atomic<std::size_t> next_job{0};
  std::atomic<std::size_t> attempts{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto job_at = [&](std::size_t j) {
    return j < cfg.train_count ? Job{Split::Train, j}
                               : Job{Split::Test, j - cfg.train_count};
  };

  auto worker = [&] {
    try {
      for (std::size_t j = next_job++; j < total && !stop; j = next_job++) {
        auto job = job_at(j);
        for (std::size_t attempt = 0;; ++attempt) {
          if (attempts.fetch_add(1) + 1 > budget) {
            throw GenerationError(
                cfg.id() + ": resample budget of " + std::to_string(budget) +
                " attempts exhausted (too many disconnected backbones or "
                "non-converged runs)");
          }
          if (stop) return;
          auto seed = sample_seed(cfg.master_seed, job.split, job.index, attempt);
          auto out = simulate_seed(cfg, seed);
          if (out.rejection != Rejection::None) continue;
          auto& slot = job.split == Split::Train ? ds.train[job.index]
                                                 : ds.test[job.index];
          slot = to_sample(cfg, seed, *out.run);
          attempts_used[j] = attempt + 1;
          break;
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      stop = true;
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t j = 0; j < total; ++j) {
    auto& resamples = j < cfg.train_count ? ds.manifest.train_resamples
                                          : ds.manifest.test_resamples;
    resamples += attempts_used[j] - 1;
  }
  return ds;
}

}  // namespace pathlap
