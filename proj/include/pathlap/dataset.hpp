// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pathlap/consensus.hpp"
#include "pathlap/graph.hpp"
#include "pathlap/graphgen.hpp"

namespace pathlap {

inline constexpr int kSchemaVersion = 1;

enum class Split { Train, Test };
std::string_view to_string(Split s) noexcept;

struct DatasetConfig {
  GraphModel model = GraphModel::BA;
  int n = 25;
  GraphParams params;
  double reverse_p = 0.3;
  ConsensusConfig consensus;
  std::uint64_t master_seed = 0;
  std::size_t train_count = 2400;
  std::size_t test_count = 600;
  /// Total attempts allowed = resample_factor * (train_count + test_count).
  double resample_factor = 10.0;

  /// Graph spec for one sample; the seed is filled in by the caller.
  GraphModelSpec graph_spec() const;
  /// Throws ParameterError naming the violated bound.
  void validate() const;
  /// e.g. "BA_n25_base"
  std::string id() const;
};

/// One supervised record: the recorded state prefix and the consensus target.
struct TrajectorySample {
  GraphModel model = GraphModel::BA;
  int n = 0;
  CaseType case_type = CaseType::Base;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> states;  // valid_steps rows of n values
  double final_value = 0.0;
  long iterations = 0;
  double epsilon = 0.0;

  int valid_steps() const noexcept { return static_cast<int>(states.size()); }
  friend bool operator==(const TrajectorySample&,
                         const TrajectorySample&) = default;
};

struct DatasetManifest {
  int format_version = kSchemaVersion;
  DatasetConfig config;
  std::size_t train_count = 0;
  std::size_t test_count = 0;
  std::size_t train_resamples = 0;
  std::size_t test_resamples = 0;
};

struct Dataset {
  DatasetManifest manifest;
  std::vector<TrajectorySample> train;
  std::vector<TrajectorySample> test;
};

/// Seed of attempt `attempt` for sample `index` of a split. Train and test
/// draw from separate streams.
std::uint64_t sample_seed(std::uint64_t master_seed, Split split,
                          std::size_t index, std::size_t attempt);

enum class Rejection { None, Disconnected, NotConverged };

struct SimulationOutcome {
  DirectedGraph graph;
  Rejection rejection = Rejection::None;
  std::optional<ConsensusRun> run;  // empty for disconnected backbones
};

/// Full pipeline for one sample seed: backbone, orientation, update
/// operator, initial state, iteration.
SimulationOutcome simulate_seed(const DatasetConfig& cfg,
                                std::uint64_t seed);

/// Re-runs the simulation behind a stored sample. Throws GenerationError
/// when the seed no longer produces an accepted run.
ConsensusRun replay_sample(const DatasetConfig& cfg,
                           const TrajectorySample& sample);

/// Generates train and test splits. Samples with a disconnected backbone or
/// a run that hits iter_max are redrawn with the next attempt seed. Output
/// depends only on cfg, never on workers (0 = hardware concurrency).
/// Throws GenerationError when the attempt budget runs out.
Dataset generate_dataset(const DatasetConfig& cfg, unsigned workers = 0);

// JSONL files: the first line is {"manifest": {...}}, then one record per
// line.
void write_jsonl(std::ostream& os, const DatasetManifest& manifest,
                 Split split, const std::vector<TrajectorySample>& samples);

struct JsonlFile {
  DatasetManifest manifest;
  Split split = Split::Train;
  std::vector<TrajectorySample> samples;
};

/// Throws FormatError with the 1-based line number on malformed input or a
/// schema version other than kSchemaVersion.
JsonlFile read_jsonl(std::istream& is);
JsonlFile read_jsonl(const std::filesystem::path& file);

struct DatasetFiles {
  std::filesystem::path train;
  std::filesystem::path test;
};

/// Writes <id>_train.jsonl and <id>_test.jsonl into dir.
DatasetFiles write_dataset(const Dataset& ds, const std::filesystem::path& dir);

/// Flattened feature table: f_<t>_<i> columns for t < record_length and
/// i < n, then valid_steps and target. Short prefixes are padded with their
/// last recorded state. All samples must share n.
void write_flat_csv(std::ostream& os,
                    const std::vector<TrajectorySample>& samples,
                    int record_length);

}  // namespace pathlap
