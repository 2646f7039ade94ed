// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>

#include "pathlap/dataset.hpp"
#include "pathlap/errors.hpp"

namespace pathlap {

using Json = nlohmann::ordered_json;

namespace {

Json params_json(const DatasetConfig& cfg) {
  Json p = Json::object();
  switch (cfg.model) {
    case GraphModel::ER:
      p["p"] = cfg.graph_spec().er_probability();
      break;
    case GraphModel::WS:
      p["k_ring"] = cfg.params.ws_k.value_or(4);
      p["beta"] = cfg.params.ws_beta.value_or(0.1);
      break;
    case GraphModel::BA:
      p["m"] = cfg.params.ba_m.value_or(3);
      break;
  }
  return p;
}

Json manifest_json(const DatasetManifest& m, Split split) {
  const auto& cfg = m.config;
  Json j;
  j["format_version"] = m.format_version;
  j["split"] = to_string(split);
  j["model"] = to_string(cfg.model);
  j["n"] = cfg.n;
  j["case"] = to_string(cfg.consensus.case_type);
  j["params"] = params_json(cfg);
  j["reverse_p"] = cfg.reverse_p;
  j["alpha"] = cfg.consensus.alpha;
  j["c"] = cfg.consensus.c;
  j["tau"] = cfg.consensus.tau;
  j["iter_max"] = cfg.consensus.iter_max;
  j["record_length"] = cfg.consensus.record_length;
  j["master_seed"] = cfg.master_seed;
  j["resample_factor"] = cfg.resample_factor;
  j["train_count"] = m.train_count;
  j["test_count"] = m.test_count;
  j["train_resamples"] = m.train_resamples;
  j["test_resamples"] = m.test_resamples;
  return Json{{"manifest", std::move(j)}};
}

Json sample_json(const TrajectorySample& s) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["model"] = to_string(s.model);
  j["n"] = s.n;
  j["case"] = to_string(s.case_type);
  j["seed"] = s.seed;
  j["valid_steps"] = s.valid_steps();
  j["states"] = s.states;
  j["final_value"] = s.final_value;
  j["iterations"] = s.iterations;
  j["epsilon"] = s.epsilon;
  return j;
}

template <class T>
T field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const Json::exception&) {
    throw FormatError(std::string("field '") + key + "' has the wrong type");
  }
}

DatasetManifest parse_manifest(const Json& j, Split& split) {
  DatasetManifest m;
  m.format_version = field<int>(j, "format_version");
  if (m.format_version != kSchemaVersion) {
    throw FormatError("unsupported format version " +
                      std::to_string(m.format_version) + " (expected " +
                      std::to_string(kSchemaVersion) + ")");
  }
  auto split_name = field<std::string>(j, "split");
  if (split_name == "train") {
    split = Split::Train;
  } else if (split_name == "test") {
    split = Split::Test;
  } else {
    throw FormatError("unknown split '" + split_name + "'");
  }
  auto& cfg = m.config;
  try {
    cfg.model = parse_graph_model(field<std::string>(j, "model"));
    cfg.consensus.case_type = parse_case_type(field<std::string>(j, "case"));
  } catch (const ParameterError& e) {
    throw FormatError(e.what());
  }
  cfg.n = field<int>(j, "n");
  auto params = field<Json>(j, "params");
  switch (cfg.model) {
    case GraphModel::ER:
      cfg.params.er_p = field<double>(params, "p");
      break;
    case GraphModel::WS:
      cfg.params.ws_k = field<int>(params, "k_ring");
      cfg.params.ws_beta = field<double>(params, "beta");
      break;
    case GraphModel::BA:
      cfg.params.ba_m = field<int>(params, "m");
      break;
  }
  cfg.reverse_p = field<double>(j, "reverse_p");
  cfg.consensus.alpha = field<double>(j, "alpha");
  cfg.consensus.c = field<double>(j, "c");
  cfg.consensus.tau = field<double>(j, "tau");
  cfg.consensus.iter_max = field<long>(j, "iter_max");
  cfg.consensus.record_length = field<int>(j, "record_length");
  cfg.master_seed = field<std::uint64_t>(j, "master_seed");
  cfg.resample_factor = field<double>(j, "resample_factor");
  m.train_count = cfg.train_count = field<std::size_t>(j, "train_count");
  m.test_count = cfg.test_count = field<std::size_t>(j, "test_count");
  m.train_resamples = field<std::size_t>(j, "train_resamples");
  m.test_resamples = field<std::size_t>(j, "test_resamples");
  return m;
}

TrajectorySample parse_sample(const Json& j) {
  auto schema = field<int>(j, "schema");
  if (schema != kSchemaVersion) {
    throw FormatError("unsupported schema " + std::to_string(schema) +
                      " (expected " + std::to_string(kSchemaVersion) + ")");
  }
  TrajectorySample s;
  try {
    s.model = parse_graph_model(field<std::string>(j, "model"));
    s.case_type = parse_case_type(field<std::string>(j, "case"));
  } catch (const ParameterError& e) {
    throw FormatError(e.what());
  }
  s.n = field<int>(j, "n");
  s.seed = field<std::uint64_t>(j, "seed");
  s.states = field<std::vector<std::vector<double>>>(j, "states");
  s.final_value = field<double>(j, "final_value");
  s.iterations = field<long>(j, "iterations");
  s.epsilon = field<double>(j, "epsilon");
  auto valid = field<int>(j, "valid_steps");
  if (valid != s.valid_steps()) {
    throw FormatError("valid_steps = " + std::to_string(valid) + " but " +
                      std::to_string(s.valid_steps()) + " states present");
  }
  for (const auto& st : s.states) {
    if (static_cast<int>(st.size()) != s.n) {
      throw FormatError("state vector length differs from n = " +
                        std::to_string(s.n));
    }
  }
  if (!std::isfinite(s.final_value)) throw FormatError("final_value not finite");
  return s;
}

}  // namespace

void write_jsonl(std::ostream& os, const DatasetManifest& manifest, Split split,
                 const std::vector<TrajectorySample>& samples) {
  os << manifest_json(manifest, split).dump() << '\n';
  for (const auto& s : samples) os << sample_json(s).dump() << '\n';
}

JsonlFile read_jsonl(std::istream& is) {
  JsonlFile file;
  std::string line;
  std::size_t lineno = 0;
  bool have_manifest = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      Json j = Json::parse(line);
      if (!have_manifest) {
        auto it = j.find("manifest");
        if (!j.is_object() || it == j.end()) {
          throw FormatError("first line must be a manifest object");
        }
        file.manifest = parse_manifest(*it, file.split);
        have_manifest = true;
      } else {
        if (!j.is_object()) throw FormatError("record is not a JSON object");
        file.samples.push_back(parse_sample(j));
      }
    } catch (const FormatError& e) {
      if (e.line() != 0) throw;
      throw FormatError(e.what(), lineno);
    } catch (const Json::exception& e) {
      throw FormatError(std::string("malformed JSON: ") + e.what(), lineno);
    }
  }
  if (!have_manifest) throw FormatError("missing manifest line");
  std::size_t expected = file.split == Split::Train ? file.manifest.train_count
                                                    : file.manifest.test_count;
  if (file.samples.size() != expected) {
    throw FormatError("manifest announces " + std::to_string(expected) +
                      " records, found " + std::to_string(file.samples.size()));
  }
  return file;
}

JsonlFile read_jsonl(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw Error("cannot open " + file.string());
  return read_jsonl(is);
}

DatasetFiles write_dataset(const Dataset& ds, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto id = ds.manifest.config.id();
  DatasetFiles files{dir / (id + "_train.jsonl"), dir / (id + "_test.jsonl")};
  auto write = [&](const std::filesystem::path& p, Split split,
                   const std::vector<TrajectorySample>& samples) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error("cannot open " + p.string() + " for writing");
    write_jsonl(os, ds.manifest, split, samples);
  };
  write(files.train, Split::Train, ds.train);
  write(files.test, Split::Test, ds.test);
  return files;
}

void write_flat_csv(std::ostream& os,
                    const std::vector<TrajectorySample>& samples,
                    int record_length) {
  if (record_length < 1) throw ParameterError("record length must be >= 1");
  const int n = samples.empty() ? 0 : samples.front().n;
  for (int t = 0; t < record_length; ++t) {
    for (int i = 0; i < n; ++i) os << "f_" << t << '_' << i << ',';
  }
  os << "valid_steps,target\n";
  auto old_precision = os.precision(17);
  for (const auto& s : samples) {
    if (s.n != n) throw ParameterError("samples with different n in one table");
    if (s.states.empty()) throw ParameterError("sample without recorded states");
    for (int t = 0; t < record_length; ++t) {
      const auto& st = s.states[static_cast<std::size_t>(
          std::min(t, s.valid_steps() - 1))];
      for (double v : st) os << v << ',';
    }
    os << s.valid_steps() << ',' << s.final_value << '\n';
  }
  os.precision(old_precision);
}

}  // namespace pathlap
