// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#include "pathlap/evaluate.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "pathlap/errors.hpp"

namespace pathlap {

namespace {

void check_lengths(std::span<const double> p, std::span<const double> t) {
  if (p.size() != t.size()) {
    throw ParameterError("prediction/target length mismatch: " +
                         std::to_string(p.size()) + " vs " +
                         std::to_string(t.size()));
  }
  if (p.empty()) throw ParameterError("metrics need at least one sample");
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double rmse(std::span<const double> predictions,
            std::span<const double> targets) {
  check_lengths(predictions, targets);
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    double d = predictions[i] - targets[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(predictions.size()));
}

MapeResult mape(std::span<const double> predictions,
                std::span<const double> targets) {
  check_lengths(predictions, targets);
  MapeResult r;
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (targets[i] == 0.0) {
      ++r.excluded;
      continue;
    }
    sum += std::abs(predictions[i] - targets[i]) / std::abs(targets[i]);
    ++used;
  }
  if (used == 0) throw ParameterError("MAPE undefined: every target is zero");
  r.percent = 100.0 * sum / static_cast<double>(used);
  return r;
}

std::string_view to_string(BaselineStrategy s) noexcept {
  return s == BaselineStrategy::LastStateMean ? "last_state_mean"
                                              : "initial_mean";
}

BaselineStrategy parse_baseline_strategy(std::string_view s) {
  if (s == "last_state_mean") return BaselineStrategy::LastStateMean;
  if (s == "initial_mean") return BaselineStrategy::InitialMean;
  throw ParameterError("unknown baseline strategy '" + std::string(s) +
                       "' (expected last_state_mean or initial_mean)");
}

double baseline_predict(const TrajectorySample& sample, BaselineStrategy s) {
  if (sample.states.empty()) {
    throw ParameterError("sample has no recorded states");
  }
  return mean_of(s == BaselineStrategy::LastStateMean ? sample.states.back()
                                                      : sample.states.front());
}

EvalReport evaluate_baseline(const std::vector<TrajectorySample>& samples,
                             BaselineStrategy strategy,
                             std::string dataset_id) {
  std::vector<double> predictions(samples.size()), targets(samples.size());
  auto predict_all = [&] {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      predictions[i] = baseline_predict(samples[i], strategy);
    }
  };
  predict_all();  // warm-up
  auto start = std::chrono::steady_clock::now();
  predict_all();
  std::chrono::duration<double, std::milli> elapsed =
      std::chrono::steady_clock::now() - start;

  for (std::size_t i = 0; i < samples.size(); ++i) {
    targets[i] = samples[i].final_value;
  }
  EvalReport r;
  r.model_name = std::string(to_string(strategy));
  r.dataset_id = std::move(dataset_id);
  r.rmse = rmse(predictions, targets);
  auto m = mape(predictions, targets);
  r.mape = m.percent;
  r.mape_excluded = m.excluded;
  r.prediction_time_ms =
      elapsed.count() / static_cast<double>(samples.size());
  return r;
}

}  // namespace pathlap
