// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathlap/dataset.hpp"

namespace pathlap {

/// sqrt(mean((p - t)^2)). Throws ParameterError on empty or mismatched input.
double rmse(std::span<const double> predictions, std::span<const double> targets);

struct MapeResult {
  double percent = 0.0;
  std::size_t excluded = 0;  // zero targets skipped
};

/// 100 * mean(|p - t| / |t|) over the pairs with t != 0. Zero targets are
/// skipped and counted. Throws ParameterError on empty or mismatched input,
/// or when every target is zero.
MapeResult mape(std::span<const double> predictions,
                std::span<const double> targets);

enum class BaselineStrategy { LastStateMean, InitialMean };

std::string_view to_string(BaselineStrategy s) noexcept;
BaselineStrategy parse_baseline_strategy(std::string_view s);

/// LastStateMean: mean of the last recorded state. InitialMean: mean of
/// phi(0). Throws ParameterError when the sample has no states.
double baseline_predict(const TrajectorySample& sample, BaselineStrategy s);

struct EvalReport {
  std::string model_name;
  std::string dataset_id;
  double rmse = 0.0;
  double mape = 0.0;
  std::size_t mape_excluded = 0;
  double prediction_time_ms = 0.0;  // mean per sample
};

/// Scores a baseline on a sample set. Prediction time is the wall clock of
/// one full pass divided by the sample count, after an untimed warm-up pass.
EvalReport evaluate_baseline(const std::vector<TrajectorySample>& samples,
                             BaselineStrategy strategy,
                             std::string dataset_id);

}  // namespace pathlap
