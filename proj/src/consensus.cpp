// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#include "pathlap/consensus.hpp"

#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pathlap/errors.hpp"

namespace pathlap {

std::string_view to_string(CaseType c) noexcept {
  return c == CaseType::Base ? "base" : "exponential";
}

CaseType parse_case_type(std::string_view s) {
  if (s == "base") return CaseType::Base;
  if (s == "exponential" || s == "exp") return CaseType::Exponential;
  throw ParameterError("unknown case type '" + std::string(s) +
                       "' (expected base or exponential)");
}

void ConsensusConfig::validate() const {
  if (!(c > 0.0)) {
    throw ParameterError("step-size divisor c must be > 0, got " +
                         std::to_string(c));
  }
  if (!(tau > 0.0)) {
    throw ParameterError("tolerance tau must be > 0, got " +
                         std::to_string(tau));
  }
  if (iter_max < 1) {
    throw ParameterError("iter_max must be >= 1, got " +
                         std::to_string(iter_max));
  }
  if (record_length < 1) {
    throw ParameterError("record length T must be >= 1, got " +
                         std::to_string(record_length));
  }
  if (case_type == CaseType::Exponential && !(alpha >= 0.0)) {
    throw ParameterError("decay rate alpha must be >= 0, got " +
                         std::to_string(alpha));
  }
}

Eigen::VectorXd initial_state(const DirectedGraph& g) {
  Eigen::VectorXd phi(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) phi(i) = g.out_degree(i);
  return phi;
}

Eigen::MatrixXd out_laplacian(const DirectedGraph& g) {
  const int n = g.node_count();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : g.arcs()) lap(u, v) = -1.0;
  for (int i = 0; i < n; ++i) lap(i, i) = g.out_degree(i);
  return lap;
}

double base_epsilon(const DirectedGraph& g, double c) {
  if (!(c > 0.0)) {
    throw ParameterError("step-size divisor c must be > 0, got " +
                         std::to_string(c));
  }
  if (g.arc_count() == 0) {
    throw DegenerateGraphError("graph has no arcs; step size undefined");
  }
  int max_out = 0;
  for (int i = 0; i < g.node_count(); ++i) {
    max_out = std::max(max_out, g.out_degree(i));
  }
  return 1.0 / (c * max_out);
}

UpdateOperator build_update(const DirectedGraph& g,
                            const ConsensusConfig& cfg) {
  if (cfg.case_type == CaseType::Base) {
    cfg.validate();
    UpdateOperator op;
    op.case_type = CaseType::Base;
    op.base_epsilon = op.epsilon = base_epsilon(g, cfg.c);
    op.matrix = Eigen::MatrixXd::Identity(g.node_count(), g.node_count()) -
                op.epsilon * out_laplacian(g);
    return op;
  }
  return build_update(g, k_path_decomposition(g, DistanceMode::Directed), cfg);
}

UpdateOperator build_update(const DirectedGraph& g,
                            const KPathDecomposition& dec,
                            const ConsensusConfig& cfg) {
  if (cfg.case_type == CaseType::Base) return build_update(g, cfg);
  cfg.validate();
  if (dec.n != g.node_count()) {
    throw ParameterError("decomposition size does not match the graph");
  }
  UpdateOperator op;
  op.case_type = CaseType::Exponential;
  op.base_epsilon = base_epsilon(g, cfg.c);
  double weighted_degree_max =
      weighted_laplacian(dec, cfg.alpha).diagonal().maxCoeff();
  double eps = op.base_epsilon;
  if (weighted_degree_max > 0.0) {
    double bound = 0.99 / weighted_degree_max;
    if (bound < eps) {
      eps = bound;
      op.epsilon_clamped = true;
    }
  }
  op.epsilon = eps;
  op.matrix = multi_hop_operator(dec, cfg.alpha, eps).update;
  return op;
}

namespace {

constexpr double kSparseFillLimit = 0.25;

void check_update_matrix(const Eigen::MatrixXd& p, Eigen::Index n) {
  if (p.rows() != n || p.cols() != n) {
    throw ParameterError("update matrix is " + std::to_string(p.rows()) + "x" +
                         std::to_string(p.cols()) + " but the state has " +
                         std::to_string(n) + " entries");
  }
  constexpr double kSlack = 1e-9;
  if (p.minCoeff() < -kSlack) {
    throw ParameterError("update matrix has negative entries");
  }
  if (n > 0 && ((p.rowwise().sum().array() - 1.0).abs().maxCoeff() > kSlack)) {
    throw ParameterError("update matrix is not row-stochastic");
  }
}

}  // namespace

ConsensusRun run_consensus(const UpdateOperator& op,
                           const Eigen::VectorXd& initial,
                           const ConsensusConfig& cfg,
                           const StateObserver& observer) {
  auto run = run_consensus(op.matrix, initial, cfg, observer);
  run.epsilon_used = op.epsilon;
  return run;
}

ConsensusRun run_consensus(const Eigen::MatrixXd& update,
                           const Eigen::VectorXd& initial,
                           const ConsensusConfig& cfg,
                           const StateObserver& observer) {
  cfg.validate();
  check_update_matrix(update, initial.size());

  // The product kernel depends only on the operator's fill, so a given
  // operator always follows the same arithmetic path.
  using SparseRowMajor = Eigen::SparseMatrix<double, Eigen::RowMajor>;
  const auto n = update.rows();
  const bool use_sparse =
      static_cast<double>((update.array() != 0.0).count()) <
      kSparseFillLimit * static_cast<double>(n * n);
  SparseRowMajor sparse;
  if (use_sparse) sparse = update.sparseView(0.0, 0.0);

  const auto record = static_cast<std::size_t>(cfg.record_length);
  ConsensusRun run;
  run.epsilon_used = std::numeric_limits<double>::quiet_NaN();
  run.states.reserve(record);
  run.states.push_back(initial);
  if (observer) observer(0, initial);

  Eigen::VectorXd current = initial;
  Eigen::VectorXd next(initial.size());
  long last_pass = cfg.iter_max - 1;
  for (long t = 0; t < cfg.iter_max; ++t) {
    if (use_sparse) {
      next.noalias() = sparse * current;
    } else {
      next.noalias() = update * current;
    }
    double delta = initial.size() ? (next - current).cwiseAbs().maxCoeff() : 0.0;
    current.swap(next);
    if (run.states.size() < record) run.states.push_back(current);
    if (observer) observer(t + 1, current);
    if (delta <= cfg.tau) {
      run.converged = true;
      last_pass = t;
      break;
    }
  }
  run.iterations = last_pass + 1;
  run.states.resize(
      std::min(record, static_cast<std::size_t>(last_pass) + 1));
  run.final_state = std::move(current);
  run.final_value = initial.size() ? run.final_state.mean() : 0.0;
  return run;
}

}  // namespace pathlap
