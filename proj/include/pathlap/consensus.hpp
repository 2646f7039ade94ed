// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string_view>
#include <vector>

#include "pathlap/graph.hpp"
#include "pathlap/kpath.hpp"

namespace pathlap {

enum class CaseType { Base, Exponential };

std::string_view to_string(CaseType c) noexcept;
/// Accepts "base" and "exponential" (also "exp"). Throws ParameterError.
CaseType parse_case_type(std::string_view s);

struct ConsensusConfig {
  CaseType case_type = CaseType::Base;
  double c = 100.0;        // step-size divisor
  double alpha = 1.0;      // hop decay rate, exponential case only
  double tau = 1e-6;       // tolerance on the inf-norm of the state change
  long iter_max = 200000;
  int record_length = 10;  // T

  /// Throws ParameterError naming the violated bound.
  void validate() const;
};

/// Row-stochastic averaging operator together with the step size that
/// produced it.
struct UpdateOperator {
  CaseType case_type = CaseType::Base;
  Eigen::MatrixXd matrix;
  double epsilon = 0.0;
  /// 1 / (c * max out-degree), shared by both cases.
  double base_epsilon = 0.0;
  /// Set when the exponential case had to shrink epsilon below
  /// base_epsilon to keep the diagonal positive.
  bool epsilon_clamped = false;
};

/// Initial state phi_i(0) = K_ii with K = L + A. Since L = D_out - A, K is
/// exactly D_out and the initial state is the out-degree vector.
Eigen::VectorXd initial_state(const DirectedGraph& g);

/// D_out - A.
Eigen::MatrixXd out_laplacian(const DirectedGraph& g);

/// epsilon = 1 / (c * max(K)); max(K) is the largest out-degree.
/// Throws DegenerateGraphError when the graph has no arcs.
double base_epsilon(const DirectedGraph& g, double c);

/// Base case: I - epsilon L_out with epsilon = base_epsilon(g, c).
/// Exponential case: I - epsilon sum_k exp(-alpha k) L_k over the directed
/// decomposition, with
///   epsilon = min(base_epsilon, 0.99 / max_i sum_k exp(-alpha k) delta_k(i))
/// so every diagonal entry stays positive.
UpdateOperator build_update(const DirectedGraph& g, const ConsensusConfig& cfg);

/// As above, reusing a decomposition for the exponential case.
UpdateOperator build_update(const DirectedGraph& g,
                            const KPathDecomposition& dec,
                            const ConsensusConfig& cfg);

struct ConsensusRun {
  /// Recorded prefix phi(0) .. phi(min(T - 1, t)), where t is the index of
  /// the last loop pass. Shorter than T when convergence came early.
  std::vector<Eigen::VectorXd> states;
  Eigen::VectorXd final_state;  // most recent state at termination
  double final_value = 0.0;     // mean of final_state
  long iterations = 0;          // number of updates applied
  bool converged = false;
  double epsilon_used = 0.0;

  int valid_steps() const noexcept { return static_cast<int>(states.size()); }
};

/// Called with (t, phi(t)) for t = 0 and after every update.
using StateObserver = std::function<void(long, const Eigen::VectorXd&)>;

/// Iterates phi(t + 1) = P phi(t) until ||phi(t + 1) - phi(t)||_inf <= tau
/// or iter_max updates. Reaching iter_max returns converged = false.
/// final_value is the mean of the final state, which is the consensus limit
/// only once the run has converged.
/// Throws ParameterError on dimension mismatch or when the matrix is not
/// row-stochastic with nonnegative entries.
ConsensusRun run_consensus(const UpdateOperator& op,
                           const Eigen::VectorXd& initial,
                           const ConsensusConfig& cfg,
                           const StateObserver& observer = {});

/// Same, for a bare update matrix; epsilon_used is reported as NaN.
ConsensusRun run_consensus(const Eigen::MatrixXd& update,
                           const Eigen::VectorXd& initial,
                           const ConsensusConfig& cfg,
                           const StateObserver& observer = {});

}  // namespace pathlap
