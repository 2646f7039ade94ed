// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "pathlap/graph.hpp"

namespace pathlap {

enum class DistanceMode {
  Directed,            // hop counts along arcs i -> j
  UnderlyingUndirected // every arc traversable both ways
};

/// All-pairs hop distances. Unreachable pairs carry no value; they are never
/// encoded as a large number.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n);

  int size() const noexcept { return n_; }
  bool reachable(int i, int j) const noexcept { return raw(i, j) >= 0; }
  std::optional<int> at(int i, int j) const noexcept {
    int d = raw(i, j);
    return d >= 0 ? std::optional<int>(d) : std::nullopt;
  }
  void set(int i, int j, int d) noexcept {
    hops_[index(i, j)] = static_cast<std::int32_t>(d);
  }
  /// Largest finite entry; 0 for n <= 1.
  int max_finite() const noexcept;
  bool all_reachable() const noexcept;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  static constexpr std::int32_t kUnreachable = -1;
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }
  std::int32_t raw(int i, int j) const noexcept { return hops_[index(i, j)]; }

  int n_ = 0;
  std::vector<std::int32_t> hops_;
};

/// BFS from every source.
DistanceMatrix all_pairs_distances(const DirectedGraph& g, DistanceMode mode);

/// Diameter of the underlying undirected graph. Throws ConnectivityError
/// when that graph is disconnected.
int diameter(const DirectedGraph& g);

/// One layer of the k-path family: P_k marks pairs at distance exactly k,
/// degree holds the row sums of P_k, and laplacian = diag(degree) - P_k.
struct KPathLayer {
  int k = 0;
  Eigen::MatrixXd adjacency;
  Eigen::VectorXd degree;
  Eigen::MatrixXd laplacian;
};

struct KPathDecomposition {
  DistanceMode mode = DistanceMode::UnderlyingUndirected;
  int n = 0;
  /// Undirected diameter, also in directed mode.
  int k_max = 0;
  DistanceMatrix distances;
  std::vector<KPathLayer> layers;  // layers[k - 1] holds path length k

  const KPathLayer& layer(int k) const;
};

/// Builds P_k, delta_k and L_k for k = 1 .. diameter(g). In directed mode the
/// distances are directed, so the degrees are k-hop out-degrees and pairs
/// whose directed distance exceeds the undirected diameter fall in no layer.
/// Throws ConnectivityError when the underlying graph is disconnected.
KPathDecomposition k_path_decomposition(const DirectedGraph& g,
                                        DistanceMode mode);

/// sum_k exp(-alpha k) L_k.
Eigen::MatrixXd weighted_laplacian(const KPathDecomposition& dec,
                                   double alpha);

struct MultiHopOperator {
  double alpha = 0.0;
  double epsilon = 0.0;
  Eigen::MatrixXd total_laplacian;  // sum_k exp(-alpha k) L_k
  Eigen::MatrixXd update;           // I - epsilon * total_laplacian
};

/// Largest step size keeping every diagonal entry of I - epsilon * L
/// nonnegative, i.e. 1 / max_i L_ii (infinity when L has a zero diagonal).
double max_admissible_epsilon(const Eigen::MatrixXd& laplacian);

/// Throws ParameterError when alpha < 0 or epsilon <= 0, and StepSizeError
/// (carrying the admissible bound) when a diagonal entry would go negative.
/// alpha = 0 gives the uniformly weighted sum.
MultiHopOperator multi_hop_operator(const KPathDecomposition& dec,
                                    double alpha, double epsilon);

/// Writes P_k.csv and L_k.csv for each layer into dir (created if missing).
/// Row-major, comma separated, no header.
void export_decomposition_csv(const KPathDecomposition& dec,
                              const std::filesystem::path& dir);

}  // namespace pathlap
