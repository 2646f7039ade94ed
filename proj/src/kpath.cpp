// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#include "pathlap/kpath.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "pathlap/errors.hpp"

namespace pathlap {

DistanceMatrix::DistanceMatrix(int n)
    : n_(n),
      hops_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
            kUnreachable) {}

int DistanceMatrix::max_finite() const noexcept {
  std::int32_t best = 0;
  for (auto d : hops_) best = std::max(best, d);
  return best;
}

bool DistanceMatrix::all_reachable() const noexcept {
  return std::none_of(hops_.begin(), hops_.end(),
                      [](std::int32_t d) { return d == kUnreachable; });
}

DistanceMatrix all_pairs_distances(const DirectedGraph& g, DistanceMode mode) {
  const int n = g.node_count();
  DistanceMatrix dist(n);
  std::vector<int> frontier, next;
  std::vector<char> seen(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    std::fill(seen.begin(), seen.end(), 0);
    frontier.assign(1, s);
    seen[static_cast<std::size_t>(s)] = 1;
    dist.set(s, s, 0);
    for (int depth = 1; !frontier.empty(); ++depth) {
      next.clear();
      auto visit = [&](int v) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          dist.set(s, v, depth);
          next.push_back(v);
        }
      };
      for (int u : frontier) {
        for (int v : g.out_neighbors(u)) visit(v);
        if (mode == DistanceMode::UnderlyingUndirected) {
          for (int v : g.in_neighbors(u)) visit(v);
        }
      }
      frontier.swap(next);
    }
  }
  return dist;
}

int diameter(const DirectedGraph& g) {
  auto dist = all_pairs_distances(g, DistanceMode::UnderlyingUndirected);
  if (!dist.all_reachable()) {
    throw ConnectivityError("underlying undirected graph on " +
                            std::to_string(g.node_count()) +
                            " nodes is disconnected; diameter undefined");
  }
  return dist.max_finite();
}

const KPathLayer& KPathDecomposition::layer(int k) const {
  if (k < 1 || k > k_max) {
    throw ParameterError("path length k = " + std::to_string(k) +
                         " outside [1, " + std::to_string(k_max) + "]");
  }
  return layers[static_cast<std::size_t>(k - 1)];
}

KPathDecomposition k_path_decomposition(const DirectedGraph& g,
                                        DistanceMode mode) {
  const int n = g.node_count();
  const int k_max = diameter(g);
  if (k_max < 1) {
    throw DegenerateGraphError("k-path decomposition needs at least two nodes");
  }

  KPathDecomposition dec;
  dec.mode = mode;
  dec.n = n;
  dec.k_max = k_max;
  dec.distances = all_pairs_distances(g, mode);
  dec.layers.resize(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    auto& layer = dec.layers[static_cast<std::size_t>(k - 1)];
    layer.k = k;
    layer.adjacency = Eigen::MatrixXd::Zero(n, n);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto d = dec.distances.at(i, j);
      if (i == j || !d || *d > k_max) continue;
      dec.layers[static_cast<std::size_t>(*d - 1)].adjacency(i, j) = 1.0;
    }
  }
  for (auto& layer : dec.layers) {
    layer.degree = layer.adjacency.rowwise().sum();
    layer.laplacian =
        Eigen::MatrixXd(layer.degree.asDiagonal()) - layer.adjacency;
  }
  return dec;
}

Eigen::MatrixXd weighted_laplacian(const KPathDecomposition& dec,
                                   double alpha) {
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(dec.n, dec.n);
  for (const auto& layer : dec.layers) {
    total += std::exp(-alpha * layer.k) * layer.laplacian;
  }
  return total;
}

double max_admissible_epsilon(const Eigen::MatrixXd& laplacian) {
  double diag_max = laplacian.diagonal().maxCoeff();
  if (diag_max <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / diag_max;
}

MultiHopOperator multi_hop_operator(const KPathDecomposition& dec,
                                    double alpha, double epsilon) {
  if (!(alpha >= 0.0)) {
    throw ParameterError("decay rate alpha must be >= 0, got " +
                         std::to_string(alpha));
  }
  if (!(epsilon > 0.0)) {
    throw ParameterError("step size epsilon must be > 0, got " +
                         std::to_string(epsilon));
  }
  MultiHopOperator op;
  op.alpha = alpha;
  op.epsilon = epsilon;
  op.total_laplacian = weighted_laplacian(dec, alpha);
  const double bound = max_admissible_epsilon(op.total_laplacian);
  if (epsilon > bound) {
    throw StepSizeError("step size " + std::to_string(epsilon) +
                            " makes a diagonal entry negative; max admissible "
                            "epsilon is " +
                            std::to_string(bound),
                        bound);
  }
  op.update = Eigen::MatrixXd::Identity(dec.n, dec.n) -
              epsilon * op.total_laplacian;
  return op;
}

namespace {

void write_csv(const std::filesystem::path& file, const Eigen::MatrixXd& m) {
  std::ofstream os(file);
  if (!os) throw Error("cannot open " + file.string() + " for writing");
  os.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << '\n';
  }
}

}  // namespace

void export_decomposition_csv(const KPathDecomposition& dec,
                              const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& layer : dec.layers) {
    auto k = std::to_string(layer.k);
    write_csv(dir / ("P_" + k + ".csv"), layer.adjacency);
    write_csv(dir / ("L_" + k + ".csv"), layer.laplacian);
  }
}

}  // namespace pathlap
