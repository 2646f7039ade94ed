// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#include "pathlap/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pathlap/errors.hpp"

namespace pathlap {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

std::vector<int> k_path_components(const KPathDecomposition& dec, int k) {
  const auto& p = dec.layer(k).adjacency;
  const int n = dec.n;
  DisjointSets sets(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (p(i, j) != 0.0 || p(j, i) != 0.0) sets.unite(i, j);
    }
  }
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  std::vector<int> root_label(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    auto& rl = root_label[static_cast<std::size_t>(sets.find(i))];
    if (rl < 0) rl = next++;
    labels[static_cast<std::size_t>(i)] = rl;
  }
  return labels;
}

int component_count(const std::vector<int>& labels) {
  if (labels.empty()) return 0;
  return *std::max_element(labels.begin(), labels.end()) + 1;
}

int numerical_rank(const Eigen::MatrixXd& a, double rel_tol) {
  Eigen::MatrixXd m = a;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  const double threshold = rel_tol * m.cwiseAbs().maxCoeff();
  int rank = 0;
  for (Eigen::Index step = 0; step < std::min(rows, cols); ++step) {
    Eigen::Index pr, pc;
    double pivot = m.bottomRightCorner(rows - step, cols - step)
                       .cwiseAbs()
                       .maxCoeff(&pr, &pc);
    if (pivot <= threshold) break;
    pr += step;
    pc += step;
    m.row(step).swap(m.row(pr));
    m.col(step).swap(m.col(pc));
    for (Eigen::Index r = step + 1; r < rows; ++r) {
      double f = m(r, step) / m(step, step);
      if (f != 0.0) m.row(r).tail(cols - step) -= f * m.row(step).tail(cols - step);
    }
    ++rank;
  }
  return rank;
}

int zero_multiplicity(const Eigen::MatrixXd& laplacian) {
  return static_cast<int>(laplacian.rows()) - numerical_rank(laplacian);
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("symmetric eigensolver did not converge");
  }
  return solver.eigenvalues();  // ascending
}

double fiedler_value(const Eigen::MatrixXd& laplacian) {
  if (laplacian.rows() < 2) {
    throw ParameterError("Fiedler value needs at least two nodes");
  }
  return symmetric_eigenvalues(laplacian)(1);
}

std::vector<SpectralReport> spectral_report(const KPathDecomposition& dec) {
  std::vector<SpectralReport> rows;
  rows.reserve(dec.layers.size());
  for (const auto& layer : dec.layers) {
    SpectralReport r;
    r.k = layer.k;
    r.zero_multiplicity = zero_multiplicity(layer.laplacian);
    r.component_count = component_count(k_path_components(dec, layer.k));
    if (dec.mode == DistanceMode::UnderlyingUndirected && dec.n >= 2) {
      r.fiedler_value = fiedler_value(layer.laplacian);
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace pathlap
