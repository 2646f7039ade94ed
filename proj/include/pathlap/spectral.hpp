// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "pathlap/kpath.hpp"

namespace pathlap {

/// Component labels of the graph whose edges are the nonzero entries of the
/// symmetrized P_k. Labels are 0-based in order of first appearance.
/// Throws ParameterError when k is outside [1, k_max].
std::vector<int> k_path_components(const KPathDecomposition& dec, int k);

int component_count(const std::vector<int>& labels);

/// Numerical rank by Gaussian elimination with full pivoting. Pivots at or
/// below rel_tol * max|a_ij| count as zero.
int numerical_rank(const Eigen::MatrixXd& a, double rel_tol = 1e-9);

/// n - rank(L): multiplicity of the zero eigenvalue of a symmetric Laplacian.
int zero_multiplicity(const Eigen::MatrixXd& laplacian);

/// Ascending eigenvalues of a symmetric matrix.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a);

/// Second-smallest eigenvalue of a symmetric Laplacian. Needs n >= 2.
double fiedler_value(const Eigen::MatrixXd& laplacian);

struct SpectralReport {
  int k = 0;
  int zero_multiplicity = 0;
  int component_count = 0;
  std::optional<double> fiedler_value;  // undirected decompositions only
};

/// One row per path length k = 1 .. k_max.
std::vector<SpectralReport> spectral_report(const KPathDecomposition& dec);

}  // namespace pathlap
