// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pathlap/graph.hpp"

namespace pathlap {

enum class GraphModel { ER, WS, BA };

std::string_view to_string(GraphModel m) noexcept;
/// Accepts "ER"/"er", "WS"/"ws", "BA"/"ba". Throws ParameterError otherwise.
GraphModel parse_graph_model(std::string_view s);

/// Model parameters. Unset fields take the defaults below when the spec is
/// resolved for a concrete n.
struct GraphParams {
  std::optional<double> er_p;     // ER edge probability, default 2 ln(n) / n
  std::optional<int> ws_k = 4;    // WS ring neighbors (even)
  std::optional<double> ws_beta = 0.1;
  std::optional<int> ba_m = 3;    // BA edges per new node
};

struct GraphModelSpec {
  GraphModel model = GraphModel::BA;
  int n = 0;
  GraphParams params;
  std::uint64_t seed = 0;

  /// ER edge probability after defaulting: min(1, 2 ln(n) / n).
  double er_probability() const;
  /// Throws ParameterError naming the violated bound.
  void validate() const;
};

/// Samples the backbone graph. Deterministic in (spec, seed).
///  - ER: G(n, p), each pair independently.
///  - WS: ring lattice with k/2 neighbors per side, each lattice edge
///    rewired with probability beta to a uniform non-neighbor.
///  - BA: star seed on m + 1 nodes, then preferential attachment of m
///    distinct targets per new node. Always connected.
UndirectedGraph sample_undirected(const GraphModelSpec& spec);

/// Each undirected edge {u, v} gets one forward arc with a uniformly random
/// direction; the reverse arc is added independently with probability
/// reverse_p. Edges are visited in sorted order so the result is
/// deterministic in seed.
DirectedGraph orient(const UndirectedGraph& g, double reverse_p,
                     std::uint64_t seed);

}  // namespace pathlap
