// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#include "pathlap/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "pathlap/errors.hpp"
#include "pathlap/rng.hpp"

namespace pathlap {

std::string_view to_string(GraphModel m) noexcept {
  switch (m) {
    case GraphModel::ER: return "ER";
    case GraphModel::WS: return "WS";
    case GraphModel::BA: return "BA";
  }
  return "?";
}

GraphModel parse_graph_model(std::string_view s) {
  if (s == "ER" || s == "er") return GraphModel::ER;
  if (s == "WS" || s == "ws") return GraphModel::WS;
  if (s == "BA" || s == "ba") return GraphModel::BA;
  throw ParameterError("unknown graph model '" + std::string(s) +
                       "' (expected ER, WS or BA)");
}

double GraphModelSpec::er_probability() const {
  if (params.er_p) return *params.er_p;
  if (n < 2) return 1.0;
  return std::min(1.0, 2.0 * std::log(static_cast<double>(n)) / n);
}

void GraphModelSpec::validate() const {
  if (n < 1) throw ParameterError("n must be >= 1, got " + std::to_string(n));
  switch (model) {
    case GraphModel::ER: {
      double p = er_probability();
      if (!(p > 0.0 && p <= 1.0)) {
        throw ParameterError("ER requires 0 < p <= 1, got p = " +
                             std::to_string(p));
      }
      break;
    }
    case GraphModel::WS: {
      int k = params.ws_k.value_or(4);
      double beta = params.ws_beta.value_or(0.1);
      if (k < 2 || k % 2 != 0) {
        throw ParameterError("WS requires an even k_ring >= 2, got k_ring = " +
                             std::to_string(k));
      }
      if (k >= n) {
        throw ParameterError("WS requires k_ring < n, got k_ring = " +
                             std::to_string(k) + ", n = " + std::to_string(n));
      }
      if (!(beta >= 0.0 && beta <= 1.0)) {
        throw ParameterError("WS requires 0 <= beta <= 1, got beta = " +
                             std::to_string(beta));
      }
      break;
    }
    case GraphModel::BA: {
      int m = params.ba_m.value_or(3);
      if (m < 1 || m >= n) {
        throw ParameterError("BA requires 1 <= m < n, got m = " +
                             std::to_string(m) + ", n = " + std::to_string(n));
      }
      break;
    }
  }
}

namespace {

UndirectedGraph sample_er(int n, double p, Engine& eng) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (bernoulli(eng, p)) edges.emplace_back(u, v);
    }
  }
  return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph sample_ws(int n, int k, double beta, Engine& eng) {
  std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
  auto link = [&](int u, int v) {
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
  };
  auto unlink = [&](int u, int v) {
    adj[static_cast<std::size_t>(u)].erase(v);
    adj[static_cast<std::size_t>(v)].erase(u);
  };
  for (int j = 1; j <= k / 2; ++j) {
    for (int u = 0; u < n; ++u) link(u, (u + j) % n);
  }
  // Rewire lattice edges ring by ring; a node already adjacent to everyone
  // keeps its edge.
  for (int j = 1; j <= k / 2; ++j) {
    for (int u = 0; u < n; ++u) {
      if (!bernoulli(eng, beta)) continue;
      int v = (u + j) % n;
      const auto& nu = adj[static_cast<std::size_t>(u)];
      if (static_cast<int>(nu.size()) >= n - 1) continue;
      int w;
      do {
        w = static_cast<int>(uniform_index(eng, static_cast<std::uint64_t>(n)));
      } while (w == u || nu.count(w) != 0);
      unlink(u, v);
      link(u, w);
    }
  }
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph sample_ba(int n, int m, Engine& eng) {
  std::vector<Edge> edges;
  // Node ids repeated once per incident edge: uniform draws from this list
  // are degree-proportional.
  std::vector<int> repeated;
  for (int leaf = 1; leaf <= m; ++leaf) {
    edges.emplace_back(0, leaf);
    repeated.push_back(0);
    repeated.push_back(leaf);
  }
  std::vector<int> targets;
  for (int source = m + 1; source < n; ++source) {
    targets.clear();
    while (static_cast<int>(targets.size()) < m) {
      int t = repeated[uniform_index(eng, repeated.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
        targets.push_back(t);
      }
    }
    for (int t : targets) {
      edges.emplace_back(t, source);
      repeated.push_back(t);
      repeated.push_back(source);
    }
  }
  return UndirectedGraph(n, std::move(edges));
}

}  // namespace

UndirectedGraph sample_undirected(const GraphModelSpec& spec) {
  spec.validate();
  Engine eng(spec.seed);
  switch (spec.model) {
    case GraphModel::ER:
      return sample_er(spec.n, spec.er_probability(), eng);
    case GraphModel::WS:
      return sample_ws(spec.n, spec.params.ws_k.value_or(4),
                       spec.params.ws_beta.value_or(0.1), eng);
    case GraphModel::BA:
      return sample_ba(spec.n, spec.params.ba_m.value_or(3), eng);
  }
  throw ParameterError("unknown graph model");
}

DirectedGraph orient(const UndirectedGraph& g, double reverse_p,
                     std::uint64_t seed) {
  if (!(reverse_p >= 0.0 && reverse_p <= 1.0)) {
    throw ParameterError("reverse-arc probability must lie in [0, 1], got " +
                         std::to_string(reverse_p));
  }
  Engine eng(seed);
  std::vector<Edge> arcs;
  arcs.reserve(g.edge_count() * 2);
  for (auto [u, v] : g.edges()) {
    // Both draws are taken for every edge so the stream position does not
    // depend on reverse_p.
    bool flip = bernoulli(eng, 0.5);
    bool reverse = bernoulli(eng, reverse_p);
    auto fwd = flip ? Edge{v, u} : Edge{u, v};
    arcs.push_back(fwd);
    if (reverse) arcs.emplace_back(fwd.second, fwd.first);
  }
  return DirectedGraph(g.node_count(), std::move(arcs));
}

}  // namespace pathlap
