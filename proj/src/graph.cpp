// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#include "pathlap/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pathlap/errors.hpp"

namespace pathlap {

namespace {

void check_pair(int n, NodeId u, NodeId v, const char* what) {
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw ParameterError(std::string(what) + " (" + std::to_string(u) + ", " +
                         std::to_string(v) + ") out of range for n = " +
                         std::to_string(n));
  }
  if (u == v) {
    throw ParameterError(std::string(what) + " (" + std::to_string(u) + ", " +
                         std::to_string(v) + ") is a self-loop");
  }
}

void check_unique(const std::vector<Edge>& sorted, const char* what) {
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw ParameterError(std::string("duplicate ") + what + " (" +
                         std::to_string(dup->first) + ", " +
                         std::to_string(dup->second) + ")");
  }
}

}  // namespace

UndirectedGraph::UndirectedGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), adj_(static_cast<std::size_t>(n)) {
  if (n < 0) throw ParameterError("node count must be non-negative");
  for (auto& e : edges_) {
    check_pair(n, e.first, e.second, "edge");
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges_.begin(), edges_.end());
  check_unique(edges_, "edge");
  for (auto [u, v] : edges_) {
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool UndirectedGraph::has_edge(NodeId u, NodeId v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

DirectedGraph::DirectedGraph(int n, std::vector<Edge> arcs)
    : n_(n),
      arcs_(std::move(arcs)),
      out_(static_cast<std::size_t>(n)),
      in_(static_cast<std::size_t>(n)) {
  if (n < 0) throw ParameterError("node count must be non-negative");
  for (const auto& a : arcs_) check_pair(n, a.first, a.second, "arc");
  std::sort(arcs_.begin(), arcs_.end());
  check_unique(arcs_, "arc");
  // arcs_ is sorted, so out-lists come out sorted; in-lists are sorted by
  // source because sources are visited in increasing order.
  for (auto [u, v] : arcs_) {
    out_[static_cast<std::size_t>(u)].push_back(v);
    in_[static_cast<std::size_t>(v)].push_back(u);
  }
}

std::vector<int> DirectedGraph::out_degrees() const {
  std::vector<int> d(static_cast<std::size_t>(n_));
  for (int v = 0; v < n_; ++v) d[static_cast<std::size_t>(v)] = out_degree(v);
  return d;
}

std::vector<int> DirectedGraph::in_degrees() const {
  std::vector<int> d(static_cast<std::size_t>(n_));
  for (int v = 0; v < n_; ++v) d[static_cast<std::size_t>(v)] = in_degree(v);
  return d;
}

bool DirectedGraph::has_arc(NodeId u, NodeId v) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), Edge{u, v});
}

UndirectedGraph DirectedGraph::underlying() const {
  std::vector<Edge> edges;
  edges.reserve(arcs_.size());
  for (auto [u, v] : arcs_) {
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return UndirectedGraph(n_, std::move(edges));
}

DirectedGraph DirectedGraph::symmetric(const UndirectedGraph& g) {
  std::vector<Edge> arcs;
  arcs.reserve(2 * g.edge_count());
  for (auto [u, v] : g.edges()) {
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  return DirectedGraph(g.node_count(), std::move(arcs));
}

namespace {

void write_pairs(std::ostream& os, int n, const char* kind,
                 std::span<const Edge> pairs) {
  os << "n " << n << ' ' << kind << '\n';
  for (auto [u, v] : pairs) os << u << ' ' << v << '\n';
}

std::pair<int, std::vector<Edge>> read_pairs(std::istream& is,
                                             const std::string& kind) {
  std::string line;
  std::size_t lineno = 0;
  int n = -1;
  std::vector<Edge> pairs;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (n < 0) {
      std::string tag, got_kind;
      if (!(ls >> tag >> n >> got_kind) || tag != "n" || n < 0) {
        throw FormatError("expected header 'n <count> " + kind + "'", lineno);
      }
      if (got_kind != kind) {
        throw FormatError("expected '" + kind + "' graph, found '" + got_kind +
                              "'",
                          lineno);
      }
      continue;
    }
    NodeId u, v;
    std::string rest;
    if (!(ls >> u >> v) || (ls >> rest)) {
      throw FormatError("expected 'u v'", lineno);
    }
    pairs.emplace_back(u, v);
  }
  if (n < 0) throw FormatError("missing header line");
  return {n, std::move(pairs)};
}

}  // namespace

void write_edge_list(std::ostream& os, const DirectedGraph& g) {
  write_pairs(os, g.node_count(), "directed", g.arcs());
}

void write_edge_list(std::ostream& os, const UndirectedGraph& g) {
  write_pairs(os, g.node_count(), "undirected", g.edges());
}

DirectedGraph read_directed_edge_list(std::istream& is) {
  auto [n, arcs] = read_pairs(is, "directed");
  return DirectedGraph(n, std::move(arcs));
}

UndirectedGraph read_undirected_edge_list(std::istream& is) {
  auto [n, edges] = read_pairs(is, "undirected");
  return UndirectedGraph(n, std::move(edges));
}

}  // namespace pathlap
