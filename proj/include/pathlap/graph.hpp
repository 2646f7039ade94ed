// Copyright 2026 The pathlap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace pathlap {

using NodeId = int;
using Edge = std::pair<NodeId, NodeId>;

/// Simple undirected graph. Edges are stored once as (u, v) with u < v,
/// sorted lexicographically.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;

  /// Throws ParameterError on self-loops, duplicates or out-of-range nodes.
  /// Pairs may be given in either orientation.
  UndirectedGraph(int n, std::vector<Edge> edges);

  int node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return adj_[static_cast<std::size_t>(v)];
  }
  int degree(NodeId v) const noexcept {
    return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
  }
  bool has_edge(NodeId u, NodeId v) const;

  friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adj_;
};

/// Directed graph without self-arcs or parallel arcs. Arc (i, j) means
/// A(i, j) = 1, i.e. it counts toward out_degree(i) and in_degree(j).
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Throws ParameterError on self-arcs, duplicates or out-of-range nodes.
  DirectedGraph(int n, std::vector<Edge> arcs);

  int node_count() const noexcept { return n_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  std::span<const Edge> arcs() const noexcept { return arcs_; }

  std::span<const NodeId> out_neighbors(NodeId v) const noexcept {
    return out_[static_cast<std::size_t>(v)];
  }
  std::span<const NodeId> in_neighbors(NodeId v) const noexcept {
    return in_[static_cast<std::size_t>(v)];
  }
  int out_degree(NodeId v) const noexcept {
    return static_cast<int>(out_[static_cast<std::size_t>(v)].size());
  }
  int in_degree(NodeId v) const noexcept {
    return static_cast<int>(in_[static_cast<std::size_t>(v)].size());
  }
  std::vector<int> out_degrees() const;
  std::vector<int> in_degrees() const;
  bool has_arc(NodeId u, NodeId v) const;

  /// Forgets orientation; reciprocal arcs collapse into one edge.
  UndirectedGraph underlying() const;

  /// Every edge becomes a pair of opposite arcs.
  static DirectedGraph symmetric(const UndirectedGraph& g);

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> arcs_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
};

// Edge-list text format: a header line "n <count> directed" (or
// "undirected"), then one "u v" pair per line. Blank lines and lines starting
// with '#' are ignored on read.
void write_edge_list(std::ostream& os, const DirectedGraph& g);
void write_edge_list(std::ostream& os, const UndirectedGraph& g);
DirectedGraph read_directed_edge_list(std::istream& is);
UndirectedGraph read_undirected_edge_list(std::istream& is);

}  // namespace pathlap
