#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "alphagraph/kernel.hpp"

namespace alphagraph {

/// Unordered vertex pair stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable simple undirected graph on [n] with sorted neighbour lists.
class Graph {
 public:
  Graph() = default;

  /// Canonicalizes each pair to u < v and sorts. Throws std::invalid_argument
  /// on self-loops, duplicate pairs, or endpoints >= n.
  Graph(Vertex n, std::vector<Edge> edges);

  [[nodiscard]] Vertex n() const { return n_; }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] std::span<const Edge> edges() const { return edges_; }

  [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  [[nodiscard]] std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  [[nodiscard]] bool has_edge(Vertex u, Vertex v) const;

  /// Bytes held by this graph's buffers.
  [[nodiscard]] std::size_t memory_bytes() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

}  // namespace alphagraph
