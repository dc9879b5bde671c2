#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alphagraph/graph.hpp"

namespace alphagraph {

/// Disjoint-set forest with path compression (halving) and union by size.
class UnionFind {
 public:
  explicit UnionFind(Vertex n);

  Vertex find(Vertex x);
  /// Returns true if x and y were in different sets.
  bool unite(Vertex x, Vertex y);
  [[nodiscard]] Vertex size_of_root(Vertex root) const { return size_[root]; }
  [[nodiscard]] Vertex element_count() const { return static_cast<Vertex>(parent_.size()); }

 private:
  std::vector<Vertex> parent_;
  std::vector<Vertex> size_;
};

/// Component id (a representative vertex) for every vertex, plus sizes.
struct ComponentMap {
  std::vector<Vertex> root;       // root[v]: representative of v's component
  std::vector<Vertex> root_size;  // root_size[r]: size if r is a representative, else 0

  [[nodiscard]] Vertex size_of(Vertex v) const { return root_size[root[v]]; }
};

ComponentMap label_components(const Graph& graph);

struct ComponentSummary {
  Vertex n = 0;
  std::vector<Vertex> component_sizes;  // non-increasing
  Vertex largest = 0;
  Vertex second_largest = 0;
  double fraction = 0.0;  // largest / n

  [[nodiscard]] std::size_t component_count() const { return component_sizes.size(); }
};

ComponentSummary summarize(const ComponentMap& map);
ComponentSummary components(const Graph& graph);

/// |B_omega| / n, where B_omega is the set of vertices in components of size >= omega.
double b_fraction(const ComponentSummary& summary, Vertex omega);
double b_fraction(const Graph& graph, Vertex omega);

/// Expected size of the component of a uniformly chosen vertex: sum s^2 / n.
double mean_component_size_of_vertex(const ComponentSummary& summary);

enum class StopReason { ReachedCutoff, Died };

struct ExplorationResult {
  Vertex start = 0;
  StopReason stopped_reason = StopReason::Died;
  Vertex explored_count = 0;
  Vertex cutoff = 0;
};

/// Breadth-first exploration halted once `omega` vertices have been
/// discovered. Reuses its marks between calls; one instance per thread.
class Explorer {
 public:
  explicit Explorer(const Graph& graph);

  ExplorationResult explore(Vertex start, Vertex omega);

 private:
  const Graph* graph_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<Vertex> queue_;
};

ExplorationResult explore(const Graph& graph, Vertex start, Vertex omega);

/// Cutoff rules for omega(n).
struct OmegaRule {
  enum class Kind { Log4, LogLog, Fixed };
  Kind kind = Kind::Log4;
  Vertex fixed = 0;

  /// "log4" (ceil((ln n)^4)), "loglog" (ceil(ln ln n), at least 1), or an integer.
  static OmegaRule parse(const std::string& text);
  [[nodiscard]] Vertex operator()(Vertex n) const;
  [[nodiscard]] std::string to_string() const;
};

/// ceil((ln n)^4).
Vertex omega_log4(Vertex n);
/// max(1, ceil(ln ln n)).
Vertex omega_loglog(Vertex n);

}  // namespace alphagraph
