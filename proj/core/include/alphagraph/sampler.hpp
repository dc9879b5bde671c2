#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "alphagraph/graph.hpp"
#include "alphagraph/model.hpp"
#include "alphagraph/rng.hpp"

namespace alphagraph {

inline constexpr Vertex kDefaultNaiveLimit = 10'000;

/// Direct per-pair Bernoulli sampling, O(n^2). Correctness oracle for
/// sample_fast. Throws std::invalid_argument if n exceeds `max_n`.
Graph sample_naive(const Model& model, const Stream& stream, Vertex max_n = kDefaultNaiveLimit);

/// Distance-class sampler: for each d draws K_d ~ Binomial(m_d, p_d) and then
/// K_d distinct pairs of the class uniformly (Floyd). Class d uses the
/// substream stream.child(d), so the result does not depend on evaluation
/// order. Expected work O(n + |E|).
Graph sample_fast(const Model& model, const Stream& stream);

/// Per-class edge counts of a realization; counts[d - 1] for 1 <= d <= n/2.
std::vector<std::uint64_t> distance_class_counts(const Graph& graph);

/// An edge together with the smallest c at which it opens.
struct TimedEdge {
  Vertex u = 0;
  Vertex v = 0;
  double activation = 0.0;
};

/// A coupled family of graphs G(c') for all 0 < c' <= c_max.
///
/// Only edges present at c_max are stored. A stored edge at distance d has
/// activation uniform on (0, min(c_max, saturation_level(d))], which is the
/// law of U h / f(d) conditioned on the edge being present at c_max.
class Filtration {
 public:
  Filtration(Vertex n, double c_max, std::vector<TimedEdge> edges);

  [[nodiscard]] Vertex n() const { return n_; }
  [[nodiscard]] double c_max() const { return c_max_; }
  [[nodiscard]] std::span<const TimedEdge> edges() const { return edges_; }

  /// Edges with activation <= level. Throws std::invalid_argument if
  /// level > c_max or level < 0.
  [[nodiscard]] Graph subgraph_at(double level) const;

 private:
  Vertex n_;
  double c_max_;
  std::vector<TimedEdge> edges_;
};

/// Samples the edge set at c_max with sample_fast(stream) and assigns
/// activations from stream.child(stream_tag::kActivations) in sorted edge order.
Filtration sample_filtration(Vertex n, const KernelSpec& kernel, double c_max, const Stream& stream);

/// Same, for an existing model whose c is taken as c_max.
Filtration sample_filtration(const Model& model_at_c_max, const Stream& stream);

inline Graph subgraph_at(const Filtration& filtration, double level) {
  return filtration.subgraph_at(level);
}

}  // namespace alphagraph
