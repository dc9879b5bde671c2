#include "alphagraph/sampler.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace alphagraph {

namespace {

// Pair index i of class d is the pair (i, i + d mod n).
Edge class_pair(std::uint64_t index, Vertex d, Vertex n) {
  const auto u = static_cast<Vertex>(index);
  const auto v = static_cast<Vertex>((index + d) % n);
  return u < v ? Edge{u, v} : Edge{v, u};
}

// Appends `k` distinct uniformly chosen indices of [0, m) (Floyd's algorithm).
void choose_distinct(std::uint64_t m, std::uint64_t k, Xoshiro256& rng,
                     std::unordered_set<std::uint64_t>& scratch, std::vector<std::uint64_t>& out) {
  scratch.clear();
  scratch.reserve(k);
  for (std::uint64_t j = m - k; j < m; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (scratch.insert(t).second) {
      out.push_back(t);
    } else {
      scratch.insert(j);
      out.push_back(j);
    }
  }
}

}  // namespace

Graph sample_naive(const Model& model, const Stream& stream, Vertex max_n) {
  const Vertex n = model.n();
  if (n > max_n) {
    throw std::invalid_argument("sample_naive is O(n^2); n = " + std::to_string(n) +
                                " exceeds the limit " + std::to_string(max_n));
  }
  auto rng = stream.child(stream_tag::kNaive).engine();
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const double p = model.prob_at(ring_distance(u, v, n));
      // uniform() < p is exact for p = 0 and p = 1.
      if (rng.uniform() < p) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

Graph sample_fast(const Model& model, const Stream& stream) {
  const Vertex n = model.n();
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(model.marginal_degree_sum() * n / 2 * 1.1) + 16);
  std::unordered_set<std::uint64_t> scratch;
  std::vector<std::uint64_t> picked;

  for (Vertex d = 1; d <= n / 2; ++d) {
    const double p = model.prob_at(d);
    if (p <= 0.0) continue;
    const std::uint64_t m = pairs_at_distance(d, n);
    if (p >= 1.0) {
      for (std::uint64_t i = 0; i < m; ++i) edges.push_back(class_pair(i, d, n));
      continue;
    }
    auto rng = stream.child(d).engine();
    std::binomial_distribution<std::uint64_t> count_dist(m, p);
    const std::uint64_t k = count_dist(rng);
    if (k == 0) continue;
    picked.clear();
    if (2 * k <= m) {
      choose_distinct(m, k, rng, scratch, picked);
      for (auto i : picked) edges.push_back(class_pair(i, d, n));
    } else {
      // Dense class: pick the m - k absent pairs instead.
      choose_distinct(m, m - k, rng, scratch, picked);
      for (std::uint64_t i = 0; i < m; ++i) {
        if (!scratch.contains(i)) edges.push_back(class_pair(i, d, n));
      }
    }
  }
  return Graph(n, std::move(edges));
}

std::vector<std::uint64_t> distance_class_counts(const Graph& graph) {
  std::vector<std::uint64_t> counts(graph.n() / 2, 0);
  for (const auto& e : graph.edges()) ++counts[ring_distance(e.u, e.v, graph.n()) - 1];
  return counts;
}

Filtration::Filtration(Vertex n, double c_max, std::vector<TimedEdge> edges)
    : n_(n), c_max_(c_max), edges_(std::move(edges)) {
  if (!(c_max > 0.0)) throw std::invalid_argument("filtration needs c_max > 0");
  for (const auto& e : edges_) {
    if (!(e.activation > 0.0) || e.activation > c_max_) {
      throw std::invalid_argument("edge activation outside (0, c_max]");
    }
  }
}

Graph Filtration::subgraph_at(double level) const {
  if (level > c_max_) {
    throw std::invalid_argument("subgraph_at: level " + std::to_string(level) + " exceeds c_max " +
                                std::to_string(c_max_));
  }
  if (level < 0.0) throw std::invalid_argument("subgraph_at: negative level");
  std::vector<Edge> open;
  for (const auto& e : edges_) {
    if (e.activation <= level) open.push_back({e.u, e.v});
  }
  return Graph(n_, std::move(open));
}

Filtration sample_filtration(const Model& model_at_c_max, const Stream& stream) {
  const double c_max = model_at_c_max.c();
  if (!(c_max > 0.0)) throw std::invalid_argument("sample_filtration needs c_max > 0");
  const Graph top = sample_fast(model_at_c_max, stream);
  auto rng = stream.child(stream_tag::kActivations).engine();
  std::vector<TimedEdge> timed;
  timed.reserve(top.edge_count());
  for (const auto& e : top.edges()) {
    const Vertex d = ring_distance(e.u, e.v, top.n());
    const double ceiling = std::min(c_max, model_at_c_max.saturation_level(d));
    timed.push_back({e.u, e.v, rng.uniform_open_closed() * ceiling});
  }
  return Filtration(top.n(), c_max, std::move(timed));
}

Filtration sample_filtration(Vertex n, const KernelSpec& kernel, double c_max, const Stream& stream) {
  return sample_filtration(Model(ModelParams{n, c_max, kernel, stream.key()}), stream);
}

}  // namespace alphagraph
