#include "alphagraph/components.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace alphagraph {

UnionFind::UnionFind(Vertex n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), Vertex{0});
}

Vertex UnionFind::find(Vertex x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(Vertex x, Vertex y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (size_[x] < size_[y]) std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  return true;
}

ComponentMap label_components(const Graph& graph) {
  const Vertex n = graph.n();
  UnionFind uf(n);
  for (const auto& e : graph.edges()) uf.unite(e.u, e.v);
  ComponentMap map;
  map.root.resize(n);
  map.root_size.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    const Vertex r = uf.find(v);
    map.root[v] = r;
    map.root_size[r] = uf.size_of_root(r);
  }
  return map;
}

ComponentSummary summarize(const ComponentMap& map) {
  ComponentSummary s;
  s.n = static_cast<Vertex>(map.root.size());
  for (Vertex size : map.root_size) {
    if (size > 0) s.component_sizes.push_back(size);
  }
  std::sort(s.component_sizes.begin(), s.component_sizes.end(), std::greater<>());
  if (!s.component_sizes.empty()) s.largest = s.component_sizes[0];
  if (s.component_sizes.size() > 1) s.second_largest = s.component_sizes[1];
  s.fraction = s.n > 0 ? static_cast<double>(s.largest) / s.n : 0.0;
  return s;
}

ComponentSummary components(const Graph& graph) { return summarize(label_components(graph)); }

double b_fraction(const ComponentSummary& summary, Vertex omega) {
  if (omega < 1) throw std::invalid_argument("omega must be at least 1");
  std::uint64_t in_b = 0;
  for (Vertex size : summary.component_sizes) {
    if (size < omega) break;
    in_b += size;
  }
  return summary.n > 0 ? static_cast<double>(in_b) / summary.n : 0.0;
}

double b_fraction(const Graph& graph, Vertex omega) { return b_fraction(components(graph), omega); }

double mean_component_size_of_vertex(const ComponentSummary& summary) {
  double sum_squares = 0.0;
  for (Vertex size : summary.component_sizes) sum_squares += static_cast<double>(size) * size;
  return summary.n > 0 ? sum_squares / summary.n : 0.0;
}

Explorer::Explorer(const Graph& graph) : graph_(&graph), stamp_(graph.n(), 0) {}

ExplorationResult Explorer::explore(Vertex start, Vertex omega) {
  if (start >= graph_->n()) throw std::out_of_range("explore: start vertex out of range");
  if (omega < 1) throw std::invalid_argument("explore: omega must be at least 1");
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  queue_.clear();
  queue_.push_back(start);
  stamp_[start] = epoch_;
  std::size_t head = 0;
  while (head < queue_.size() && queue_.size() < omega) {
    const Vertex x = queue_[head++];
    for (Vertex y : graph_->neighbors(x)) {
      if (stamp_[y] == epoch_) continue;
      stamp_[y] = epoch_;
      queue_.push_back(y);
      if (queue_.size() >= omega) break;
    }
  }
  const auto count = static_cast<Vertex>(queue_.size());
  return ExplorationResult{start, count >= omega ? StopReason::ReachedCutoff : StopReason::Died, count,
                           omega};
}

ExplorationResult explore(const Graph& graph, Vertex start, Vertex omega) {
  return Explorer(graph).explore(start, omega);
}

Vertex omega_log4(Vertex n) {
  const double l = std::log(static_cast<double>(n));
  return static_cast<Vertex>(std::max(1.0, std::ceil(l * l * l * l)));
}

Vertex omega_loglog(Vertex n) {
  const double l = std::log(static_cast<double>(n));
  return l > 1.0 ? static_cast<Vertex>(std::max(1.0, std::ceil(std::log(l)))) : 1;
}

OmegaRule OmegaRule::parse(const std::string& text) {
  if (text == "log4") return {Kind::Log4, 0};
  if (text == "loglog") return {Kind::LogLog, 0};
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value < 1) {
    throw std::invalid_argument("omega rule must be 'log4', 'loglog' or a positive integer, got '" +
                                text + "'");
  }
  return {Kind::Fixed, static_cast<Vertex>(value)};
}

Vertex OmegaRule::operator()(Vertex n) const {
  switch (kind) {
    case Kind::Log4: return omega_log4(n);
    case Kind::LogLog: return omega_loglog(n);
    case Kind::Fixed: return fixed;
  }
  return fixed;
}

std::string OmegaRule::to_string() const {
  switch (kind) {
    case Kind::Log4: return "log4";
    case Kind::LogLog: return "loglog";
    case Kind::Fixed: return std::to_string(fixed);
  }
  return {};
}

}  // namespace alphagraph
