#include "alphagraph/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "alphagraph/branching.hpp"
#include "alphagraph/parallel.hpp"
#include "alphagraph/sampler.hpp"
#include "alphagraph/stats.hpp"

namespace alphagraph {

KernelSpec KernelFamily::at(double alpha) const {
  switch (kind) {
    case Kind::Power: return KernelSpec::power(alpha);
    case Kind::PowerLog: return KernelSpec(PowerLogLaw{alpha, beta});
    case Kind::Fixed: return fixed;
  }
  return fixed;
}

std::string KernelFamily::to_string() const {
  switch (kind) {
    case Kind::Power: return "power";
    case Kind::PowerLog: return "powerlog:beta=" + format_alpha(beta);
    case Kind::Fixed: return fixed.to_string();
  }
  return {};
}

void SweepSpec::validate() const {
  if (alphas.empty() || cs.empty() || ns.empty()) {
    throw std::invalid_argument("sweep grids (alphas, cs, ns) must be non-empty");
  }
  if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  for (double c : cs) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("c values must be finite and >= 0");
  }
  for (Vertex n : ns) {
    if (n < 2) throw std::invalid_argument("n values must be at least 2");
  }
}

Stream cell_replicate_stream(std::uint64_t master_seed, Vertex n, double c, std::uint64_t replicate) {
  return Stream(master_seed).child(n).child(std::bit_cast<std::uint64_t>(c)).child(replicate);
}

namespace {

struct ReplicateOutcome {
  double fraction = 0.0;
  double second_fraction = 0.0;
  double largest = 0.0;
  double b_fraction = 0.0;
  std::string error;
};

struct Cell {
  double alpha;
  double c;
  Vertex n;
};

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, unsigned workers) {
  spec.validate();
  std::vector<Cell> cells;
  for (double alpha : spec.alphas) {
    for (double c : spec.cs) {
      for (Vertex n : spec.ns) cells.push_back({alpha, c, n});
    }
  }
  const auto reps = static_cast<std::size_t>(spec.replicates);
  std::vector<ReplicateOutcome> outcomes(cells.size() * reps);

  parallel_for(outcomes.size(), workers, [&](std::size_t job) {
    const Cell& cell = cells[job / reps];
    const std::size_t r = job % reps;
    ReplicateOutcome& out = outcomes[job];
    try {
      const Stream stream = cell_replicate_stream(spec.master_seed, cell.n, cell.c, r);
      const Model model(ModelParams{cell.n, cell.c, spec.kernel.at(cell.alpha), stream.key()});
      const ComponentSummary s = components(sample_fast(model, stream));
      out.fraction = s.fraction;
      out.second_fraction = static_cast<double>(s.second_largest) / s.n;
      out.largest = s.largest;
      out.b_fraction = b_fraction(s, spec.omega_rule(cell.n));
    } catch (const std::exception& e) {
      out.error = e.what();
    }
  });

  SweepResult result;
  result.records.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& cell = cells[i];
    SweepRecord rec;
    rec.alpha = cell.alpha;
    rec.c = cell.c;
    rec.n = cell.n;
    rec.replicates = spec.replicates;
    rec.omega = spec.omega_rule(cell.n);
    std::vector<double> fractions;
    std::vector<double> seconds;
    std::vector<double> largest;
    std::vector<double> bs;
    for (std::size_t r = 0; r < reps; ++r) {
      const ReplicateOutcome& o = outcomes[i * reps + r];
      if (!o.error.empty()) {
        if (rec.error.empty()) rec.error = o.error;
        continue;
      }
      fractions.push_back(o.fraction);
      seconds.push_back(o.second_fraction);
      largest.push_back(o.largest);
      bs.push_back(o.b_fraction);
    }
    const KernelSpec kernel = spec.kernel.at(cell.alpha);
    rec.kernel = kernel.to_string();
    if (rec.error.empty()) {
      rec.mean_fraction = stats::mean(fractions);
      rec.std_fraction = stats::stddev(fractions);
      rec.min_fraction = stats::min(fractions);
      rec.max_fraction = stats::max(fractions);
      rec.mean_second_fraction = stats::mean(seconds);
      rec.mean_largest = stats::mean(largest);
      rec.mean_b_fraction = stats::mean(bs);
    } else {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      rec.mean_fraction = rec.std_fraction = rec.min_fraction = rec.max_fraction = nan;
      rec.mean_second_fraction = rec.mean_largest = rec.mean_b_fraction = nan;
    }
    const double kernel_alpha = kernel.alpha();
    if (kernel_alpha <= 1.0) rec.predicted_rho = rho_limit(cell.c);
    result.records.push_back(std::move(rec));
  }
  return result;
}

SweepResult conjecture_probe(const KernelSpec& kernel, std::span<const Vertex> ns, std::span<const double> cs,
                             int replicates, std::uint64_t master_seed, unsigned workers, OmegaRule omega_rule) {
  SweepSpec spec;
  spec.alphas = {kernel.alpha()};
  spec.cs.assign(cs.begin(), cs.end());
  spec.ns.assign(ns.begin(), ns.end());
  spec.replicates = replicates;
  spec.omega_rule = omega_rule;
  spec.kernel = KernelFamily::fixed_kernel(kernel);
  spec.master_seed = master_seed;
  return run_sweep(spec, workers);
}

double trend_correlation(std::span<const SweepRecord> records) {
  std::vector<double> log_n;
  std::vector<double> fraction;
  for (const auto& r : records) {
    log_n.push_back(std::log(static_cast<double>(r.n)));
    fraction.push_back(r.mean_fraction);
  }
  return stats::spearman(log_n, fraction);
}

std::vector<ComponentSummary> sample_summaries(const ModelParams& params, int replicates, unsigned workers) {
  if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  const Model model(params);
  std::vector<ComponentSummary> out(static_cast<std::size_t>(replicates));
  parallel_for(out.size(), workers, [&](std::size_t r) {
    out[r] = components(sample_fast(model, replicate_stream(params.seed, r)));
  });
  return out;
}

TriangleStats triangle_stats(const Graph& graph) {
  const Vertex n = graph.n();
  TriangleStats s;
  if (n == 0) return s;
  for (const auto& e : graph.edges()) {
    const auto a = graph.neighbors(e.u);
    const auto b = graph.neighbors(e.v);
    // Count common neighbours w > v so each triangle u < v < w is seen once.
    auto i = std::upper_bound(a.begin(), a.end(), e.v);
    auto j = std::upper_bound(b.begin(), b.end(), e.v);
    while (i != a.end() && j != b.end()) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        ++s.triangles;
        ++i;
        ++j;
      }
    }
  }
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint64_t second = 0;
  for (Vertex v = 0; v < n; ++v) {
    const std::uint32_t mark = v + 1;
    stamp[v] = mark;
    for (Vertex u : graph.neighbors(v)) stamp[u] = mark;
    for (Vertex u : graph.neighbors(v)) {
      for (Vertex w : graph.neighbors(u)) {
        if (stamp[w] != mark) {
          stamp[w] = mark;
          ++second;
        }
      }
    }
  }
  s.mean_K = 3.0 * static_cast<double>(s.triangles) / n;
  s.mean_degree = 2.0 * static_cast<double>(graph.edge_count()) / n;
  s.mean_second_neighbors = static_cast<double>(second) / n;
  return s;
}

std::vector<TriangleStats> triangle_replicates(const ModelParams& params, int replicates, unsigned workers) {
  if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  const Model model(params);
  std::vector<TriangleStats> out(static_cast<std::size_t>(replicates));
  parallel_for(out.size(), workers, [&](std::size_t r) {
    out[r] = triangle_stats(sample_fast(model, replicate_stream(params.seed, r)));
  });
  return out;
}

Vertex round_down_to_multiple(Vertex n, Vertex m) {
  if (m == 0) throw std::invalid_argument("block size must be positive");
  return n - n % m;
}

namespace {

struct BlockCounts {
  std::uint64_t adjacent_hits = 0;
  std::uint64_t adjacent_total = 0;
  std::uint64_t gap2_hits = 0;
  std::uint64_t gap2_total = 0;
  std::uint64_t random_hits = 0;
  std::uint64_t random_total = 0;
};

BlockCounts count_blocks(const Graph& g, Vertex m, const Stream& analysis) {
  const Vertex blocks = g.n() / m;
  std::vector<char> adjacent(blocks, 0);
  std::vector<char> gap2(blocks, 0);
  std::unordered_set<std::uint64_t> far_pairs;
  for (const auto& e : g.edges()) {
    const Vertex bu = e.u / m;
    const Vertex bv = e.v / m;  // bu <= bv
    if (bu == bv) continue;
    const Vertex forward = bv - bu;
    const Vertex gap = std::min(forward, blocks - forward);
    const Vertex first = forward == gap ? bu : bv;  // pair is (first, first + gap mod blocks)
    if (gap == 1) {
      adjacent[first] = 1;
    } else {
      if (gap == 2) gap2[first] = 1;
      far_pairs.insert(static_cast<std::uint64_t>(bu) * blocks + bv);
    }
  }
  BlockCounts c;
  c.adjacent_total = blocks;
  c.adjacent_hits = static_cast<std::uint64_t>(std::count(adjacent.begin(), adjacent.end(), 1));
  // With four blocks, (i, i+2) and (i+2, i) coincide.
  c.gap2_total = blocks == 4 ? 2 : blocks;
  c.gap2_hits = static_cast<std::uint64_t>(std::count(gap2.begin(), gap2.end(), 1));

  auto rng = analysis.child(m).engine();
  for (int k = 0; k < kRandomBlockPairs; ++k) {
    const auto i = static_cast<Vertex>(rng.below(blocks));
    const auto j = static_cast<Vertex>((i + 2 + rng.below(blocks - 3)) % blocks);
    const Vertex lo = std::min(i, j);
    const Vertex hi = std::max(i, j);
    c.random_hits += far_pairs.contains(static_cast<std::uint64_t>(lo) * blocks + hi) ? 1 : 0;
  }
  c.random_total = kRandomBlockPairs;
  return c;
}

}  // namespace

std::vector<BlockStats> block_stats(const ModelParams& params, std::span<const Vertex> ms, int replicates,
                                    unsigned workers) {
  if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  for (Vertex m : ms) {
    if (m == 0 || params.n % m != 0) {
      throw std::invalid_argument("block size " + std::to_string(m) + " does not divide n = " +
                                  std::to_string(params.n));
    }
    if (m > params.n / 4) {
      throw std::invalid_argument("block size " + std::to_string(m) + " exceeds n/4 (too few blocks)");
    }
  }
  const Model model(params);
  const auto reps = static_cast<std::size_t>(replicates);
  std::vector<std::vector<BlockCounts>> per_rep(reps);
  parallel_for(reps, workers, [&](std::size_t r) {
    const Stream stream = replicate_stream(params.seed, r);
    const Graph g = sample_fast(model, stream);
    const Stream analysis = stream.child(stream_tag::kAnalysis);
    per_rep[r].reserve(ms.size());
    for (Vertex m : ms) per_rep[r].push_back(count_blocks(g, m, analysis));
  });

  std::vector<BlockStats> out;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    BlockCounts total;
    for (const auto& rep : per_rep) {
      total.adjacent_hits += rep[k].adjacent_hits;
      total.adjacent_total += rep[k].adjacent_total;
      total.gap2_hits += rep[k].gap2_hits;
      total.gap2_total += rep[k].gap2_total;
      total.random_hits += rep[k].random_hits;
      total.random_total += rep[k].random_total;
    }
    BlockStats s;
    s.m = ms[k];
    s.n = params.n;
    s.adjacent_connect_freq = static_cast<double>(total.adjacent_hits) / total.adjacent_total;
    s.nonadjacent_connect_freq = static_cast<double>(total.gap2_hits) / total.gap2_total;
    s.random_nonadjacent_freq = static_cast<double>(total.random_hits) / total.random_total;
    s.samples = replicates;
    out.push_back(s);
  }
  return out;
}

BlockStats block_stats(const ModelParams& params, Vertex m, int replicates, unsigned workers) {
  const Vertex ms[] = {m};
  return block_stats(params, ms, replicates, workers).front();
}

namespace {

bool single_component(const ComponentMap& map, std::span<const Vertex> members) {
  return std::all_of(members.begin(), members.end(),
                     [&](Vertex v) { return map.root[v] == map.root[members.front()]; });
}

double fraction_of(std::span<const SprinklingReplicate> reps, bool SprinklingReplicate::*flag) {
  if (reps.empty()) return 0.0;
  const auto hits = std::count_if(reps.begin(), reps.end(), [&](const auto& r) { return r.*flag; });
  return static_cast<double>(hits) / static_cast<double>(reps.size());
}

}  // namespace

double SprinklingResult::merged_fraction() const { return fraction_of(replicates, &SprinklingReplicate::merged); }
double SprinklingResult::merged_before_fraction() const {
  return fraction_of(replicates, &SprinklingReplicate::merged_before);
}
double SprinklingResult::nested_fraction() const { return fraction_of(replicates, &SprinklingReplicate::nested); }
double SprinklingResult::mean_b_fraction() const {
  std::vector<double> bs;
  for (const auto& r : replicates) bs.push_back(r.b_fraction);
  return stats::mean(bs);
}

SprinklingResult sprinkling_experiment(Vertex n, const KernelSpec& kernel, double c_prime, double delta,
                                       Vertex omega, int replicates, std::uint64_t master_seed,
                                       unsigned workers) {
  if (!(c_prime > 1.0)) throw std::invalid_argument("sprinkling needs c' > 1");
  if (!(delta >= 0.0)) throw std::invalid_argument("sprinkling needs delta >= 0");
  if (omega < 1) throw std::invalid_argument("omega must be at least 1");
  if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");

  const double c_max = c_prime + delta;
  const Model model(ModelParams{n, c_max, kernel, master_seed});
  SprinklingResult result;
  result.n = n;
  result.c_prime = c_prime;
  result.delta = delta;
  result.omega = omega;
  result.replicates.resize(static_cast<std::size_t>(replicates));

  parallel_for(result.replicates.size(), workers, [&](std::size_t r) {
    const Filtration filtration = sample_filtration(model, replicate_stream(master_seed, r));
    const Graph before = filtration.subgraph_at(c_prime);
    const Graph after = filtration.subgraph_at(c_max);
    const ComponentMap map_before = label_components(before);
    const ComponentMap map_after = label_components(after);

    std::vector<Vertex> b_set;
    for (Vertex v = 0; v < n; ++v) {
      if (map_before.size_of(v) >= omega) b_set.push_back(v);
    }
    SprinklingReplicate& out = result.replicates[r];
    out.b_fraction = static_cast<double>(b_set.size()) / n;
    out.merged_before = b_set.empty() || single_component(map_before, b_set);
    out.merged = b_set.empty() || single_component(map_after, b_set);
    out.fraction_before = summarize(map_before).fraction;
    out.fraction_after = summarize(map_after).fraction;
    out.nested = std::includes(after.edges().begin(), after.edges().end(), before.edges().begin(),
                               before.edges().end());
  });
  return result;
}

}  // namespace alphagraph
