#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alphagraph/components.hpp"
#include "alphagraph/graph.hpp"
#include "alphagraph/model.hpp"
#include "alphagraph/rng.hpp"

namespace alphagraph {

/// Kernel used for every alpha of a sweep grid.
struct KernelFamily {
  enum class Kind { Power, PowerLog, Fixed };
  Kind kind = Kind::Power;
  double beta = 1.0;   // PowerLog only
  KernelSpec fixed;    // Fixed only; alpha grid is ignored

  static KernelFamily power() { return {}; }
  static KernelFamily power_log(double beta) { return {Kind::PowerLog, beta, {}}; }
  static KernelFamily fixed_kernel(KernelSpec k) { return {Kind::Fixed, 1.0, std::move(k)}; }

  [[nodiscard]] KernelSpec at(double alpha) const;
  [[nodiscard]] std::string to_string() const;
};

struct SweepSpec {
  std::vector<double> alphas;
  std::vector<double> cs;
  std::vector<Vertex> ns;
  int replicates = 1;
  OmegaRule omega_rule;
  KernelFamily kernel;
  std::uint64_t master_seed = 0;

  /// Throws std::invalid_argument for empty grids or replicates < 1.
  void validate() const;
  [[nodiscard]] std::size_t cell_count() const { return alphas.size() * cs.size() * ns.size(); }
};

/// One (alpha, c, n) cell. Fractions are |C1|/n per replicate.
struct SweepRecord {
  double alpha = 0.0;
  double c = 0.0;
  Vertex n = 0;
  std::string kernel;
  double mean_fraction = 0.0;
  double std_fraction = 0.0;
  double min_fraction = 0.0;
  double max_fraction = 0.0;
  double mean_second_fraction = 0.0;
  double mean_largest = 0.0;
  Vertex omega = 0;
  double mean_b_fraction = 0.0;
  std::optional<double> predicted_rho;  // attached for alpha <= 1
  int replicates = 0;
  std::string error;  // empty on success
};

struct SweepResult {
  std::vector<SweepRecord> records;
};

/// Stream of one replicate of an (n, c) cell. Independent of the kernel, so
/// two kernels that define the same law yield the same graphs.
Stream cell_replicate_stream(std::uint64_t master_seed, Vertex n, double c, std::uint64_t replicate);

/// Cells are ordered alpha-major, then c, then n. Records are bit-identical
/// for a fixed spec regardless of `workers`. A cell whose model cannot be
/// built is reported with `error` set; the sweep continues.
SweepResult run_sweep(const SweepSpec& spec, unsigned workers = 1);

/// Sweep of a single fixed kernel over (n, c).
SweepResult conjecture_probe(const KernelSpec& kernel, std::span<const Vertex> ns, std::span<const double> cs,
                             int replicates, std::uint64_t master_seed, unsigned workers = 1,
                             OmegaRule omega_rule = {});

/// Spearman correlation between log n and the mean fraction of `records`
/// that share the given alpha and c.
double trend_correlation(std::span<const SweepRecord> records);

/// Component summaries of `replicates` graphs drawn from replicate_stream(params.seed, r).
std::vector<ComponentSummary> sample_summaries(const ModelParams& params, int replicates, unsigned workers = 1);

struct TriangleStats {
  double mean_K = 0.0;                 // mean number of triangles containing a vertex
  double mean_degree = 0.0;
  double mean_second_neighbors = 0.0;  // mean number of vertices at graph distance exactly 2
  std::uint64_t triangles = 0;
};

/// Exact enumeration over sorted neighbour lists; suited to sparse graphs.
TriangleStats triangle_stats(const Graph& graph);

std::vector<TriangleStats> triangle_replicates(const ModelParams& params, int replicates, unsigned workers = 1);

inline constexpr int kRandomBlockPairs = 1000;

/// Connectivity between contiguous blocks of m vertices on the ring.
struct BlockStats {
  Vertex m = 0;
  Vertex n = 0;
  double adjacent_connect_freq = 0.0;     // P(X_{i,i+1} > 0)
  double nonadjacent_connect_freq = 0.0;  // P(X_{i,i+2} > 0), the closest non-adjacent pair
  double random_nonadjacent_freq = 0.0;   // over kRandomBlockPairs random pairs with |i - j| > 1
  int samples = 0;                        // graphs
};

/// Largest multiple of m not exceeding n.
Vertex round_down_to_multiple(Vertex n, Vertex m);

/// Requires m | n and m <= n/4 (std::invalid_argument otherwise). All block
/// sizes are evaluated on the same `replicates` graphs.
std::vector<BlockStats> block_stats(const ModelParams& params, std::span<const Vertex> ms, int replicates,
                                    unsigned workers = 1);
BlockStats block_stats(const ModelParams& params, Vertex m, int replicates, unsigned workers = 1);

struct SprinklingReplicate {
  double b_fraction = 0.0;       // |B_omega| / n at c'
  bool merged_before = false;    // B_omega is inside one component at c'
  bool merged = false;           // B_omega is inside one component at c' + delta
  double fraction_before = 0.0;  // |C1| / n at c'
  double fraction_after = 0.0;   // |C1| / n at c' + delta
  bool nested = false;           // edge set at c' is a subset of the edge set at c' + delta
};

struct SprinklingResult {
  Vertex n = 0;
  double c_prime = 0.0;
  double delta = 0.0;
  Vertex omega = 0;
  std::vector<SprinklingReplicate> replicates;

  [[nodiscard]] double merged_fraction() const;
  [[nodiscard]] double merged_before_fraction() const;
  [[nodiscard]] double nested_fraction() const;
  [[nodiscard]] double mean_b_fraction() const;
};

/// Draws a filtration with c_max = c' + delta per replicate and compares
/// B_omega at c' with the components at c' + delta. An empty B_omega counts
/// as merged. Requires c' > 1 and delta >= 0.
SprinklingResult sprinkling_experiment(Vertex n, const KernelSpec& kernel, double c_prime, double delta,
                                       Vertex omega, int replicates, std::uint64_t master_seed,
                                       unsigned workers = 1);

}  // namespace alphagraph
