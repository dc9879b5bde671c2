#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "alphagraph/kernel.hpp"

namespace alphagraph {

/// Full specification of one random-graph law G(n, kernel, c) plus the seed
/// of the realization drawn from it.
struct ModelParams {
  Vertex n = 2;
  double c = 1.0;
  KernelSpec kernel;
  std::uint64_t seed = 0;

  /// Power-law model; alpha = +inf gives the nearest-neighbour kernel.
  static ModelParams alpha_model(Vertex n, double alpha, double c, std::uint64_t seed = 0);

  [[nodiscard]] double alpha() const { return kernel.alpha(); }

  /// Throws std::invalid_argument unless n >= 2, c >= 0 and finite.
  void validate() const;
};

/// Ring distance min(|u - v|, n - |u - v|). Throws std::out_of_range if
/// either index is >= n.
Vertex ring_distance(Vertex u, Vertex v, Vertex n);

/// Number of unordered vertex pairs at ring distance d: n for d < n/2 and
/// n/2 for d = n/2 with n even.
std::uint64_t pairs_at_distance(Vertex d, Vertex n);

/// Number of vertices at ring distance d from a fixed vertex (2, or 1 at d = n/2).
unsigned vertices_at_distance(Vertex d, Vertex n);

/// h_{f,n} = sum over u != 0 of f(d(u, 0)).
struct Normalizer {
  double value = 0.0;
  Vertex n = 0;
  KernelSpec kernel;
};

/// One pass over distance classes with compensated summation.
Normalizer normalizer(Vertex n, const KernelSpec& kernel);

/// Precomputed per-distance edge probabilities of one model.
///
/// p_d = min(1, c w_d) with w_d = f(d) / h. Nearest-neighbour models use
/// w_1 = 1/2 and w_d = 0 otherwise, so that p = min(1, c/2) at every n.
class Model {
 public:
  explicit Model(ModelParams params);

  [[nodiscard]] const ModelParams& params() const { return params_; }
  [[nodiscard]] Vertex n() const { return params_.n; }
  [[nodiscard]] double c() const { return params_.c; }
  [[nodiscard]] const Normalizer& normalizer() const { return normalizer_; }
  [[nodiscard]] Vertex max_distance() const { return params_.n / 2; }

  /// Edge probability for a pair at ring distance d (1 <= d <= n/2).
  [[nodiscard]] double prob_at(Vertex d) const { return probs_[d - 1]; }

  /// Unclamped normalized weight f(d)/h; p_d = min(1, c * weight).
  [[nodiscard]] double weight_at(Vertex d) const { return weights_[d - 1]; }

  /// Smallest c at which a pair at distance d is present with probability 1.
  [[nodiscard]] double saturation_level(Vertex d) const;

  [[nodiscard]] std::span<const double> probs() const { return probs_; }

  /// Throws std::invalid_argument for u == v (no self-loops in the model).
  [[nodiscard]] double edge_prob(Vertex u, Vertex v) const;

  /// Sum over v != u of p_{u,v}; equals c whenever no probability is clamped.
  [[nodiscard]] double marginal_degree_sum() const;

  /// True if some p_d was clamped at 1.
  [[nodiscard]] bool clamped() const;

  /// Same kernel and n at another c; reuses the normalizer.
  [[nodiscard]] Model with_c(double c) const;

 private:
  Model(ModelParams params, Normalizer normalizer, std::vector<double> weights);
  void fill_probs();

  ModelParams params_;
  Normalizer normalizer_;
  std::vector<double> weights_;
  std::vector<double> probs_;
};

/// Convenience forms that build a Model; O(n) each.
double edge_prob(Vertex u, Vertex v, const ModelParams& params);
double marginal_degree_sum(const ModelParams& params);

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace alphagraph
