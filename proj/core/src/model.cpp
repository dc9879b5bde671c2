#include "alphagraph/model.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace alphagraph {

ModelParams ModelParams::alpha_model(Vertex n, double alpha, double c, std::uint64_t seed) {
  return ModelParams{n, c, KernelSpec::power(alpha), seed};
}

void ModelParams::validate() const {
  if (n < 2) throw std::invalid_argument("n must be at least 2, got " + std::to_string(n));
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("c must be finite and non-negative, got " + std::to_string(c));
  }
  kernel.validate(n / 2);
}

Vertex ring_distance(Vertex u, Vertex v, Vertex n) {
  if (u >= n || v >= n) {
    throw std::out_of_range("vertex index out of range: (" + std::to_string(u) + ", " +
                            std::to_string(v) + ") with n = " + std::to_string(n));
  }
  const Vertex diff = u > v ? u - v : v - u;
  return std::min(diff, n - diff);
}

std::uint64_t pairs_at_distance(Vertex d, Vertex n) {
  if (d == 0 || d > n / 2) return 0;
  return (n % 2 == 0 && d == n / 2) ? n / 2 : n;
}

unsigned vertices_at_distance(Vertex d, Vertex n) {
  if (d == 0 || d > n / 2) return 0;
  return (n % 2 == 0 && d == n / 2) ? 1U : 2U;
}

Normalizer normalizer(Vertex n, const KernelSpec& kernel) {
  if (n < 2) throw std::invalid_argument("normalizer needs n >= 2");
  kernel.validate(n / 2);
  CompensatedSum sum;
  // Smallest terms first.
  for (Vertex d = n / 2; d >= 1; --d) {
    sum.add(vertices_at_distance(d, n) * kernel(d));
  }
  return Normalizer{sum.value(), n, kernel};
}

Model::Model(ModelParams params) : params_(std::move(params)) {
  params_.validate();
  normalizer_ = alphagraph::normalizer(params_.n, params_.kernel);
  const Vertex max_d = params_.n / 2;
  weights_.resize(max_d);
  if (params_.kernel.is_nearest_neighbor()) {
    weights_[0] = 0.5;
  } else {
    const double h = normalizer_.value;
    for (Vertex d = 1; d <= max_d; ++d) weights_[d - 1] = params_.kernel(d) / h;
  }
  fill_probs();
}

Model::Model(ModelParams params, Normalizer normalizer, std::vector<double> weights)
    : params_(std::move(params)), normalizer_(std::move(normalizer)), weights_(std::move(weights)) {
  if (!(params_.c >= 0.0) || !std::isfinite(params_.c)) {
    throw std::invalid_argument("c must be finite and non-negative");
  }
  fill_probs();
}

void Model::fill_probs() {
  probs_.resize(weights_.size());
  const double c = params_.c;
  std::transform(weights_.begin(), weights_.end(), probs_.begin(),
                 [c](double w) { return std::min(1.0, c * w); });
}

Model Model::with_c(double c) const {
  ModelParams p = params_;
  p.c = c;
  return Model(std::move(p), normalizer_, weights_);
}

double Model::saturation_level(Vertex d) const {
  const double w = weight_at(d);
  return w > 0.0 ? 1.0 / w : std::numeric_limits<double>::infinity();
}

double Model::edge_prob(Vertex u, Vertex v) const {
  if (u == v) throw std::invalid_argument("edge_prob: u == v (the model has no self-loops)");
  return prob_at(ring_distance(u, v, params_.n));
}

double Model::marginal_degree_sum() const {
  CompensatedSum sum;
  const Vertex n = params_.n;
  for (Vertex d = n / 2; d >= 1; --d) sum.add(vertices_at_distance(d, n) * prob_at(d));
  return sum.value();
}

bool Model::clamped() const {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (params_.c * weights_[i] > 1.0) return true;
  }
  return false;
}

double edge_prob(Vertex u, Vertex v, const ModelParams& params) {
  return Model(params).edge_prob(u, v);
}

double marginal_degree_sum(const ModelParams& params) { return Model(params).marginal_degree_sum(); }

}  // namespace alphagraph
