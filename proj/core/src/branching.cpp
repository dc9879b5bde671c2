#include "alphagraph/branching.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace alphagraph {

namespace {

constexpr double kNearCritical = 1e-3;

// x is the survival probability 1 - q.
GWResult finish(const Pgf& pgf, double x, long iterations) {
  return GWResult{1.0 - x, x, iterations, std::abs(pgf.survival_map(x) - x)};
}

}  // namespace

Pgf Pgf::poisson(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("Poisson mean must be finite and >= 0");
  return Pgf(Poisson{c}, c);
}

Pgf Pgf::finite_degree(const Model& model) {
  FiniteDegree law{{}, {}, model.n()};
  CompensatedSum mean;
  for (Vertex d = 1; d <= model.max_distance(); ++d) {
    const double p = model.prob_at(d);
    if (p <= 0.0) continue;
    const unsigned mu = vertices_at_distance(d, model.n());
    law.probs.push_back(p);
    law.multiplicity.push_back(mu);
    mean.add(mu * p);
  }
  return Pgf(std::move(law), mean.value());
}

double Pgf::operator()(double s) const {
  if (const auto* p = std::get_if<Poisson>(&law_)) return std::exp(p->c * (s - 1.0));
  const auto& law = std::get<FiniteDegree>(law_);
  if (s == 1.0) return 1.0;
  const double t = 1.0 - s;
  CompensatedSum log_f;
  for (std::size_t i = 0; i < law.probs.size(); ++i) {
    if (law.probs[i] * t >= 1.0) return 0.0;
    log_f.add(law.multiplicity[i] * std::log1p(-law.probs[i] * t));
  }
  return std::exp(log_f.value());
}

double Pgf::survival_map(double x) const {
  if (const auto* p = std::get_if<Poisson>(&law_)) return -std::expm1(-p->c * x);
  const auto& law = std::get<FiniteDegree>(law_);
  CompensatedSum log_f;
  for (std::size_t i = 0; i < law.probs.size(); ++i) {
    if (law.probs[i] * x >= 1.0) return 1.0;
    log_f.add(law.multiplicity[i] * std::log1p(-law.probs[i] * x));
  }
  return -std::expm1(log_f.value());
}

std::string Pgf::describe() const {
  if (const auto* p = std::get_if<Poisson>(&law_)) return "poisson(c=" + format_alpha(p->c) + ")";
  return "finite_degree(n=" + std::to_string(std::get<FiniteDegree>(law_).n) + ")";
}

GWResult extinction(const Pgf& pgf, double tolerance, long max_iterations) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (pgf(0.0) == 0.0) return finish(pgf, 1.0, 0);
  const double mean = pgf.mean();
  if (mean <= 1.0) return GWResult{1.0, 0.0, 0, 0.0};
  if (mean - 1.0 < kNearCritical) return extinction_bisect(pgf, tolerance);

  double x = 1.0;
  for (long k = 1; k <= max_iterations; ++k) {
    const double next = pgf.survival_map(x);
    const double step = next - x;
    x = next;
    if (std::abs(step) <= tolerance) return finish(pgf, x, k);
  }
  throw std::runtime_error("extinction: no convergence after " + std::to_string(max_iterations) +
                           " iterations for " + pgf.describe());
}

GWResult extinction_bisect(const Pgf& pgf, double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (pgf(0.0) == 0.0) return finish(pgf, 1.0, 0);
  if (pgf.mean() <= 1.0) return GWResult{1.0, 0.0, 0, 0.0};

  // g > 0 strictly between 0 and the survival probability, g < 0 above it.
  auto g = [&pgf](double x) { return pgf.survival_map(x) - x; };
  double hi = 1.0;
  double lo = 0.5;
  while (g(lo) <= 0.0) {
    hi = lo;
    lo *= 0.5;
    if (lo < 1e-300) throw std::runtime_error("extinction_bisect: no sign change for " + pgf.describe());
  }
  long iterations = 0;
  while (hi - lo > tolerance * lo && iterations < 2000) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) > 0.0 ? lo : hi) = mid;
    ++iterations;
  }
  return finish(pgf, 0.5 * (lo + hi), iterations);
}

Pgf finite_degree_pgf(const ModelParams& params) { return Pgf::finite_degree(Model(params)); }

double rho_limit(double c) {
  if (!(c > 1.0)) return 0.0;
  return extinction(Pgf::poisson(c)).survival_rho;
}

}  // namespace alphagraph
