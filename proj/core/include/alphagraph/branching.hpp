#pragma once

#include <string>
#include <variant>
#include <vector>

#include "alphagraph/model.hpp"

namespace alphagraph {

/// Offspring probability generating function of a Galton-Watson process.
class Pgf {
 public:
  /// f(s) = exp(c (s - 1)).
  static Pgf poisson(double c);

  /// PGF of the degree of a fixed vertex of `model`: a sum of independent
  /// Bernoulli(p_d) variables, mu_d of them per distance class.
  /// f(s) = exp(sum_d mu_d log(1 - p_d (1 - s))).
  static Pgf finite_degree(const Model& model);

  [[nodiscard]] double operator()(double s) const;

  /// 1 - f(1 - x), evaluated without cancellation for small x. The survival
  /// probability is the largest fixed point of this map on [0, 1].
  [[nodiscard]] double survival_map(double x) const;

  /// f'(1), the mean number of offspring.
  [[nodiscard]] double mean() const { return mean_; }

  [[nodiscard]] std::string describe() const;

 private:
  struct Poisson {
    double c;
  };
  struct FiniteDegree {
    std::vector<double> probs;
    std::vector<unsigned> multiplicity;
    Vertex n;
  };

  Pgf(std::variant<Poisson, FiniteDegree> law, double mean) : law_(std::move(law)), mean_(mean) {}

  std::variant<Poisson, FiniteDegree> law_;
  double mean_;
};

struct GWResult {
  double extinction_q = 1.0;
  double survival_rho = 0.0;
  long iterations = 0;
  double residual = 0.0;
};

inline constexpr double kDefaultGwTolerance = 1e-12;
inline constexpr long kMaxGwIterations = 1'000'000;

/// Smallest fixed point of f on [0, 1].
///
/// Mean <= 1 gives q = 1. Mean within 1e-3 above 1 is solved by bisection
/// (fixed-point iteration converges too slowly there); otherwise iterates
/// s_{k+1} = f(s_k) from s_0 = 0 until the step is at most `tolerance`.
/// The iteration runs on x = 1 - s so that small survival probabilities
/// keep full relative precision.
/// Throws std::runtime_error if the iteration does not converge.
GWResult extinction(const Pgf& pgf, double tolerance = kDefaultGwTolerance,
                    long max_iterations = kMaxGwIterations);

/// Bisection on x - (1 - f(1 - x)) over x = 1 - s, stopped once the bracket
/// is narrower than `tolerance` relative to x. Independent route to the same
/// fixed point.
GWResult extinction_bisect(const Pgf& pgf, double tolerance = kDefaultGwTolerance);

Pgf finite_degree_pgf(const ModelParams& params);

/// Survival probability of a Poisson(c) Galton-Watson process; 0 for c <= 1.
double rho_limit(double c);

}  // namespace alphagraph
