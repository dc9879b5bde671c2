#include "doctest.h"

#include <stdexcept>
#include <cmath>
#include <vector>

#include "alphagraph/branching.hpp"

using namespace alphagraph;

namespace {

// Frozen from an independent 30-digit bisection of rho = 1 - exp(-c rho).
constexpr double kRho2 = 0.79681213002002004616;
constexpr double kRho4 = 0.98017259871822158589;

// Test-side oracle: bisection on the survival equation itself.
double survival_by_bisection(double c) {
  double lo = 1e-300;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid - (1.0 - std::exp(-c * mid)) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("rho_limit examples") {
  CHECK(rho_limit(0.5) == 0.0);
  CHECK(rho_limit(1.0) == 0.0);
  CHECK(std::abs(rho_limit(2.0) - kRho2) < 1e-10);
  CHECK(std::abs(rho_limit(4.0) - kRho4) < 1e-10);
  CHECK(std::abs(survival_by_bisection(2.0) - kRho2) < 1e-14);
}

TEST_CASE("iteration agrees with both bisection routes") {
  for (double c : {1.1, 1.5, 2.0, 3.0, 4.0}) {
    const Pgf f = Pgf::poisson(c);
    const GWResult iter = extinction(f);
    const GWResult bis = extinction_bisect(f);
    CHECK(std::abs(iter.extinction_q - bis.extinction_q) <= 1e-10);
    CHECK(std::abs(iter.survival_rho - survival_by_bisection(c)) <= 1e-10);
    CHECK(iter.residual <= 1e-12);
    CHECK(bis.residual <= 1e-12);
    CHECK(iter.extinction_q + iter.survival_rho == 1.0);
    CHECK(std::abs(f.survival_map(iter.survival_rho) - iter.survival_rho) == iter.residual);
    CHECK(std::abs(f(iter.extinction_q) - iter.extinction_q) <= 1e-12);
  }
}

TEST_CASE("rho_limit is zero up to 1 and non-decreasing after") {
  double previous = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double c = 0.1 * i;
    const double rho = rho_limit(c);
    if (c <= 1.0 + 1e-12) {
      CHECK(rho == 0.0);
    } else {
      CHECK(rho > 0.0);
    }
    CHECK(rho >= previous);
    previous = rho;
  }
}

TEST_CASE("near-critical means go through bisection") {
  const double c = 1.0005;
  const GWResult r = extinction(Pgf::poisson(c));
  CHECK(r.survival_rho > 0.0);
  CHECK(std::abs(r.survival_rho - survival_by_bisection(c)) < 1e-9);
  CHECK(r.residual <= 1e-12);
  CHECK(rho_limit(1.0 + 1e-9) == doctest::Approx(2e-9).epsilon(1e-6));
  CHECK(rho_limit(1.0 + 1e-6) == doctest::Approx(2e-6).epsilon(1e-5));
}

TEST_CASE("subcritical and degenerate offspring laws") {
  const GWResult sub = extinction(Pgf::poisson(0.7));
  CHECK(sub.extinction_q == 1.0);
  CHECK(sub.survival_rho == 0.0);
  // Every pair at distance 1 present: each vertex has 2 children surely.
  const Model full(ModelParams::alpha_model(10, std::numeric_limits<double>::infinity(), 2.0));
  const Pgf f = Pgf::finite_degree(full);
  CHECK(f(0.0) == 0.0);
  CHECK(extinction(f).extinction_q == 0.0);
}

TEST_CASE("iteration budget is enforced") {
  CHECK_THROWS_AS(extinction(Pgf::poisson(3.0), 1e-12, 2), std::runtime_error);
}

TEST_CASE("finite-degree PGF") {
  const Pgf f = finite_degree_pgf(ModelParams::alpha_model(3, 0.0, 1.0));
  CHECK(f(1.0) == 1.0);
  CHECK(f(0.0) == doctest::Approx(0.25).epsilon(1e-14));
  for (double s : {0.1, 0.3, 0.6, 0.9}) {
    CHECK(f(s) == doctest::Approx((1 + s) * (1 + s) / 4).epsilon(1e-13));
  }
  CHECK(f.mean() == doctest::Approx(1.0));

  // f'(1) by central difference equals the mean degree c.
  for (double alpha : {0.0, 1.0, 2.0}) {
    const Pgf g = finite_degree_pgf(ModelParams::alpha_model(1000, alpha, 2.0));
    const double h = 1e-6;
    const double slope = (g(1.0 + h) - g(1.0 - h)) / (2 * h);
    CHECK(std::abs(slope - 2.0) < 1e-6);
    CHECK(g.mean() == doctest::Approx(2.0).epsilon(1e-12));
  }
  const Pgf p = Pgf::poisson(2.0);
  CHECK(std::abs((p(1.0 + 1e-6) - p(1.0 - 1e-6)) / 2e-6 - 2.0) < 1e-6);
}

TEST_CASE("PGFs are convex and non-decreasing on [0, 1]") {
  const Pgf f = finite_degree_pgf(ModelParams::alpha_model(500, 1.0, 2.0));
  double prev = f(0.0);
  double prev_slope = 0.0;
  CHECK(prev >= 0.0);
  for (int i = 1; i <= 100; ++i) {
    const double s = i / 100.0;
    const double v = f(s);
    const double slope = (v - prev) * 100.0;
    CHECK(v >= prev);
    CHECK(slope >= prev_slope - 1e-9);
    prev = v;
    prev_slope = slope;
  }
}

TEST_CASE("finite-n extinction approaches the Poisson limit") {
  const double q_limit = 1.0 - kRho2;
  double previous_gap = 1.0;
  for (Vertex n : {100u, 1000u, 10000u, 100000u, 1000000u}) {
    const GWResult r = extinction(finite_degree_pgf(ModelParams::alpha_model(n, 1.0, 2.0)));
    const double gap = std::abs(r.extinction_q - q_limit);
    CHECK(gap < previous_gap);
    CHECK(r.residual <= 1e-12);
    previous_gap = gap;
  }
  CHECK(previous_gap < 1e-2);
}
