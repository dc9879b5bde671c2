#include "doctest.h"

#include <limits>
#include <stdexcept>
#include <cmath>
#include <sstream>

#include "alphagraph/branching.hpp"
#include "alphagraph/experiments.hpp"
#include "alphagraph/report.hpp"

using namespace alphagraph;

namespace {

SweepSpec small_spec() {
  SweepSpec spec;
  spec.alphas = {0.0, 1.0, 2.0};
  spec.cs = {0.5, 2.0};
  spec.ns = {500, 1000};
  spec.replicates = 3;
  spec.master_seed = 2024;
  return spec;
}

bool same_record(const SweepRecord& a, const SweepRecord& b) {
  return a.alpha == b.alpha && a.c == b.c && a.n == b.n && a.mean_fraction == b.mean_fraction &&
         a.std_fraction == b.std_fraction && a.mean_second_fraction == b.mean_second_fraction &&
         a.mean_b_fraction == b.mean_b_fraction && a.error == b.error;
}

}  // namespace

TEST_CASE("triangle statistics on fixed graphs") {
  const auto tri = triangle_stats(Graph(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(tri.triangles == 1);
  CHECK(tri.mean_K == doctest::Approx(1.0));
  CHECK(tri.mean_degree == doctest::Approx(2.0));
  CHECK(tri.mean_second_neighbors == doctest::Approx(0.0));

  const auto path = triangle_stats(Graph(4, {{0, 1}, {1, 2}, {2, 3}}));
  CHECK(path.triangles == 0);
  CHECK(path.mean_K == 0.0);
  CHECK(path.mean_second_neighbors == doctest::Approx(1.0));

  const auto k4 = triangle_stats(Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  CHECK(k4.triangles == 4);
  CHECK(k4.mean_K == doctest::Approx(3.0));
}

TEST_CASE("block statistics") {
  const auto empty = block_stats(ModelParams::alpha_model(1024, 2.0, 0.0, 1), 16, 3);
  CHECK(empty.adjacent_connect_freq == 0.0);
  CHECK(empty.nonadjacent_connect_freq == 0.0);
  CHECK(empty.random_nonadjacent_freq == 0.0);
  CHECK(empty.samples == 3);

  const auto params = ModelParams::alpha_model(1000, 2.0, 1.0, 1);
  CHECK_THROWS_AS(block_stats(params, 300, 1), std::invalid_argument);  // m does not divide n
  CHECK_THROWS_AS(block_stats(params, 500, 1), std::invalid_argument);  // m > n/4
  CHECK(round_down_to_multiple(1000, 300) == 900);

  // Nearest-neighbour edges only ever join adjacent blocks.
  const auto nn = block_stats(ModelParams::alpha_model(1000, std::numeric_limits<double>::infinity(), 2.0, 1), 10, 2);
  CHECK(nn.adjacent_connect_freq == 1.0);
  CHECK(nn.nonadjacent_connect_freq == 0.0);

  const Vertex ms[] = {10, 50};
  const auto both = block_stats(params, ms, 4);
  CHECK(both[1].adjacent_connect_freq == block_stats(params, 50, 4).adjacent_connect_freq);
}

TEST_CASE("sweep is reproducible and independent of worker count") {
  const SweepSpec spec = small_spec();
  const auto a = run_sweep(spec, 1);
  const auto b = run_sweep(spec, 3);
  REQUIRE(a.records.size() == spec.cell_count());
  REQUIRE(b.records.size() == spec.cell_count());
  for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(same_record(a.records[i], b.records[i]));

  CHECK(a.records[0].alpha == 0.0);
  CHECK(a.records[0].c == 0.5);
  CHECK(a.records[0].n == 500);
  CHECK(a.records[1].n == 1000);
  CHECK(a.records[2].c == 2.0);
  CHECK(a.records[4].alpha == 1.0);
  for (const auto& r : a.records) {
    CHECK(r.error.empty());
    CHECK(r.predicted_rho.has_value() == (r.alpha <= 1.0));
    if (r.predicted_rho) CHECK(*r.predicted_rho == rho_limit(r.c));
    CHECK(r.min_fraction <= r.mean_fraction);
    CHECK(r.mean_fraction <= r.max_fraction);
  }
}

TEST_CASE("sweep reports failing cells and continues") {
  SweepSpec spec = small_spec();
  spec.alphas = {-1.0, 1.0};
  const auto result = run_sweep(spec, 1);
  REQUIRE(result.records.size() == 8);
  CHECK_FALSE(result.records[0].error.empty());
  CHECK(std::isnan(result.records[0].mean_fraction));
  CHECK(result.records[7].error.empty());

  SweepSpec bad = small_spec();
  bad.replicates = 0;
  CHECK_THROWS_AS(run_sweep(bad), std::invalid_argument);
}

TEST_CASE("probe of the alpha = 0 kernel reproduces the sweep") {
  SweepSpec spec = small_spec();
  spec.alphas = {0.0};
  const auto sweep = run_sweep(spec, 1);
  const auto probe = conjecture_probe(KernelSpec::power(0.0), spec.ns, spec.cs, spec.replicates, spec.master_seed);
  REQUIRE(probe.records.size() == sweep.records.size());
  for (std::size_t i = 0; i < probe.records.size(); ++i) CHECK(same_record(probe.records[i], sweep.records[i]));
}

TEST_CASE("trend correlation") {
  std::vector<SweepRecord> rows(3);
  rows[0].n = 100;
  rows[0].mean_fraction = 0.5;
  rows[1].n = 1000;
  rows[1].mean_fraction = 0.4;
  rows[2].n = 10000;
  rows[2].mean_fraction = 0.3;
  CHECK(trend_correlation(rows) == doctest::Approx(-1.0));
}

TEST_CASE("sprinkling") {
  const KernelSpec kernel = KernelSpec::power(1.0);
  CHECK_THROWS_AS(sprinkling_experiment(1000, kernel, 1.0, 0.1, 10, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(sprinkling_experiment(1000, kernel, 2.0, -0.1, 10, 1, 1), std::invalid_argument);

  const auto zero = sprinkling_experiment(3000, kernel, 2.0, 0.0, 20, 5, 3);
  for (const auto& r : zero.replicates) {
    CHECK(r.merged == r.merged_before);
    CHECK(r.fraction_after == r.fraction_before);
    CHECK(r.nested);
  }

  const auto res = sprinkling_experiment(3000, kernel, 2.0, 0.5, 20, 5, 3, 2);
  CHECK(res.nested_fraction() == 1.0);
  for (const auto& r : res.replicates) CHECK(r.fraction_after >= r.fraction_before);
  CHECK(res.merged_fraction() >= res.merged_before_fraction());

  // An empty B_omega counts as merged.
  const auto huge_omega = sprinkling_experiment(500, kernel, 1.5, 0.1, 501, 3, 3);
  CHECK(huge_omega.merged_fraction() == 1.0);
  CHECK(huge_omega.mean_b_fraction() == 0.0);
}

TEST_CASE("sweep csv layout") {
  SweepSpec spec = small_spec();
  spec.alphas = {1.0};
  spec.cs = {1.0};
  spec.ns = {200};
  std::ostringstream out;
  write_sweep_csv(out, run_sweep(spec));
  const std::string text = out.str();
  CHECK(text.rfind("alpha,c,n,kernel,mean_fraction,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}
