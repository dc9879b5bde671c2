#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "alphagraph/branching.hpp"
#include "alphagraph/components.hpp"
#include "alphagraph/edge_io.hpp"
#include "alphagraph/experiments.hpp"
#include "alphagraph/parallel.hpp"
#include "alphagraph/report.hpp"
#include "alphagraph/sampler.hpp"
#include "alphagraph/stats.hpp"

using namespace alphagraph;
using nlohmann::json;

namespace {

// Bad flag values found after parsing; reported like parse errors (exit 2).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Vertex parse_n(const std::string& text) {
  double value = 0.0;
  try {
    value = parse_real(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--n: not a number: '" + text + "'");
  }
  if (!(value >= 2.0) || value > 4294967295.0 || value != std::floor(value)) {
    throw UsageError("--n must be an integer in [2, 2^32), got '" + text + "'");
  }
  return static_cast<Vertex>(value);
}

double parse_flag_real(const std::string& flag, const std::string& text) {
  try {
    return parse_real(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(flag + ": not a number: '" + text + "'");
  }
}

json real_json(double x) { return std::isfinite(x) ? json(x) : json(format_alpha(x)); }

// Shortest round-trip form, for summary lines.
std::string brief(double x) { return format_alpha(x); }

// Model flags shared by the sampling commands.
struct ModelFlags {
  std::string n = "1000";
  std::string alpha = "1";
  std::string kernel;
  double c = 1.0;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app, bool with_c = true) {
    app->add_option("--n", n, "number of vertices (scientific notation allowed)")->capture_default_str();
    auto* a = app->add_option("--alpha", alpha, "power-law exponent; 'inf' for nearest-neighbour")
                  ->capture_default_str();
    auto* k = app->add_option("--kernel", kernel,
                              "kernel: power:alpha=A, powerlog:alpha=A,beta=B, nn or custom:<path>");
    a->excludes(k);
    if (with_c) app->add_option("--c", c, "expected degree parameter")->capture_default_str();
    app->add_option("--seed", seed, "master seed")->capture_default_str();
  }

  [[nodiscard]] KernelSpec kernel_spec() const {
    if (!kernel.empty()) {
      try {
        return KernelSpec::parse(kernel);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--kernel: ") + e.what());
      }
    }
    return KernelSpec::power(parse_flag_real("--alpha", alpha));
  }

  [[nodiscard]] ModelParams params() const {
    ModelParams p{parse_n(n), c, kernel_spec(), seed};
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return p;
  }

  [[nodiscard]] json to_json() const {
    const KernelSpec k = kernel_spec();
    return {{"n", parse_n(n)}, {"kernel", k.to_string()}, {"alpha", real_json(k.alpha())}, {"c", c},
            {"seed", seed}};
  }
};

struct Common {
  std::string out;
  unsigned workers = default_workers();
};

unsigned effective_workers(unsigned flag) {
  if (const char* env = std::getenv("ALPHAGRAPH_WORKERS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (*end != '\0' || value == 0) throw UsageError("ALPHAGRAPH_WORKERS must be a positive integer");
    return static_cast<unsigned>(value);
  }
  if (flag == 0) throw UsageError("--workers must be positive");
  return flag;
}

void add_common(CLI::App* app, Common& common, bool out_required) {
  auto* out = app->add_option("--out", common.out, "output path (written atomically)");
  if (out_required) out->required();
  app->add_option("--workers", common.workers, "worker threads (ALPHAGRAPH_WORKERS overrides)")
      ->capture_default_str();
}

OmegaRule parse_omega(const std::string& text) {
  try {
    return OmegaRule::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--omega: ") + e.what());
  }
}

int positive_reps(int reps) {
  if (reps < 1) throw UsageError("--reps must be at least 1");
  return reps;
}

void write_sidecar(const std::string& out, const json& config) {
  write_atomically(out + ".json", [&](std::ostream& os) { os << config.dump(2) << '\n'; });
}

// ---------------------------------------------------------------- sample

struct SampleCmd {
  ModelFlags model;
  Common common;
  bool filtration = false;

  void attach(CLI::App* app) {
    model.add_to(app);
    add_common(app, common, true);
    app->add_flag("--filtration", filtration, "write activation levels (c is taken as c_max)");
  }

  int run() const {
    const ModelParams params = model.params();
    json config = model.to_json();
    config["command"] = "sample";
    config["filtration"] = filtration;
    const Model m(params);
    const Stream stream = replicate_stream(params.seed, 0);
    const EdgeListHeader header = EdgeListHeader::for_model(params);
    std::size_t edges = 0;
    if (filtration) {
      const Filtration f = sample_filtration(m, stream);
      edges = f.edges().size();
      write_atomically(common.out, [&](std::ostream& os) {
        write_filtration(os, header, f);
        os << "# config " << config.dump() << '\n';
      });
    } else {
      const Graph g = sample_fast(m, stream);
      edges = g.edge_count();
      write_atomically(common.out, [&](std::ostream& os) {
        write_edge_list(os, header, g);
        os << "# config " << config.dump() << '\n';
      });
    }
    std::cout << "sample: n=" << params.n << " edges=" << edges << " -> " << common.out << '\n';
    return 0;
  }
};

// ---------------------------------------------------------------- components

struct ComponentsCmd {
  ModelFlags model;
  Common common;
  std::string in;

  void attach(CLI::App* app) {
    model.add_to(app);
    add_common(app, common, false);
    app->add_option("--in", in, "edge-list file; otherwise a graph is sampled from the model flags");
  }

  int run() const {
    ComponentSummary summary;
    EdgeListHeader header;
    json config;
    config["command"] = "components";
    if (!in.empty()) {
      std::ifstream file(in);
      if (!file) throw std::runtime_error("cannot open '" + in + "'");
      EdgeListFile parsed = read_edge_list(file);
      header = parsed.header;
      summary = components(parsed.graph);
      config["in"] = in;
    } else {
      const ModelParams params = model.params();
      header = EdgeListHeader::for_model(params);
      summary = components(sample_fast(Model(params), replicate_stream(params.seed, 0)));
      config.update(model.to_json());
    }
    if (!common.out.empty()) {
      write_atomically(common.out, [&](std::ostream& os) {
        write_components_csv_header(os);
        write_components_csv_row(os, header.seed, header.n, header.alpha, header.c, summary);
      });
      write_sidecar(common.out, config);
    }
    std::cout << "components: n=" << summary.n << " largest=" << summary.largest
              << " second_largest=" << summary.second_largest << " fraction=" << brief(summary.fraction)
              << " n_components=" << summary.component_count() << '\n';
    return 0;
  }
};

// ---------------------------------------------------------------- gw-rho

struct GwRhoCmd {
  ModelFlags model;
  Common common;
  double tolerance = kDefaultGwTolerance;
  bool finite = false;

  void attach(CLI::App* app) {
    model.add_to(app, false);
    app->add_option("--c", model.c, "offspring mean parameter")->required();
    app->add_option("--tol", tolerance, "fixed-point tolerance")->capture_default_str();
    add_common(app, common, false);
    finite_option_ = app->get_option("--n");
  }

  int run() {
    finite = finite_option_->count() > 0;
    if (!(tolerance > 0.0)) throw UsageError("--tol must be positive");
    json config = {{"command", "gw-rho"}, {"c", model.c}, {"tolerance", tolerance}};
    Pgf pgf = Pgf::poisson(0.0);
    if (finite) {
      pgf = Pgf::finite_degree(Model(model.params()));
      config.update(model.to_json());
    } else {
      if (!(model.c >= 0.0) || !std::isfinite(model.c)) throw UsageError("--c must be finite and >= 0");
      pgf = Pgf::poisson(model.c);
    }
    const GWResult r = extinction(pgf, tolerance);
    const json result = {{"q", r.extinction_q},     {"rho", r.survival_rho}, {"iterations", r.iterations},
                         {"residual", r.residual},  {"pgf", pgf.describe()}, {"config", config}};
    if (!common.out.empty()) {
      write_atomically(common.out, [&](std::ostream& os) { os << result.dump(2) << '\n'; });
    }
    std::cout << result.dump() << '\n';
    return 0;
  }

  CLI::Option* finite_option_ = nullptr;
};

// ---------------------------------------------------------------- sweep / probe

std::vector<double> parse_reals(const std::string& flag, const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& s : items) out.push_back(parse_flag_real(flag, s));
  return out;
}

std::vector<Vertex> parse_ns(const std::vector<std::string>& items) {
  std::vector<Vertex> out;
  for (const auto& s : items) out.push_back(parse_n(s));
  return out;
}

int finish_sweep(const SweepSpec& spec, const SweepResult& result, const std::string& command,
                 const Common& common, unsigned workers) {
  json sidecar = {{"command", command}, {"spec", json::parse(sweep_spec_json(spec))}, {"workers", workers}};
  write_atomically(common.out, [&](std::ostream& os) { write_sweep_csv(os, result); });
  write_sidecar(common.out, sidecar);
  std::size_t failed = 0;
  for (const auto& r : result.records) failed += r.error.empty() ? 0 : 1;
  std::cout << command << ": " << result.records.size() << " cells, " << failed << " failed -> " << common.out
            << '\n';
  return failed == 0 ? 0 : 1;
}

struct SweepCmd {
  Common common;
  std::vector<std::string> alphas{"0", "1"};
  std::vector<std::string> cs{"2"};
  std::vector<std::string> ns{"1e4"};
  int reps = 10;
  std::uint64_t seed = 0;
  std::string omega = "log4";
  std::string family = "power";

  void attach(CLI::App* app) {
    app->add_option("--alphas", alphas, "comma-separated exponents ('inf' allowed)")->delimiter(',');
    app->add_option("--cs", cs, "comma-separated c values")->delimiter(',');
    app->add_option("--ns", ns, "comma-separated vertex counts")->delimiter(',');
    app->add_option("--reps", reps, "replicates per cell")->capture_default_str();
    app->add_option("--seed", seed, "master seed")->capture_default_str();
    app->add_option("--omega", omega, "cutoff rule: log4, loglog or an integer")->capture_default_str();
    app->add_option("--family", family, "kernel family: power or powerlog:beta=B")->capture_default_str();
    add_common(app, common, true);
  }

  [[nodiscard]] KernelFamily kernel_family() const {
    if (family == "power") return KernelFamily::power();
    const std::string prefix = "powerlog:beta=";
    if (family.rfind(prefix, 0) == 0) {
      return KernelFamily::power_log(parse_flag_real("--family", family.substr(prefix.size())));
    }
    throw UsageError("--family must be 'power' or 'powerlog:beta=B', got '" + family + "'");
  }

  int run() const {
    SweepSpec spec;
    spec.alphas = parse_reals("--alphas", alphas);
    spec.cs = parse_reals("--cs", cs);
    spec.ns = parse_ns(ns);
    spec.replicates = positive_reps(reps);
    spec.omega_rule = parse_omega(omega);
    spec.kernel = kernel_family();
    spec.master_seed = seed;
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const unsigned workers = effective_workers(common.workers);
    return finish_sweep(spec, run_sweep(spec, workers), "sweep", common, workers);
  }
};

struct ProbeCmd {
  Common common;
  std::string kernel;
  std::vector<std::string> cs{"2"};
  std::vector<std::string> ns{"1e4", "1e5"};
  int reps = 10;
  std::uint64_t seed = 0;
  std::string omega = "log4";

  void attach(CLI::App* app) {
    app->add_option("--kernel", kernel, "kernel: power:alpha=A, powerlog:alpha=A,beta=B, nn or custom:<path>")
        ->required();
    app->add_option("--cs", cs, "comma-separated c values")->delimiter(',');
    app->add_option("--ns", ns, "comma-separated vertex counts")->delimiter(',');
    app->add_option("--reps", reps, "replicates per cell")->capture_default_str();
    app->add_option("--seed", seed, "master seed")->capture_default_str();
    app->add_option("--omega", omega, "cutoff rule: log4, loglog or an integer")->capture_default_str();
    add_common(app, common, true);
  }

  int run() const {
    ModelFlags flags;
    flags.kernel = kernel;
    SweepSpec spec;
    spec.alphas = {flags.kernel_spec().alpha()};
    spec.cs = parse_reals("--cs", cs);
    spec.ns = parse_ns(ns);
    spec.replicates = positive_reps(reps);
    spec.omega_rule = parse_omega(omega);
    spec.kernel = KernelFamily::fixed_kernel(flags.kernel_spec());
    spec.master_seed = seed;
    try {
      spec.validate();
      for (Vertex n : spec.ns) spec.kernel.fixed.validate(n / 2);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const unsigned workers = effective_workers(common.workers);
    const SweepResult result =
        conjecture_probe(spec.kernel.fixed, spec.ns, spec.cs, spec.replicates, seed, workers, spec.omega_rule);
    return finish_sweep(spec, result, "probe", common, workers);
  }
};

// ---------------------------------------------------------------- blocks

struct BlocksCmd {
  ModelFlags model;
  Common common;
  std::vector<Vertex> ms{16, 32, 64, 128, 256, 512};
  int reps = 100;

  void attach(CLI::App* app) {
    model.add_to(app);
    app->add_option("--m", ms, "comma-separated block sizes")->delimiter(',');
    app->add_option("--reps", reps, "graphs to sample")->capture_default_str();
    add_common(app, common, true);
  }

  int run() const {
    ModelParams params = model.params();
    const Vertex requested = params.n;
    std::uint64_t step = 1;
    for (Vertex m : ms) {
      if (m == 0) throw UsageError("--m values must be positive");
      step = std::lcm(step, static_cast<std::uint64_t>(m));
      if (step > requested) throw UsageError("block sizes need n to be a multiple of " + std::to_string(step));
    }
    params.n = round_down_to_multiple(requested, static_cast<Vertex>(step));
    for (Vertex m : ms) {
      if (m > params.n / 4) {
        throw UsageError("block size " + std::to_string(m) + " exceeds n/4 = " + std::to_string(params.n / 4));
      }
    }
    try {
      params.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const unsigned workers = effective_workers(common.workers);
    const auto rows = block_stats(params, ms, positive_reps(reps), workers);
    json config = model.to_json();
    config["command"] = "blocks";
    config["n_requested"] = requested;
    config["n"] = params.n;
    config["m"] = ms;
    config["reps"] = reps;
    write_atomically(common.out, [&](std::ostream& os) { write_block_csv(os, rows); });
    write_sidecar(common.out, config);
    std::cout << "blocks: n=" << params.n << " (requested " << requested << ") " << rows.size() << " block sizes -> "
              << common.out << '\n';
    return 0;
  }
};

// ---------------------------------------------------------------- triangles

struct TrianglesCmd {
  ModelFlags model;
  Common common;
  int reps = 10;

  void attach(CLI::App* app) {
    model.add_to(app);
    app->add_option("--reps", reps, "graphs to sample")->capture_default_str();
    add_common(app, common, true);
  }

  int run() const {
    const ModelParams params = model.params();
    const int r = positive_reps(reps);
    const unsigned workers = effective_workers(common.workers);
    const auto rows = triangle_replicates(params, r, workers);
    json config = model.to_json();
    config["command"] = "triangles";
    config["reps"] = r;
    write_atomically(common.out, [&](std::ostream& os) { write_triangle_csv(os, rows); });
    write_sidecar(common.out, config);
    std::vector<double> k;
    for (const auto& row : rows) k.push_back(row.mean_K);
    std::cout << "triangles: mean_K=" << brief(stats::mean(k)) << " over " << r << " graphs -> "
              << common.out << '\n';
    return 0;
  }
};

// ---------------------------------------------------------------- sprinkle

struct SprinkleCmd {
  ModelFlags model;
  Common common;
  double delta = 0.5;
  std::string omega = "log4";
  int reps = 20;

  void attach(CLI::App* app) {
    model.c = 1.5;
    model.add_to(app);
    app->add_option("--delta", delta, "sprinkled increment of c")->capture_default_str();
    app->add_option("--omega", omega, "cutoff rule: log4, loglog or an integer")->capture_default_str();
    app->add_option("--reps", reps, "replicates")->capture_default_str();
    add_common(app, common, true);
  }

  int run() const {
    const ModelParams params = model.params();
    if (!(params.c > 1.0)) throw UsageError("sprinkle needs --c > 1");
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw UsageError("--delta must be finite and >= 0");
    const Vertex w = parse_omega(omega)(params.n);
    const int r = positive_reps(reps);
    const unsigned workers = effective_workers(common.workers);
    const auto result = sprinkling_experiment(params.n, params.kernel, params.c, delta, w, r, params.seed, workers);
    json config = model.to_json();
    config["command"] = "sprinkle";
    config["delta"] = delta;
    config["omega_rule"] = omega;
    config["omega"] = w;
    config["reps"] = r;
    write_atomically(common.out, [&](std::ostream& os) { write_sprinkling_csv(os, result); });
    write_sidecar(common.out, config);
    std::cout << "sprinkle: merged=" << brief(result.merged_fraction())
              << " merged_before=" << brief(result.merged_before_fraction())
              << " nested=" << brief(result.nested_fraction()) << " omega=" << w << " -> " << common.out
              << '\n';
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random graphs on a ring with distance-dependent edge probabilities", "alphagraph"};
  app.require_subcommand(1);

  SampleCmd sample;
  ComponentsCmd comps;
  GwRhoCmd gw;
  SweepCmd sweep;
  BlocksCmd blocks;
  TrianglesCmd triangles;
  SprinkleCmd sprinkle;
  ProbeCmd probe;

  auto* sample_app = app.add_subcommand("sample", "sample one graph and write its edge list");
  sample.attach(sample_app);
  auto* comps_app = app.add_subcommand("components", "connected components of one graph");
  comps.attach(comps_app);
  auto* gw_app = app.add_subcommand("gw-rho", "Galton-Watson survival probability (Poisson, or finite n with --n)");
  gw.attach(gw_app);
  auto* sweep_app = app.add_subcommand("sweep", "largest-component sweep over (alpha, c, n)");
  sweep.attach(sweep_app);
  auto* blocks_app = app.add_subcommand("blocks", "connectivity between contiguous vertex blocks");
  blocks.attach(blocks_app);
  auto* tri_app = app.add_subcommand("triangles", "triangle and second-neighbour statistics");
  triangles.attach(tri_app);
  auto* sprinkle_app = app.add_subcommand("sprinkle", "merging of large components after sprinkling");
  sprinkle.attach(sprinkle_app);
  auto* probe_app = app.add_subcommand("probe", "largest-component sweep of one fixed kernel over (n, c)");
  probe.attach(probe_app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* context = &app;
    for (const auto* sub : app.get_subcommands()) context = sub;
    std::cerr << context->help();
    return 2;
  }

  try {
    if (sample_app->parsed()) return sample.run();
    if (comps_app->parsed()) return comps.run();
    if (gw_app->parsed()) return gw.run();
    if (sweep_app->parsed()) return sweep.run();
    if (blocks_app->parsed()) return blocks.run();
    if (tri_app->parsed()) return triangles.run();
    if (sprinkle_app->parsed()) return sprinkle.run();
    if (probe_app->parsed()) return probe.run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    for (const auto* sub : app.get_subcommands()) std::cerr << sub->help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "alphagraph: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
