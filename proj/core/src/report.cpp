#include "alphagraph/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <unistd.h>

namespace alphagraph {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write_atomically(const std::string& path, const std::function<void(std::ostream&)>& fill) {
  const std::string temp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + temp + "' for writing");
    try {
      fill(out);
    } catch (...) {
      out.close();
      std::filesystem::remove(temp);
      throw;
    }
    out.flush();
    if (!out) {
      std::filesystem::remove(temp);
      throw std::runtime_error("write to '" + temp + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw std::runtime_error("cannot rename '" + temp + "' to '" + path + "': " + ec.message());
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "alpha,c,n,kernel,mean_fraction,std_fraction,min_fraction,max_fraction,mean_second_fraction,"
         "mean_largest,omega,mean_b_fraction,predicted_rho,replicates,error\n";
  for (const auto& r : result.records) {
    out << format_alpha(r.alpha) << ',' << format_real(r.c) << ',' << r.n << ',' << r.kernel << ','
        << format_real(r.mean_fraction) << ',' << format_real(r.std_fraction) << ','
        << format_real(r.min_fraction) << ',' << format_real(r.max_fraction) << ','
        << format_real(r.mean_second_fraction) << ',' << format_real(r.mean_largest) << ',' << r.omega << ','
        << format_real(r.mean_b_fraction) << ',' << (r.predicted_rho ? format_real(*r.predicted_rho) : "")
        << ',' << r.replicates << ',';
    // Errors are free text; keep the row parseable.
    std::string error = r.error;
    for (char& ch : error) {
      if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
    }
    out << error << '\n';
  }
}

std::string sweep_spec_json(const SweepSpec& spec) {
  nlohmann::json j;
  nlohmann::json alphas = nlohmann::json::array();
  for (double a : spec.alphas) {
    if (std::isfinite(a)) {
      alphas.push_back(a);
    } else {
      alphas.push_back(format_alpha(a));
    }
  }
  j["alphas"] = alphas;
  j["cs"] = spec.cs;
  j["ns"] = spec.ns;
  j["replicates"] = spec.replicates;
  j["omega_rule"] = spec.omega_rule.to_string();
  j["kernel"] = spec.kernel.to_string();
  j["master_seed"] = spec.master_seed;
  return j.dump(2);
}

void write_components_csv_header(std::ostream& out) {
  out << "seed,n,alpha,c,largest,second_largest,fraction,n_components\n";
}

void write_components_csv_row(std::ostream& out, std::uint64_t seed, Vertex n, const std::string& alpha,
                              double c, const ComponentSummary& s) {
  out << seed << ',' << n << ',' << alpha << ',' << format_real(c) << ',' << s.largest << ','
      << s.second_largest << ',' << format_real(s.fraction) << ',' << s.component_count() << '\n';
}

void write_block_csv(std::ostream& out, std::span<const BlockStats> rows) {
  out << "m,n,adjacent_connect_freq,nonadjacent_connect_freq,random_nonadjacent_freq,samples\n";
  for (const auto& r : rows) {
    out << r.m << ',' << r.n << ',' << format_real(r.adjacent_connect_freq) << ','
        << format_real(r.nonadjacent_connect_freq) << ',' << format_real(r.random_nonadjacent_freq) << ','
        << r.samples << '\n';
  }
}

void write_triangle_csv(std::ostream& out, std::span<const TriangleStats> rows) {
  out << "replicate,mean_K,mean_degree,mean_second_neighbors,triangles\n";
  std::size_t i = 0;
  for (const auto& r : rows) {
    out << i++ << ',' << format_real(r.mean_K) << ',' << format_real(r.mean_degree) << ','
        << format_real(r.mean_second_neighbors) << ',' << r.triangles << '\n';
  }
}

void write_sprinkling_csv(std::ostream& out, const SprinklingResult& result) {
  out << "replicate,n,c_prime,delta,omega,b_fraction,merged_before,merged,fraction_before,fraction_after,"
         "nested\n";
  std::size_t i = 0;
  for (const auto& r : result.replicates) {
    out << i++ << ',' << result.n << ',' << format_real(result.c_prime) << ',' << format_real(result.delta)
        << ',' << result.omega << ',' << format_real(r.b_fraction) << ',' << (r.merged_before ? 1 : 0) << ','
        << (r.merged ? 1 : 0) << ',' << format_real(r.fraction_before) << ','
        << format_real(r.fraction_after) << ',' << (r.nested ? 1 : 0) << '\n';
  }
}

}  // namespace alphagraph
