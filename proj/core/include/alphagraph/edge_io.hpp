#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "alphagraph/graph.hpp"
#include "alphagraph/sampler.hpp"

namespace alphagraph {

/// Values carried by the "# alphagraph v1 n=<n> alpha=<a> c=<c> seed=<s>" header.
struct EdgeListHeader {
  Vertex n = 0;
  std::string alpha = "1";
  double c = 0.0;
  std::uint64_t seed = 0;

  static EdgeListHeader for_model(const ModelParams& params);
};

std::string format_header(const EdgeListHeader& header);
EdgeListHeader parse_header(const std::string& line);

/// Header line, then one "u v" pair per line, u < v, sorted.
void write_edge_list(std::ostream& out, const EdgeListHeader& header, const Graph& graph);

/// As write_edge_list with a third column: activation with 17 significant digits.
void write_filtration(std::ostream& out, const EdgeListHeader& header, const Filtration& filtration);

struct EdgeListFile {
  EdgeListHeader header;
  Graph graph;
};

struct FiltrationFile {
  EdgeListHeader header;
  Filtration filtration;
};

/// Throws std::runtime_error on malformed input (with the offending line number).
EdgeListFile read_edge_list(std::istream& in);
FiltrationFile read_filtration(std::istream& in);

}  // namespace alphagraph
