#include "alphagraph/edge_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace alphagraph {

namespace {

constexpr std::string_view kMagic = "# alphagraph v1";

std::string shortest(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

std::string seventeen(double x) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("edge list line " + std::to_string(line_no) + ": " + what);
}

template <typename T>
T parse_number(std::string_view text, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(line_no, "bad number '" + std::string(text) + "'");
  }
  return value;
}

// Reads the header and invokes row(fields, line_no) for every data line.
template <typename Row>
EdgeListHeader read_rows(std::istream& in, Row&& row) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("edge list is empty");
  const EdgeListHeader header = parse_header(line);
  std::size_t line_no = 1;
  std::vector<std::string_view> fields;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    fields.clear();
    std::string_view rest = line;
    while (!rest.empty()) {
      const auto start = rest.find_first_not_of(" \t\r");
      if (start == std::string_view::npos) break;
      rest.remove_prefix(start);
      const auto stop = rest.find_first_of(" \t\r");
      fields.push_back(rest.substr(0, stop));
      rest = stop == std::string_view::npos ? std::string_view{} : rest.substr(stop);
    }
    if (fields.empty()) continue;
    row(fields, line_no);
  }
  return header;
}

}  // namespace

EdgeListHeader EdgeListHeader::for_model(const ModelParams& params) {
  return EdgeListHeader{params.n, format_alpha(params.alpha()), params.c, params.seed};
}

std::string format_header(const EdgeListHeader& h) {
  return std::string(kMagic) + " n=" + std::to_string(h.n) + " alpha=" + h.alpha +
         " c=" + shortest(h.c) + " seed=" + std::to_string(h.seed);
}

EdgeListHeader parse_header(const std::string& line) {
  if (line.rfind(kMagic, 0) != 0) {
    throw std::runtime_error("missing '# alphagraph v1' header");
  }
  EdgeListHeader h;
  bool have_n = false;
  std::istringstream fields(line.substr(kMagic.size()));
  std::string token;
  while (fields >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad header field '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::string_view value = std::string_view(token).substr(eq + 1);
    if (key == "n") {
      h.n = parse_number<Vertex>(value, 1);
      have_n = true;
    } else if (key == "alpha") {
      h.alpha = std::string(value);
    } else if (key == "c") {
      h.c = parse_number<double>(value, 1);
    } else if (key == "seed") {
      h.seed = parse_number<std::uint64_t>(value, 1);
    } else {
      throw std::runtime_error("unknown header field '" + key + "'");
    }
  }
  if (!have_n) throw std::runtime_error("header has no n=");
  return h;
}

void write_edge_list(std::ostream& out, const EdgeListHeader& header, const Graph& graph) {
  out << format_header(header) << '\n';
  for (const auto& e : graph.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_filtration(std::ostream& out, const EdgeListHeader& header, const Filtration& filtration) {
  out << format_header(header) << '\n';
  std::vector<TimedEdge> edges(filtration.edges().begin(), filtration.edges().end());
  std::sort(edges.begin(), edges.end(), [](const TimedEdge& a, const TimedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (const auto& e : edges) out << e.u << ' ' << e.v << ' ' << seventeen(e.activation) << '\n';
}

EdgeListFile read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  auto header = read_rows(in, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    if (f.size() < 2) fail(line_no, "expected 'u v'");
    edges.push_back({parse_number<Vertex>(f[0], line_no), parse_number<Vertex>(f[1], line_no)});
  });
  try {
    return {header, Graph(header.n, std::move(edges))};
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("edge list: ") + e.what());
  }
}

FiltrationFile read_filtration(std::istream& in) {
  std::vector<TimedEdge> edges;
  auto header = read_rows(in, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    if (f.size() < 3) fail(line_no, "expected 'u v activation'");
    edges.push_back({parse_number<Vertex>(f[0], line_no), parse_number<Vertex>(f[1], line_no),
                     parse_number<double>(f[2], line_no)});
  });
  try {
    return {header, Filtration(header.n, header.c, std::move(edges))};
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("filtration: ") + e.what());
  }
}

}  // namespace alphagraph
