#include "alphagraph/kernel.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace alphagraph {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string shortest(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

// Parses "k1=v1,k2=v2" into values for the expected keys, in order.
std::vector<double> parse_params(std::string_view body, std::initializer_list<std::string_view> keys,
                                 std::initializer_list<double> defaults) {
  std::vector<double> out(defaults);
  std::vector<bool> seen(keys.size(), false);
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string_view item = trim(body.substr(0, comma));
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("kernel parameter '" + std::string(item) + "' is not key=value");
    }
    const std::string_view key = trim(item.substr(0, eq));
    std::size_t i = 0;
    for (auto k : keys) {
      if (k == key) break;
      ++i;
    }
    if (i == keys.size()) {
      throw std::invalid_argument("unknown kernel parameter '" + std::string(key) + "'");
    }
    out[i] = parse_real(item.substr(eq + 1));
    seen[i] = true;
  }
  std::size_t i = 0;
  for (double d : defaults) {
    if (std::isnan(d) && !seen[i]) {
      throw std::invalid_argument("missing kernel parameter '" + std::string(*(keys.begin() + i)) + "'");
    }
    ++i;
  }
  return out;
}

}  // namespace

double parse_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF" || text == "∞") {
    return std::numeric_limits<double>::infinity();
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string format_alpha(double alpha) { return shortest(alpha); }

KernelSpec KernelSpec::power(double alpha) {
  if (std::isinf(alpha) && alpha > 0) return KernelSpec(NearestNeighbor{});
  return KernelSpec(PowerLaw{alpha});
}

KernelSpec KernelSpec::parse(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  const std::string_view name = trim(text.substr(0, colon));
  const std::string_view body =
      colon == std::string_view::npos ? std::string_view{} : trim(text.substr(colon + 1));
  constexpr double kRequired = std::numeric_limits<double>::quiet_NaN();

  if (name == "nn") {
    if (!body.empty()) throw std::invalid_argument("kernel 'nn' takes no parameters");
    return KernelSpec(NearestNeighbor{});
  }
  if (name == "power") {
    const auto v = parse_params(body, {"alpha"}, {kRequired});
    return power(v[0]);
  }
  if (name == "powerlog") {
    const auto v = parse_params(body, {"alpha", "beta"}, {1.0, kRequired});
    return KernelSpec(PowerLogLaw{v[0], v[1]});
  }
  if (name == "custom") {
    if (body.empty()) throw std::invalid_argument("kernel 'custom' needs a path: custom:<path>");
    return load_custom(std::string(body));
  }
  throw std::invalid_argument("unknown kernel '" + std::string(text) +
                              "' (expected power:alpha=A, powerlog:alpha=A,beta=B, nn, custom:<path>)");
}

KernelSpec KernelSpec::load_custom(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open kernel table '" + path + "'");
  CustomKernel table;
  table.source = path;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    std::istringstream fields{std::string(view)};
    std::string d_text;
    std::string f_text;
    if (!(fields >> d_text >> f_text)) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected 'd f(d)'");
    }
    const double d = parse_real(d_text);
    if (d != static_cast<double>(table.values.size() + 1)) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": distances must be listed as 1, 2, 3, ... in order");
    }
    table.values.push_back(parse_real(f_text));
  }
  if (table.values.empty()) throw std::invalid_argument("kernel table '" + path + "' is empty");
  return KernelSpec(std::move(table));
}

double KernelSpec::operator()(Vertex d) const {
  return std::visit(
      [d](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        const double x = static_cast<double>(d);
        if constexpr (std::is_same_v<K, PowerLaw>) {
          return k.alpha == 0.0 ? 1.0 : std::pow(x, -k.alpha);
        } else if constexpr (std::is_same_v<K, PowerLogLaw>) {
          const double base = k.alpha == 0.0 ? 1.0 : std::pow(x, -k.alpha);
          const double log_x = std::log(x);
          return log_x < 1.0 ? base : base * std::pow(log_x, -k.beta);
        } else if constexpr (std::is_same_v<K, NearestNeighbor>) {
          return d == 1 ? 1.0 : 0.0;
        } else {
          if (d == 0 || d > k.values.size()) {
            throw std::out_of_range("custom kernel '" + k.source + "' has no value at distance " +
                                    std::to_string(d));
          }
          return k.values[d - 1];
        }
      },
      variant_);
}

void KernelSpec::validate(Vertex max_distance) const {
  std::visit(
      [max_distance](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PowerLaw>) {
          if (!(k.alpha >= 0.0) || std::isinf(k.alpha)) {
            throw std::invalid_argument("power kernel needs a finite alpha >= 0 (use 'nn' for infinity)");
          }
        } else if constexpr (std::is_same_v<K, PowerLogLaw>) {
          if (!(k.alpha >= 0.0) || std::isinf(k.alpha) || !(k.beta >= 0.0) || std::isinf(k.beta)) {
            throw std::invalid_argument("powerlog kernel needs finite alpha >= 0 and beta >= 0");
          }
        } else if constexpr (std::is_same_v<K, CustomKernel>) {
          if (k.values.size() < max_distance) {
            throw std::invalid_argument("custom kernel '" + k.source + "' covers distances 1.." +
                                        std::to_string(k.values.size()) + " but " +
                                        std::to_string(max_distance) + " are needed");
          }
          double previous = std::numeric_limits<double>::infinity();
          for (Vertex d = 1; d <= max_distance; ++d) {
            const double f = k.values[d - 1];
            if (!(f > 0.0) || !std::isfinite(f)) {
              throw std::invalid_argument("custom kernel value at distance " + std::to_string(d) +
                                          " is not positive and finite");
            }
            if (f > previous) {
              throw std::invalid_argument("custom kernel increases at distance " + std::to_string(d));
            }
            previous = f;
          }
        }
      },
      variant_);
}

double KernelSpec::alpha() const {
  return std::visit(
      [](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PowerLaw> || std::is_same_v<K, PowerLogLaw>) {
          return k.alpha;
        } else if constexpr (std::is_same_v<K, NearestNeighbor>) {
          return std::numeric_limits<double>::infinity();
        } else {
          return std::numeric_limits<double>::quiet_NaN();
        }
      },
      variant_);
}

std::string KernelSpec::to_string() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PowerLaw>) {
          return "power:alpha=" + shortest(k.alpha);
        } else if constexpr (std::is_same_v<K, PowerLogLaw>) {
          return "powerlog:alpha=" + shortest(k.alpha) + ",beta=" + shortest(k.beta);
        } else if constexpr (std::is_same_v<K, NearestNeighbor>) {
          return "nn";
        } else {
          return "custom:" + k.source;
        }
      },
      variant_);
}

bool operator==(const PowerLaw& a, const PowerLaw& b) { return a.alpha == b.alpha; }
bool operator==(const PowerLogLaw& a, const PowerLogLaw& b) {
  return a.alpha == b.alpha && a.beta == b.beta;
}
bool operator==(const NearestNeighbor&, const NearestNeighbor&) { return true; }
bool operator==(const CustomKernel& a, const CustomKernel& b) { return a.values == b.values; }
bool operator==(const KernelSpec& a, const KernelSpec& b) { return a.variant_ == b.variant_; }

}  // namespace alphagraph
