#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace alphagraph {

using Vertex = std::uint32_t;

/// f(d) = d^-alpha.
struct PowerLaw {
  double alpha = 1.0;
};

/// f(d) = d^-alpha (ln d)^-beta for ln d >= 1, and d^-alpha below that
/// (d = 1, 2), where the logarithmic factor would be zero or would make
/// f increase.
struct PowerLogLaw {
  double alpha = 1.0;
  double beta = 1.0;
};

/// The alpha = infinity limit: only ring neighbours, each with weight 1/2.
struct NearestNeighbor {};

/// Tabulated f. values[d - 1] = f(d).
struct CustomKernel {
  std::vector<double> values;
  std::string source;
};

/// Distance kernel f of the generalized model p_{u,v} = c f(d(u,v)) / h_{f,n}.
class KernelSpec {
 public:
  using Variant = std::variant<PowerLaw, PowerLogLaw, NearestNeighbor, CustomKernel>;

  KernelSpec() : variant_(PowerLaw{}) {}
  KernelSpec(PowerLaw k) : variant_(k) {}  // NOLINT(google-explicit-constructor)
  KernelSpec(PowerLogLaw k) : variant_(k) {}  // NOLINT(google-explicit-constructor)
  KernelSpec(NearestNeighbor k) : variant_(k) {}  // NOLINT(google-explicit-constructor)
  KernelSpec(CustomKernel k) : variant_(std::move(k)) {}  // NOLINT(google-explicit-constructor)

  /// Power law with the given exponent; alpha = +inf maps to NearestNeighbor.
  static KernelSpec power(double alpha);

  /// Parses "power:alpha=1.0", "powerlog:alpha=1.0,beta=1.0", "nn" or
  /// "custom:<path>". The custom file holds "d f(d)" pairs, one per line.
  /// Throws std::invalid_argument on malformed input.
  static KernelSpec parse(std::string_view text);

  /// Reads a custom kernel table from `path`.
  static KernelSpec load_custom(const std::string& path);

  /// Kernel value at distance d >= 1. For NearestNeighbor this is 1 at d = 1
  /// and 0 elsewhere.
  [[nodiscard]] double operator()(Vertex d) const;

  /// Checks positivity and monotonicity on 1..max_distance.
  /// Throws std::invalid_argument if f is undefined, non-positive, or increasing.
  void validate(Vertex max_distance) const;

  /// Exponent of the leading power; +inf for NearestNeighbor, NaN for custom tables.
  [[nodiscard]] double alpha() const;

  [[nodiscard]] bool is_nearest_neighbor() const {
    return std::holds_alternative<NearestNeighbor>(variant_);
  }

  /// Textual form accepted by parse().
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] const Variant& variant() const { return variant_; }

  friend bool operator==(const KernelSpec&, const KernelSpec&);

 private:
  Variant variant_;
};

bool operator==(const PowerLaw&, const PowerLaw&);
bool operator==(const PowerLogLaw&, const PowerLogLaw&);
bool operator==(const NearestNeighbor&, const NearestNeighbor&);
bool operator==(const CustomKernel&, const CustomKernel&);

/// Formats alpha the way files and flags spell it ("inf" for infinity).
std::string format_alpha(double alpha);

/// Parses a real number, accepting "inf"/"infinity" and scientific notation.
double parse_real(std::string_view text);

}  // namespace alphagraph
