#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>

#include "alphagraph/components.hpp"
#include "alphagraph/experiments.hpp"

namespace alphagraph {

/// Decimal with 17 significant digits; "nan"/"inf" for non-finite values.
std::string format_real(double x);

/// Writes via `fill` to "<path>.tmp.<pid>" and renames over `path`.
/// Throws std::runtime_error on I/O failure; the temporary is removed.
void write_atomically(const std::string& path, const std::function<void(std::ostream&)>& fill);

/// Header plus one row per cell; columns are the SweepRecord field names.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// JSON object describing the spec (grids, replicates, omega rule, kernel, seed).
std::string sweep_spec_json(const SweepSpec& spec);

/// "seed,n,alpha,c,largest,second_largest,fraction,n_components"
void write_components_csv_header(std::ostream& out);
void write_components_csv_row(std::ostream& out, std::uint64_t seed, Vertex n, const std::string& alpha,
                              double c, const ComponentSummary& summary);

void write_block_csv(std::ostream& out, std::span<const BlockStats> rows);
void write_triangle_csv(std::ostream& out, std::span<const TriangleStats> rows);
void write_sprinkling_csv(std::ostream& out, const SprinklingResult& result);

}  // namespace alphagraph
