#pragma once

#include <span>

namespace alphagraph::stats {

double mean(std::span<const double> xs);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double stddev(std::span<const double> xs);
double min(std::span<const double> xs);
double max(std::span<const double> xs);

/// Spearman rank correlation with average ranks for ties. NaN if either
/// side is constant or the sizes differ or are below 2.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares of y on x.
LineFit least_squares(std::span<const double> xs, std::span<const double> ys);

/// Least-squares slope of log y against log x; requires positive values.
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace alphagraph::stats
