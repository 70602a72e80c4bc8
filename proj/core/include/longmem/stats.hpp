#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace longmem {

// Neumaier-compensated sum; keeps rounding bounded on multi-million-element series.
double csum(std::span<const double> x);

double mean(std::span<const double> x);

// Ordinary least-squares line y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::size_t n = 0;
};

LineFit ols_line(std::span<const double> x, std::span<const double> y);

// `count` log-spaced integers covering [lo, hi], deduplicated and sorted.
std::vector<std::size_t> log_spaced_sizes(std::size_t lo, std::size_t hi, std::size_t count);

}  // namespace longmem
