#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace longmem {

// Cumulative profile w*_i = sum_{j<=i} w_j of the raw series. No mean
// subtraction: the per-window linear detrend absorbs any mean drift.
std::vector<double> dfa_profile(std::span<const double> w);

// Mean detrended standard deviation F(m): the profile is split into
// floor(N/m) non-overlapping windows (trailing remainder discarded), each
// window gets an OLS line on positions 1..m, and F_j(m) is the RMS residual.
double dfa_fluctuation(std::span<const double> w, std::size_t m);

struct DfaResult {
  std::vector<std::size_t> m_grid;
  std::vector<double> f;  // F(m) per grid entry
  std::size_t m_min = 0;
  double h_hat = 0.0;  // OLS slope of log10 F on log10 m for m >= m_min
  double fit_stderr = 0.0;
};

// 24 log-spaced window lengths in [10, n/4], deduplicated.
std::vector<std::size_t> default_dfa_grid(std::size_t n);

// Fit stage alone, for callers that already hold (m, F) pairs.
DfaResult dfa_fit(std::span<const std::size_t> m_grid, std::span<const double> f,
                  std::size_t m_min);

DfaResult dfa_estimate(std::span<const double> w, std::span<const std::size_t> m_grid,
                       std::size_t m_min = 100);
DfaResult dfa_estimate(std::span<const double> w, std::size_t m_min = 100);

}  // namespace longmem
