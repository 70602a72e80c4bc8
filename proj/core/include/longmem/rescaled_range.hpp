#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace longmem {

// Rescaled-range statistic Q(t,k) = R/S over the window w[t], ..., w[t+k-1]:
// R is the range of mean-adjusted partial sums over the window, S the window
// standard deviation (divisor k). Requires t + k <= N and a non-constant window.
double rescaled_range(std::span<const double> w, std::size_t t, std::size_t k);

// Range R alone over the whole series (numerator of Lo's statistic).
double partial_sum_range(std::span<const double> w);

struct PoxPlot {
  std::size_t blocks = 0;
  std::vector<std::size_t> k_grid;
  std::vector<std::vector<std::size_t>> anchors;  // kept anchor set G(k) per k
  std::vector<std::vector<double>> q_values;      // Q(t,k) per kept anchor
  std::vector<double> r_bar;                      // mean Q over G(k)
  std::size_t skipped_constant_windows = 0;
  double fit_k_min = 0.0;
  double slope_hat = 0.0;  // OLS slope of log10 r_bar on log10 k for k >= fit_k_min
  double slope_stderr = 0.0;
};

// Powers of two from 2^4 up to 2^floor(log2(n/2)).
std::vector<std::size_t> pow2_k_grid(std::size_t n);

// Anchors t = floor(N(i-1)/B) + 1 for i = 1..B, keeping t + k <= N. Constant
// windows are skipped and counted. The fit window default follows the slope
// behaviour reported above k = 10^4.
PoxPlot pox_plot(std::span<const double> w, std::size_t blocks,
                 std::span<const std::size_t> k_grid, double fit_k_min = 1e4);

// Newey-West long-run standard deviation with Bartlett weights up to lag q.
double newey_west_sigma(std::span<const double> w, std::size_t q);
double newey_west_sigma_from_gamma(std::span<const double> gamma, std::size_t q);

// Conditional Gaussian AR(1) MLE, clamped into (-1+eps, 1-eps), eps = 1e-6.
double ar1_mle(std::span<const double> w);

// Andrews' AR(1) plug-in bandwidth, floor((3N/2)^(1/3) |2 phi/(1-phi^2)|^(2/3)),
// capped at N-1. The absolute value keeps the 2/3 power real for phi < 0.
std::size_t andrews_bandwidth(double phi_hat, std::size_t n);
std::size_t andrews_bandwidth(std::span<const double> w);

struct Bandwidth {
  enum class Rule { Fixed, Andrews };
  Rule rule = Rule::Andrews;
  std::size_t q = 0;  // used iff Fixed

  static Bandwidth fixed(std::size_t q) { return {Rule::Fixed, q}; }
  static Bandwidth andrews() { return {Rule::Andrews, 0}; }
};

// Asymptotic 5% acceptance interval for V(q).
inline constexpr double kLoAcceptLow5pct = 0.809;
inline constexpr double kLoAcceptHigh5pct = 1.862;

struct LoResult {
  std::size_t q = 0;
  Bandwidth::Rule q_source = Bandwidth::Rule::Fixed;
  std::optional<double> phi_hat;  // present iff the Andrews plug-in chose q
  double sigma_hat = 0.0;
  double q_tilde = 0.0;  // R(1,N) / sigma_hat
  double v = 0.0;        // q_tilde / sqrt(N)
  bool reject_5pct = false;
};

// Lo's modified rescaled-range test for long memory.
LoResult lo_test(std::span<const double> w, Bandwidth bandwidth);

}  // namespace longmem
