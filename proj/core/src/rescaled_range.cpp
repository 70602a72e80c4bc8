#include "longmem/rescaled_range.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "longmem/errors.hpp"
#include "longmem/fft.hpp"
#include "longmem/stats.hpp"

namespace longmem {

namespace {

struct WindowRange {
  double range;
  double s2;  // divisor-k variance
};

// Single pass over the window, summing terms in index order so the result
// matches the definitional prefix sums to the last bit.
WindowRange window_range_and_variance(std::span<const double> w, std::size_t t, std::size_t k) {
  double sum = 0.0;
  for (std::size_t j = t; j < t + k; ++j) sum += w[j];
  const double wbar = sum / static_cast<double>(k);

  double running = 0.0;
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  double s2 = 0.0;
  for (std::size_t j = t; j < t + k; ++j) {
    const double dev = w[j] - wbar;
    running += dev;
    hi = std::max(hi, running);
    lo = std::min(lo, running);
    s2 += dev * dev;
  }
  return {hi - lo, s2 / static_cast<double>(k)};
}

}  // namespace

double rescaled_range(std::span<const double> w, std::size_t t, std::size_t k) {
  if (k < 2) raise(Errc::InvalidParameter, "window length must be >= 2");
  if (k > w.size() || t > w.size() - k) raise(Errc::OutOfRange, "window exceeds series end");
  const auto [range, s2] = window_range_and_variance(w, t, k);
  if (s2 <= 0.0) raise(Errc::ZeroVariance, "constant window at t=" + std::to_string(t));
  return range / std::sqrt(s2);
}

double partial_sum_range(std::span<const double> w) {
  if (w.size() < 2) raise(Errc::TooShort, "range needs at least 2 points");
  return window_range_and_variance(w, 0, w.size()).range;
}

std::vector<std::size_t> pow2_k_grid(std::size_t n) {
  std::vector<std::size_t> grid;
  for (std::size_t k = 16; 2 * k <= n; k *= 2) grid.push_back(k);
  if (grid.empty()) raise(Errc::EmptyGrid, "series too short for the pow2 k grid");
  return grid;
}

PoxPlot pox_plot(std::span<const double> w, std::size_t blocks,
                 std::span<const std::size_t> k_grid, double fit_k_min) {
  const std::size_t n = w.size();
  if (blocks < 1) raise(Errc::InvalidParameter, "block count must be >= 1");
  for (std::size_t k : k_grid) {
    if (k < 2) raise(Errc::InvalidParameter, "window lengths must be >= 2");
  }

  // G(k) = { t = floor(N(i-1)/B) + 1 : i = 1..B, t + k <= N }, as a set.
  std::vector<std::size_t> all_anchors;
  all_anchors.reserve(blocks);
  for (std::size_t i = 1; i <= blocks; ++i) {
    all_anchors.push_back(n * (i - 1) / blocks + 1);
  }
  std::sort(all_anchors.begin(), all_anchors.end());
  all_anchors.erase(std::unique(all_anchors.begin(), all_anchors.end()), all_anchors.end());

  PoxPlot pox;
  pox.blocks = blocks;
  pox.fit_k_min = fit_k_min;
  bool any = false;
  for (std::size_t k : k_grid) {
    if (k > n) continue;
    std::vector<std::size_t> kept;
    std::vector<double> qs;
    for (std::size_t t : all_anchors) {
      if (t > n - k) break;
      const auto [range, s2] = window_range_and_variance(w, t, k);
      if (s2 <= 0.0) {
        ++pox.skipped_constant_windows;
        continue;
      }
      kept.push_back(t);
      qs.push_back(range / std::sqrt(s2));
    }
    if (kept.empty()) continue;
    any = true;
    pox.k_grid.push_back(k);
    pox.r_bar.push_back(mean(qs));
    pox.anchors.push_back(std::move(kept));
    pox.q_values.push_back(std::move(qs));
  }
  if (!any) raise(Errc::EmptyGrid, "no window length admits an anchor");

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < pox.k_grid.size(); ++i) {
    if (static_cast<double>(pox.k_grid[i]) >= fit_k_min && pox.r_bar[i] > 0.0) {
      lx.push_back(std::log10(static_cast<double>(pox.k_grid[i])));
      ly.push_back(std::log10(pox.r_bar[i]));
    }
  }
  if (lx.size() >= 2) {
    const LineFit fit = ols_line(lx, ly);
    pox.slope_hat = fit.slope;
    pox.slope_stderr = fit.slope_stderr;
  } else {
    pox.slope_hat = std::numeric_limits<double>::quiet_NaN();
    pox.slope_stderr = std::numeric_limits<double>::quiet_NaN();
  }
  return pox;
}

namespace {

double bartlett_sigma(double s2_lag0, std::span<const double> gamma, std::size_t q) {
  double s2 = s2_lag0;
  for (std::size_t i = 1; i <= q; ++i) {
    const double weight = 1.0 - static_cast<double>(i) / static_cast<double>(q + 1);
    s2 += 2.0 * weight * gamma[i];
  }
  if (s2 == 0.0) raise(Errc::ZeroVariance, "sigma^2(q) = 0: constant input");
  if (s2 < 0.0) {
    raise(Errc::NonPositiveVariance, "sigma^2(q) < 0 at q=" + std::to_string(q));
  }
  return std::sqrt(s2);
}

}  // namespace

double newey_west_sigma_from_gamma(std::span<const double> gamma, std::size_t q) {
  if (gamma.size() < q + 1) raise(Errc::InvalidParameter, "need gamma up to lag q");
  return bartlett_sigma(gamma[0], gamma, q);
}

double newey_west_sigma(std::span<const double> w, std::size_t q) {
  if (q >= w.size()) raise(Errc::LagOutOfRange, "bandwidth must be < N");
  // The q = 0 branch is exactly S(1,N); the lag-0 term always comes from the
  // same pass as the rescaled-range denominator.
  const double s2 = window_range_and_variance(w, 0, w.size()).s2;
  if (q == 0) return bartlett_sigma(s2, {}, 0);
  return bartlett_sigma(s2, autocovariance_fft(w, q), q);
}

double ar1_mle(std::span<const double> w) {
  const std::size_t n = w.size();
  if (n < 3) raise(Errc::TooShort, "AR(1) fit needs at least 3 points");
  const double wbar = mean(w);
  double num = 0.0, den = 0.0;
  for (std::size_t t = 1; t < n; ++t) {
    const double prev = w[t - 1] - wbar;
    num += (w[t] - wbar) * prev;
    den += prev * prev;
  }
  if (den == 0.0) raise(Errc::DegenerateSeries, "constant series has no AR(1) estimate");
  constexpr double eps = 1e-6;
  return std::clamp(num / den, -1.0 + eps, 1.0 - eps);
}

std::size_t andrews_bandwidth(double phi_hat, std::size_t n) {
  if (n < 2) raise(Errc::TooShort, "bandwidth needs at least 2 points");
  const double base = std::abs(2.0 * phi_hat / (1.0 - phi_hat * phi_hat));
  const double q = std::cbrt(1.5 * static_cast<double>(n)) * std::pow(base, 2.0 / 3.0);
  const double capped = std::min(q, static_cast<double>(n - 1));
  return static_cast<std::size_t>(std::floor(capped));
}

std::size_t andrews_bandwidth(std::span<const double> w) {
  return andrews_bandwidth(ar1_mle(w), w.size());
}

LoResult lo_test(std::span<const double> w, Bandwidth bandwidth) {
  const std::size_t n = w.size();
  if (n < 2) raise(Errc::TooShort, "Lo's test needs at least 2 points");

  LoResult res;
  res.q_source = bandwidth.rule;
  if (bandwidth.rule == Bandwidth::Rule::Andrews) {
    const double phi = ar1_mle(w);
    res.phi_hat = phi;
    res.q = andrews_bandwidth(phi, n);
  } else {
    if (bandwidth.q >= n) raise(Errc::LagOutOfRange, "bandwidth must be < N");
    res.q = bandwidth.q;
  }

  res.sigma_hat = newey_west_sigma(w, res.q);
  res.q_tilde = partial_sum_range(w) / res.sigma_hat;
  res.v = res.q_tilde / std::sqrt(static_cast<double>(n));
  res.reject_5pct = res.v < kLoAcceptLow5pct || res.v > kLoAcceptHigh5pct;
  return res;
}

}  // namespace longmem
