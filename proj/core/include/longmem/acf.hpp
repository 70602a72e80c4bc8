#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "longmem/series.hpp"

namespace longmem {

// Sample autocovariance/autocorrelation with the divisor-N estimator:
//   gamma(k) = (1/N) sum_{i=1}^{N-k} (w_{i+k} - wbar)(w_i - wbar)
// which keeps |rho(k)| <= 1 and the sequence positive semidefinite.
struct AcfEstimate {
  std::size_t max_lag = 0;
  std::vector<double> gamma;  // gamma[k], k = 0..max_lag
  std::vector<double> rho;    // rho[k] = gamma[k] / gamma[0]
  std::size_t n = 0;          // source length; day count for averaged estimates
  SeriesLabel label;
};

// min(10^4, n/10); structure persists to lags of several thousands of events
// while n/10 caps the noise at extreme lags.
std::size_t default_acf_max_lag(std::size_t n);

// Transform-based, O(N log N); agrees with the direct double loop to 1e-10.
AcfEstimate sample_acf(std::span<const double> w, std::size_t max_lag,
                       const SeriesLabel& label = {});
AcfEstimate sample_acf(const SignSeries& series, std::size_t max_lag);

// Pointwise mean across daily estimates sharing the same max lag.
AcfEstimate mean_acf(std::span<const AcfEstimate> estimates);

struct LogLogPoint {
  double log10_k = 0.0;
  double log10_rho = 0.0;
};

// Points (log10 k, log10 rho(k)) for lags k >= k_min with rho(k) > 0.
std::vector<LogLogPoint> loglog_points(const AcfEstimate& est, std::size_t k_min = 50);

}  // namespace longmem
