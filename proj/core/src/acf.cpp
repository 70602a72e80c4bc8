#include "longmem/acf.hpp"

#include <algorithm>
#include <cmath>

#include "longmem/errors.hpp"
#include "longmem/fft.hpp"

namespace longmem {

std::size_t default_acf_max_lag(std::size_t n) {
  return std::min<std::size_t>(10'000, std::max<std::size_t>(1, n / 10));
}

AcfEstimate sample_acf(std::span<const double> w, std::size_t max_lag, const SeriesLabel& label) {
  const std::size_t n = w.size();
  if (max_lag == 0 || max_lag >= n) {
    raise(Errc::LagOutOfRange, "need 0 < max_lag < N (N=" + std::to_string(n) + ")");
  }

  AcfEstimate est;
  est.max_lag = max_lag;
  est.n = n;
  est.label = label;
  est.gamma = autocovariance_fft(w, max_lag);
  if (est.gamma[0] <= 0.0) {
    raise(Errc::DegenerateSeries, "constant series has zero variance");
  }
  est.rho.resize(max_lag + 1);
  est.rho[0] = 1.0;
  for (std::size_t k = 1; k <= max_lag; ++k) est.rho[k] = est.gamma[k] / est.gamma[0];
  return est;
}

AcfEstimate sample_acf(const SignSeries& series, std::size_t max_lag) {
  return sample_acf(series.values(), max_lag, series.label());
}

AcfEstimate mean_acf(std::span<const AcfEstimate> estimates) {
  if (estimates.empty()) raise(Errc::InvalidParameter, "mean_acf of empty input");
  const std::size_t lag = estimates.front().max_lag;
  for (const AcfEstimate& e : estimates) {
    if (e.max_lag != lag) raise(Errc::MixedLags, "estimates disagree on max lag");
  }

  AcfEstimate out;
  out.max_lag = lag;
  out.n = estimates.size();
  out.label = estimates.front().label;
  out.gamma.assign(lag + 1, 0.0);
  out.rho.assign(lag + 1, 0.0);
  for (const AcfEstimate& e : estimates) {
    for (std::size_t k = 0; k <= lag; ++k) {
      out.gamma[k] += e.gamma[k];
      out.rho[k] += e.rho[k];
    }
  }
  const double inv = 1.0 / static_cast<double>(estimates.size());
  for (std::size_t k = 0; k <= lag; ++k) {
    out.gamma[k] *= inv;
    out.rho[k] *= inv;
  }
  return out;
}

std::vector<LogLogPoint> loglog_points(const AcfEstimate& est, std::size_t k_min) {
  if (k_min < 1) raise(Errc::InvalidParameter, "k_min must be >= 1");
  std::vector<LogLogPoint> pts;
  for (std::size_t k = k_min; k <= est.max_lag; ++k) {
    if (est.rho[k] > 0.0) {
      pts.push_back({std::log10(static_cast<double>(k)), std::log10(est.rho[k])});
    }
  }
  return pts;
}

}  // namespace longmem
