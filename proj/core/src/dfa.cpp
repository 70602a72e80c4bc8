#include "longmem/dfa.hpp"

#include <cmath>

#include "longmem/errors.hpp"
#include "longmem/stats.hpp"

namespace longmem {

std::vector<double> dfa_profile(std::span<const double> w) {
  std::vector<double> profile(w.size());
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double v = w[i];
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
    profile[i] = sum + comp;
  }
  return profile;
}

double dfa_fluctuation(std::span<const double> w, std::size_t m) {
  const std::size_t n = w.size();
  if (m < 2) raise(Errc::InvalidParameter, "window length must be >= 2");
  if (m > n) raise(Errc::WindowTooLarge, "window exceeds series length");
  const std::size_t windows = n / m;

  // Positions i = 1..m centre at (m+1)/2 with Sxx = m(m^2-1)/12.
  const double xbar = 0.5 * static_cast<double>(m + 1);
  const double sxx = static_cast<double>(m) *
                     (static_cast<double>(m) * static_cast<double>(m) - 1.0) / 12.0;

  std::vector<double> window(m);
  double f_sum = 0.0;
  double running = 0.0;  // profile value carried across windows
  std::size_t pos = 0;
  for (std::size_t j = 0; j < windows; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      running += w[pos++];
      window[i] = running;
    }
    const double ybar = mean(window);
    double sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      sxy += (static_cast<double>(i + 1) - xbar) * (window[i] - ybar);
    }
    const double slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = (window[i] - ybar) - slope * (static_cast<double>(i + 1) - xbar);
      rss += r * r;
    }
    f_sum += std::sqrt(rss / static_cast<double>(m));
  }
  return f_sum / static_cast<double>(windows);
}

std::vector<std::size_t> default_dfa_grid(std::size_t n) {
  const std::size_t hi = n / 4;
  if (hi < 10) raise(Errc::TooShort, "series too short for the default DFA grid");
  return log_spaced_sizes(10, hi, 24);
}

DfaResult dfa_fit(std::span<const std::size_t> m_grid, std::span<const double> f,
                  std::size_t m_min) {
  if (m_grid.size() != f.size()) raise(Errc::InvalidParameter, "grid/F size mismatch");

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    if (m_grid[i] >= m_min && f[i] > 0.0) {
      lx.push_back(std::log10(static_cast<double>(m_grid[i])));
      ly.push_back(std::log10(f[i]));
    }
  }
  if (lx.size() < 3) {
    raise(Errc::InsufficientPoints,
          "need at least 3 grid points with m >= " + std::to_string(m_min));
  }
  const LineFit fit = ols_line(lx, ly);

  DfaResult res;
  res.m_grid.assign(m_grid.begin(), m_grid.end());
  res.f.assign(f.begin(), f.end());
  res.m_min = m_min;
  res.h_hat = fit.slope;
  res.fit_stderr = fit.slope_stderr;
  return res;
}

DfaResult dfa_estimate(std::span<const double> w, std::span<const std::size_t> m_grid,
                       std::size_t m_min) {
  std::vector<double> f(m_grid.size());
  for (std::size_t i = 0; i < m_grid.size(); ++i) f[i] = dfa_fluctuation(w, m_grid[i]);
  return dfa_fit(m_grid, f, m_min);
}

DfaResult dfa_estimate(std::span<const double> w, std::size_t m_min) {
  const auto grid = default_dfa_grid(w.size());
  return dfa_estimate(w, grid, m_min);
}

}  // namespace longmem
