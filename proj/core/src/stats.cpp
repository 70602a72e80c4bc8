#include "longmem/stats.hpp"

#include <algorithm>
#include <cmath>

#include "longmem/errors.hpp"

namespace longmem {

double csum(std::span<const double> x) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : x) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

double mean(std::span<const double> x) {
  if (x.empty()) raise(Errc::InvalidParameter, "mean of empty range");
  return csum(x) / static_cast<double>(x.size());
}

LineFit ols_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) raise(Errc::InvalidParameter, "ols_line: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) raise(Errc::InsufficientPoints, "ols_line: need at least 2 points");

  const double xbar = mean(x);
  const double ybar = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - xbar;
    sxx += dx * dx;
    sxy += dx * (y[i] - ybar);
  }
  if (sxx == 0.0) raise(Errc::DegenerateSeries, "ols_line: zero x variance");

  LineFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = (y[i] - ybar) - fit.slope * (x[i] - xbar);
      rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

std::vector<std::size_t> log_spaced_sizes(std::size_t lo, std::size_t hi, std::size_t count) {
  if (lo < 1 || hi < lo || count < 1) raise(Errc::InvalidParameter, "log_spaced_sizes: bad range");
  std::vector<std::size_t> out;
  out.reserve(count);
  if (count == 1 || lo == hi) {
    out.push_back(lo);
    if (hi != lo) out.push_back(hi);
    return out;
  }
  const double llo = std::log(static_cast<double>(lo));
  const double lhi = std::log(static_cast<double>(hi));
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    const double v = std::exp(llo + f * (lhi - llo));
    out.push_back(static_cast<std::size_t>(std::llround(v)));
  }
  out.front() = lo;
  out.back() = hi;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace longmem
