#include "longmem/periodogram.hpp"

#include <cmath>
#include <numbers>

#include "longmem/errors.hpp"
#include "longmem/fft.hpp"
#include "longmem/stats.hpp"

namespace longmem {

std::vector<double> periodogram(std::span<const double> w, std::size_t j_max) {
  return periodogram_fft(w, j_max);
}

std::vector<double> periodogram(std::span<const double> w) {
  if (w.size() < 4) raise(Errc::TooShort, "periodogram needs at least 4 points");
  return periodogram_fft(w, (w.size() - 1) / 2);
}

const char* c_rule_name(CRule rule) {
  switch (rule) {
    case CRule::SqrtN: return "sqrt";
    case CRule::TenPercentHalfN: return "tenth";
    case CRule::Fixed: return "fixed";
  }
  return "fixed";
}

std::size_t gph_frequency_count(CRule rule, std::size_t n, std::size_t fixed_c) {
  std::size_t c = 0;
  switch (rule) {
    case CRule::SqrtN:
      c = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
      break;
    case CRule::TenPercentHalfN:
      c = static_cast<std::size_t>(std::floor(0.1 * (static_cast<double>(n) / 2.0)));
      break;
    case CRule::Fixed:
      c = fixed_c;
      break;
  }
  const std::size_t top = (n - 1) / 2;
  return std::min(c, top);
}

GphResult gph_from_ordinates(std::span<const double> ordinates, std::size_t n, std::size_t c,
                             CRule rule) {
  if (c < 3) raise(Errc::TooFewFrequencies, "need at least 3 Fourier frequencies");
  if (ordinates.size() < c) raise(Errc::InvalidParameter, "fewer ordinates than c");

  GphResult res;
  res.c = c;
  res.c_rule = rule;

  std::vector<double> lx, ly;
  lx.reserve(c);
  ly.reserve(c);
  for (std::size_t j = 1; j <= c; ++j) {
    const double ord = ordinates[j - 1];
    if (ord <= 0.0) {
      ++res.dropped_zero_ordinates;
      continue;
    }
    const double lambda = 2.0 * std::numbers::pi * static_cast<double>(j) /
                          static_cast<double>(n);
    lx.push_back(std::log(lambda));
    ly.push_back(std::log(ord));
  }
  if (lx.size() < 3) {
    raise(Errc::TooFewFrequencies, "fewer than 3 usable (nonzero) ordinates");
  }
  const LineFit fit = ols_line(lx, ly);
  res.beta_hat = -fit.slope;
  res.h_hat = (res.beta_hat + 1.0) / 2.0;
  res.fit_stderr = fit.slope_stderr;
  return res;
}

GphResult gph_estimate(std::span<const double> w, CRule rule, std::size_t fixed_c) {
  const std::size_t n = w.size();
  if (n < 4) raise(Errc::TooShort, "series too short for a periodogram");
  const std::size_t c = gph_frequency_count(rule, n, fixed_c);
  if (c < 3) raise(Errc::TooFewFrequencies, "c rule yields fewer than 3 frequencies");
  return gph_from_ordinates(periodogram_fft(w, c), n, c, rule);
}

double alpha_to_h(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    raise(Errc::OutOfRange, "alpha must lie in (0, 1)");
  }
  return 1.0 - alpha / 2.0;
}

double beta_to_h(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    raise(Errc::OutOfRange, "beta must lie in (0, 1)");
  }
  return (beta + 1.0) / 2.0;
}

}  // namespace longmem
