#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace longmem {

// Periodogram I(lambda_j) at the Fourier frequencies lambda_j = 2 pi j / N,
// j = 1..floor((N-1)/2). Fast-transform based; agrees with the direct DFT
// definition to 1e-9 relative.
std::vector<double> periodogram(std::span<const double> w);
std::vector<double> periodogram(std::span<const double> w, std::size_t j_max);

enum class CRule { SqrtN, TenPercentHalfN, Fixed };

const char* c_rule_name(CRule rule);

struct GphResult {
  std::size_t c = 0;
  CRule c_rule = CRule::Fixed;
  double beta_hat = 0.0;  // minus the log-log regression slope
  double h_hat = 0.0;     // (beta_hat + 1) / 2
  double fit_stderr = 0.0;
  std::size_t dropped_zero_ordinates = 0;  // I = 0 excluded from the regression
};

// floor(sqrt(N)) or floor(0.1 * N/2); clamps to the available frequencies.
std::size_t gph_frequency_count(CRule rule, std::size_t n, std::size_t fixed_c = 0);

// Regression stage on precomputed ordinates I(lambda_1..lambda_c).
GphResult gph_from_ordinates(std::span<const double> ordinates, std::size_t n, std::size_t c,
                             CRule rule);

GphResult gph_estimate(std::span<const double> w, CRule rule, std::size_t fixed_c = 0);

// Exponent conversions H = 1 - alpha/2 and H = (beta + 1)/2 for
// alpha, beta in (0, 1).
double alpha_to_h(double alpha);
double beta_to_h(double beta);

}  // namespace longmem
