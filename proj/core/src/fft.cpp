#include "longmem/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <numbers>

#include "longmem/errors.hpp"
#include "longmem/stats.hpp"

namespace longmem {

namespace {

// FFTW plan creation is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(double* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<double[], FftwDeleter>;

FftwBuffer make_buffer(std::size_t doubles) {
  auto* p = static_cast<double*>(fftw_malloc(doubles * sizeof(double)));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer(p);
}

struct PlanDeleter {
  void operator()(fftw_plan p) const {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

Plan plan_r2c_inplace(std::size_t n, double* buf) {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(n), buf,
                                     reinterpret_cast<fftw_complex*>(buf), FFTW_ESTIMATE);
  if (p == nullptr) raise(Errc::InvalidParameter, "fftw r2c plan failed");
  return Plan(p);
}

Plan plan_c2r_inplace(std::size_t n, double* buf) {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_plan p = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                     reinterpret_cast<fftw_complex*>(buf), buf, FFTW_ESTIMATE);
  if (p == nullptr) raise(Errc::InvalidParameter, "fftw c2r plan failed");
  return Plan(p);
}

}  // namespace

std::size_t next_fast_size(std::size_t n) {
  if (n <= 2) return 2;
  for (std::size_t candidate = n;; ++candidate) {
    std::size_t m = candidate;
    while (m % 2 == 0) m /= 2;
    while (m % 3 == 0) m /= 3;
    while (m % 5 == 0) m /= 5;
    if (m == 1) return candidate;
  }
}

std::vector<double> autocovariance_fft(std::span<const double> x, std::size_t max_lag) {
  const std::size_t n = x.size();
  if (n < 2) raise(Errc::TooShort, "autocovariance needs at least 2 points");
  if (max_lag >= n) raise(Errc::LagOutOfRange, "max_lag must be < series length");

  // Pad beyond n + max_lag so circular correlation has no wraparound in lags <= max_lag.
  const std::size_t len = next_fast_size(n + max_lag + 1);
  const std::size_t padded = 2 * (len / 2 + 1);
  FftwBuffer buf = make_buffer(padded);

  const double xbar = mean(x);
  for (std::size_t i = 0; i < n; ++i) buf[i] = x[i] - xbar;
  std::memset(buf.get() + n, 0, (padded - n) * sizeof(double));

  {
    Plan fwd = plan_r2c_inplace(len, buf.get());
    fftw_execute(fwd.get());
  }
  auto* spec = reinterpret_cast<std::complex<double>*>(buf.get());
  for (std::size_t j = 0; j <= len / 2; ++j) {
    spec[j] = std::norm(spec[j]);
  }
  {
    Plan inv = plan_c2r_inplace(len, buf.get());
    fftw_execute(inv.get());
  }

  const double scale = 1.0 / (static_cast<double>(len) * static_cast<double>(n));
  std::vector<double> gamma(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) gamma[k] = buf[k] * scale;
  return gamma;
}

std::vector<double> periodogram_fft(std::span<const double> x, std::size_t j_max) {
  const std::size_t n = x.size();
  if (n < 4) raise(Errc::TooShort, "periodogram needs at least 4 points");
  const std::size_t j_top = (n - 1) / 2;
  if (j_max > j_top) raise(Errc::LagOutOfRange, "frequency index exceeds (N-1)/2");

  const std::size_t padded = 2 * (n / 2 + 1);
  FftwBuffer buf = make_buffer(padded);
  const double xbar = mean(x);
  for (std::size_t i = 0; i < n; ++i) buf[i] = x[i] - xbar;
  std::memset(buf.get() + n, 0, (padded - n) * sizeof(double));

  Plan fwd = plan_r2c_inplace(n, buf.get());
  fftw_execute(fwd.get());

  const auto* spec = reinterpret_cast<const std::complex<double>*>(buf.get());
  const double scale = 1.0 / (2.0 * std::numbers::pi * static_cast<double>(n));
  std::vector<double> ordinates(j_max);
  for (std::size_t j = 1; j <= j_max; ++j) {
    ordinates[j - 1] = std::norm(spec[j]) * scale;
  }
  return ordinates;
}

std::vector<double> real_dft_halfspectrum(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) raise(Errc::TooShort, "real_dft_halfspectrum needs at least 2 points");
  const std::size_t padded = 2 * (n / 2 + 1);
  FftwBuffer buf = make_buffer(padded);
  std::memcpy(buf.get(), x.data(), n * sizeof(double));
  std::memset(buf.get() + n, 0, (padded - n) * sizeof(double));

  Plan fwd = plan_r2c_inplace(n, buf.get());
  fftw_execute(fwd.get());

  const auto* spec = reinterpret_cast<const std::complex<double>*>(buf.get());
  std::vector<double> out(n / 2 + 1);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = spec[j].real();
  return out;
}

std::vector<double> inverse_dft_hermitian(std::span<const std::complex<double>> half,
                                          std::size_t n) {
  if (half.size() != n / 2 + 1) raise(Errc::InvalidParameter, "half spectrum size mismatch");
  const std::size_t padded = 2 * (n / 2 + 1);
  FftwBuffer buf = make_buffer(padded);
  std::memcpy(buf.get(), half.data(), half.size() * sizeof(std::complex<double>));

  Plan inv = plan_c2r_inplace(n, buf.get());
  fftw_execute(inv.get());

  return std::vector<double>(buf.get(), buf.get() + n);
}

}  // namespace longmem
