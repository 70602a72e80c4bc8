#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace longmem {

// Smallest 5-smooth integer >= n (fast FFT length).
std::size_t next_fast_size(std::size_t n);

// Divisor-N sample autocovariance about the mean, lags 0..max_lag.
// Linear (non-circular) correlation via a single padded real FFT; O(N log N).
std::vector<double> autocovariance_fft(std::span<const double> x, std::size_t max_lag);

// Periodogram ordinates I(lambda_j) = |sum_t (x_t - xbar) e^{-it lambda_j}|^2 / (2 pi N)
// for j = 1..j_max, computed with an exact-length real FFT.
std::vector<double> periodogram_fft(std::span<const double> x, std::size_t j_max);

// Real parts of the unnormalized DFT of a real vector (bins 0..n/2).
// The imaginary parts vanish for symmetric input (circulant eigenvalue use).
std::vector<double> real_dft_halfspectrum(std::span<const double> x);

// Unnormalized inverse DFT of a Hermitian half-spectrum (bins 0..n/2) to n reals.
std::vector<double> inverse_dft_hermitian(std::span<const std::complex<double>> half, std::size_t n);

}  // namespace longmem
