#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "longmem/rng.hpp"
#include "longmem/series.hpp"

namespace longmem {

// Seeded generators of processes with known long-memory and break properties;
// the verification oracles behind every estimator test.
struct GenSpec {
  enum class Kind { IidSigns, Ar1, Fgn, MeanShift };
  Kind kind = Kind::IidSigns;
  std::size_t n = 0;
  std::uint64_t seed = 0;

  double p_sell = 0.5;     // IidSigns: P(+1)
  double phi = 0.0;        // Ar1 autocorrelation, |phi| < 1
  double sigma_eps = 1.0;  // Ar1 innovation scale
  double hurst = 0.5;      // Fgn H in (0, 1)

  // MeanShift: base short-memory process plus mu* after r*.
  std::size_t r_star = 0;
  double mu_star = 0.0;
  Kind base_kind = Kind::IidSigns;  // IidSigns or Ar1 only
};

// i.i.d. +/-1 entries, +1 with probability p_sell.
SignSeries gen_iid_signs(std::size_t n, double p_sell, std::uint64_t seed);

// Stationary-start AR(1): W_1 from the stationary law, W_t = phi W_{t-1} + eps_t.
std::vector<double> gen_ar1(std::size_t n, double phi, double sigma_eps, std::uint64_t seed);

// Exact fractional Gaussian noise (unit variance) by circulant embedding of
// gamma(k) = (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2. Eigenvalues below
// -1e-9 abort; small negatives are clipped to zero and counted.
std::vector<double> gen_fgn(std::size_t n, double hurst, std::uint64_t seed,
                            std::size_t* clipped_eigenvalues = nullptr);

// Z_t = base_t for t <= r*, base_t + mu* after. Base must be short memory.
std::vector<double> gen_mean_shift(std::size_t n, std::size_t r_star, double mu_star,
                                   const GenSpec& base, std::uint64_t seed);

// Threshold a real-valued series at 0; zeros map to +1 (fixed tie rule).
SignSeries signs_of(std::span<const double> x, SeriesLabel label = {});

// Dispatcher used by the CLI.
std::vector<double> generate(const GenSpec& spec);

}  // namespace longmem
