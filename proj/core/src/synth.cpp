#include "longmem/synth.hpp"

#include <cmath>
#include <complex>

#include "longmem/errors.hpp"
#include "longmem/fft.hpp"

namespace longmem {

namespace {

constexpr double kEigenvalueTolerance = -1e-9;

double fgn_autocov(std::size_t k, double hurst) {
  if (k == 0) return 1.0;
  const double kk = static_cast<double>(k);
  const double two_h = 2.0 * hurst;
  return 0.5 * (std::pow(kk + 1.0, two_h) - 2.0 * std::pow(kk, two_h) +
                std::pow(kk - 1.0, two_h));
}

}  // namespace

SignSeries gen_iid_signs(std::size_t n, double p_sell, std::uint64_t seed) {
  if (p_sell < 0.0 || p_sell > 1.0) raise(Errc::InvalidParameter, "p_sell must lie in [0, 1]");
  Rng rng(seed);
  std::vector<double> signs(n);
  for (double& v : signs) v = rng.next_unit() <= p_sell ? 1.0 : -1.0;
  return SignSeries(std::move(signs), SeriesLabel{});
}

std::vector<double> gen_ar1(std::size_t n, double phi, double sigma_eps, std::uint64_t seed) {
  if (std::abs(phi) >= 1.0) raise(Errc::InvalidParameter, "|phi| must be < 1");
  if (sigma_eps < 0.0) raise(Errc::InvalidParameter, "sigma_eps must be >= 0");
  Rng rng(seed);
  std::vector<double> w(n);
  if (n == 0) return w;
  w[0] = sigma_eps / std::sqrt(1.0 - phi * phi) * rng.next_gaussian();
  for (std::size_t t = 1; t < n; ++t) {
    w[t] = phi * w[t - 1] + sigma_eps * rng.next_gaussian();
  }
  return w;
}

std::vector<double> gen_fgn(std::size_t n, double hurst, std::uint64_t seed,
                            std::size_t* clipped_eigenvalues) {
  if (!(hurst > 0.0 && hurst < 1.0)) raise(Errc::InvalidParameter, "H must lie in (0, 1)");
  if (n < 2) raise(Errc::TooShort, "fGn needs at least 2 points");

  // Circulant first row of size 2M: gamma(0..M), then gamma(M-1..1) mirrored.
  const std::size_t m = next_fast_size(n);
  const std::size_t size = 2 * m;
  std::vector<double> row(size);
  for (std::size_t k = 0; k <= m; ++k) row[k] = fgn_autocov(k, hurst);
  for (std::size_t k = 1; k < m; ++k) row[size - k] = row[k];

  std::vector<double> eigen = real_dft_halfspectrum(row);
  std::size_t clipped = 0;
  for (double& lambda : eigen) {
    if (lambda < 0.0) {
      if (lambda < kEigenvalueTolerance) {
        raise(Errc::EmbeddingFailure,
              "circulant eigenvalue " + std::to_string(lambda) + " below tolerance");
      }
      lambda = 0.0;
      ++clipped;
    }
  }
  if (clipped_eigenvalues != nullptr) *clipped_eigenvalues = clipped;

  // Hermitian half-spectrum with independent Gaussian weights; the inverse
  // transform (scaled by 1/sqrt(2M)) then carries exactly the target covariance.
  Rng rng(seed);
  std::vector<std::complex<double>> half(m + 1);
  half[0] = std::sqrt(eigen[0]) * rng.next_gaussian();
  for (std::size_t k = 1; k < m; ++k) {
    const double scale = std::sqrt(0.5 * eigen[k]);
    const double re = rng.next_gaussian();
    const double im = rng.next_gaussian();
    half[k] = {scale * re, scale * im};
  }
  half[m] = std::sqrt(eigen[m]) * rng.next_gaussian();

  std::vector<double> full = inverse_dft_hermitian(half, size);
  const double norm = 1.0 / std::sqrt(static_cast<double>(size));
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = full[i] * norm;
  return out;
}

std::vector<double> gen_mean_shift(std::size_t n, std::size_t r_star, double mu_star,
                                   const GenSpec& base, std::uint64_t seed) {
  if (mu_star == 0.0) raise(Errc::InvalidParameter, "mu* must be nonzero");
  if (r_star < 1 || r_star >= n) raise(Errc::InvalidParameter, "need 1 <= r* < N");

  std::vector<double> z;
  switch (base.kind) {
    case GenSpec::Kind::IidSigns: {
      const SignSeries s = gen_iid_signs(n, base.p_sell, seed);
      z.assign(s.values().begin(), s.values().end());
      break;
    }
    case GenSpec::Kind::Ar1:
      z = gen_ar1(n, base.phi, base.sigma_eps, seed);
      break;
    case GenSpec::Kind::Fgn:
    case GenSpec::Kind::MeanShift:
      raise(Errc::LongMemoryBase, "mean-shift base must be a short-memory process");
  }
  for (std::size_t t = r_star; t < n; ++t) z[t] += mu_star;
  return z;
}

SignSeries signs_of(std::span<const double> x, SeriesLabel label) {
  std::vector<double> signs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) signs[i] = x[i] < 0.0 ? -1.0 : 1.0;
  return SignSeries(std::move(signs), std::move(label));
}

std::vector<double> generate(const GenSpec& spec) {
  switch (spec.kind) {
    case GenSpec::Kind::IidSigns: {
      const SignSeries s = gen_iid_signs(spec.n, spec.p_sell, spec.seed);
      return {s.values().begin(), s.values().end()};
    }
    case GenSpec::Kind::Ar1:
      return gen_ar1(spec.n, spec.phi, spec.sigma_eps, spec.seed);
    case GenSpec::Kind::Fgn:
      return gen_fgn(spec.n, spec.hurst, spec.seed);
    case GenSpec::Kind::MeanShift: {
      GenSpec base = spec;
      base.kind = spec.base_kind;
      return gen_mean_shift(spec.n, spec.r_star, spec.mu_star, base, spec.seed);
    }
  }
  raise(Errc::InvalidParameter, "unknown generator kind");
}

}  // namespace longmem
