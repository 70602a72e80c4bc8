#include "longmem/changepoint.hpp"

#include <algorithm>
#include <cmath>

#include "longmem/errors.hpp"
#include "longmem/parallel.hpp"
#include "longmem/rng.hpp"
#include "longmem/stats.hpp"

namespace longmem {

namespace {

// Peak height and position (1-based within the window) of the mean-adjusted
// CUSUM path over z[lo, hi).
struct CusumPeak {
  double height = 0.0;
  std::size_t r = 1;
};

CusumPeak cusum_peak(std::span<const double> z, std::size_t lo, std::size_t hi) {
  const std::size_t len = hi - lo;
  const double zbar = mean(z.subspan(lo, len));
  CusumPeak peak;
  double running = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    running += z[i] - zbar;
    const double d = std::abs(running);
    if (d > peak.height) {
      peak.height = d;
      peak.r = i - lo + 1;
    }
  }
  return peak;
}

// sup_i |sum_{u=start}^{i} z_u - ratio(i) * total| with ratio(i) counting from
// `ratio_offset` at i = start, divided by denom at the right end.
double cusum_sup(std::span<const double> z, std::size_t start, std::size_t end,
                 std::size_t ratio_offset, std::size_t denom) {
  const double total = csum(z.subspan(start, end - start));
  double running = 0.0;
  double sup = 0.0;
  for (std::size_t i = start; i < end; ++i) {
    running += z[i];
    const double ratio =
        static_cast<double>(i - start + ratio_offset) / static_cast<double>(denom);
    sup = std::max(sup, std::abs(running - ratio * total));
  }
  return sup;
}

struct SegmentStat {
  double t = 0.0;
  std::size_t q = 0;
};

// Normalized CUSUM statistic for the segment (break_before, seg_end], i.e.
// 0-based z[seg_lo, seg_hi). When the segment follows a break, the printed
// formula anchors the moving sums one position earlier.
SegmentStat segment_statistic(std::span<const double> z, std::size_t seg_lo, std::size_t seg_hi,
                              const BerkesOptions& opts, bool follows_break) {
  const std::size_t len = seg_hi - seg_lo;
  if (len < kMinSegmentLen) {
    raise(Errc::SegmentTooShort, "segment of length " + std::to_string(len) +
                                     " is below the minimum " + std::to_string(kMinSegmentLen));
  }
  const auto segment = z.subspan(seg_lo, len);

  SegmentStat stat;
  if (opts.bandwidth.rule == Bandwidth::Rule::Andrews) {
    stat.q = andrews_bandwidth(segment);
  } else {
    stat.q = std::min(opts.bandwidth.q, len - 1);
  }
  const double sigma = newey_west_sigma(segment, stat.q);

  double sup = 0.0;
  if (follows_break && !opts.sums_from_segment_start) {
    sup = cusum_sup(z, seg_lo - 1, seg_hi, 0, len);
  } else {
    sup = cusum_sup(z, seg_lo, seg_hi, 1, len);
  }
  stat.t = sup / (sigma * std::sqrt(static_cast<double>(len)));
  return stat;
}

}  // namespace

std::size_t cusum_estimate(std::span<const double> z) {
  if (z.size() < 3) raise(Errc::TooShort, "change-point estimate needs at least 3 points");
  return cusum_peak(z, 0, z.size()).r;
}

double normalize_cp(std::size_t r_hat, std::size_t r_star, std::size_t n) {
  if (r_star < 2 || r_star > n - 1) raise(Errc::OutOfRange, "need 2 <= r* <= N-1");
  if (r_hat < 1 || r_hat > n) raise(Errc::OutOfRange, "r_hat outside 1..N");
  const double diff = static_cast<double>(r_hat) - static_cast<double>(r_star);
  if (r_hat <= r_star) return diff / static_cast<double>(r_star);
  return diff / static_cast<double>(n - r_star);
}

ChangePointResult berkes_test(std::span<const double> z, int n_breaks,
                              const BerkesOptions& options) {
  const std::size_t n = z.size();
  if (n_breaks < 0 || n_breaks > 2) raise(Errc::InvalidParameter, "breaks must be 0, 1, or 2");
  if (n < 3) raise(Errc::TooShort, "test needs at least 3 points");

  ChangePointResult res;
  res.n_breaks_hypothesized = n_breaks;

  if (n_breaks == 0) {
    const SegmentStat whole = segment_statistic(z, 0, n, options, false);
    res.t_stats = {whole.t};
    res.q_used = {whole.q};
  } else {
    const std::size_t r1 = cusum_estimate(z);
    res.r_hat.push_back(r1);

    std::vector<std::size_t> boundaries = {r1};
    if (n_breaks == 2) {
      if (r1 < 1 || r1 >= n) {
        raise(Errc::SegmentTooShort, "first break leaves an empty segment");
      }
      const CusumPeak left = cusum_peak(z, 0, r1);
      const CusumPeak right = cusum_peak(z, r1, n);
      const std::size_t r2 = left.height >= right.height ? left.r : r1 + right.r;
      res.r_hat.push_back(r2);
      boundaries.push_back(r2);
      std::sort(boundaries.begin(), boundaries.end());
      if (boundaries[0] == boundaries[1]) {
        raise(Errc::SegmentTooShort, "breaks coincide");
      }
    }

    std::size_t lo = 0;
    for (std::size_t b = 0; b <= boundaries.size(); ++b) {
      const std::size_t hi = b < boundaries.size() ? boundaries[b] : n;
      const SegmentStat stat = segment_statistic(z, lo, hi, options, lo > 0);
      res.t_stats.push_back(stat.t);
      res.q_used.push_back(stat.q);
      lo = hi;
    }
  }

  res.m_stat = *std::max_element(res.t_stats.begin(), res.t_stats.end());
  res.reject_1pct = res.m_stat > kBerkesCrit1pct;
  if (options.r_star && !res.r_hat.empty()) {
    res.r_tilde = normalize_cp(res.r_hat.front(), *options.r_star, n);
  }
  return res;
}

double NullEcdf::cum_prob(double x) const {
  const auto it = std::upper_bound(r_tilde.begin(), r_tilde.end(), x);
  return static_cast<double>(it - r_tilde.begin()) / static_cast<double>(r_tilde.size());
}

double NullEcdf::median() const {
  const std::size_t n = r_tilde.size();
  if (n == 0) raise(Errc::InvalidParameter, "empty ECDF");
  if (n % 2 == 1) return r_tilde[n / 2];
  return 0.5 * (r_tilde[n / 2 - 1] + r_tilde[n / 2]);
}

NullEcdf null_ecdf(std::size_t n_series, std::size_t series_len, std::uint64_t seed,
                   unsigned threads) {
  if (n_series < 100) raise(Errc::InvalidParameter, "need at least 100 replicas");
  if (series_len < 4) raise(Errc::TooShort, "replica length too short");

  const std::size_t r_star = series_len / 2;
  const Rng root(seed);

  NullEcdf ecdf;
  ecdf.r_tilde.resize(n_series);
  parallel_for(n_series, threads, [&](std::size_t rep) {
    Rng rng = root.substream(rep);
    std::vector<double> z(series_len);
    for (double& v : z) v = rng.next_gaussian();
    const std::size_t r_hat = cusum_estimate(z);
    ecdf.r_tilde[rep] = normalize_cp(r_hat, r_star, series_len);
  });
  std::sort(ecdf.r_tilde.begin(), ecdf.r_tilde.end());
  return ecdf;
}

}  // namespace longmem
