#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "longmem/rescaled_range.hpp"

namespace longmem {

// Cumulative-sum change-point estimator: the smallest r in 1..N at which
// |sum_{i<=r} z_i - (r/N) sum z_i| attains its maximum. O(N) time, O(1) extra.
// A constant series leaves every r tied and the min rule returns 1.
std::size_t cusum_estimate(std::span<const double> z);

// Normalized change-point score against a known boundary r* (2 <= r* <= N-1):
// (r_hat - r*)/r* when r_hat <= r*, else (r_hat - r*)/(N - r*). Lies in [-1, 1].
double normalize_cp(std::size_t r_hat, std::size_t r_star, std::size_t n);

// Asymptotic 1% critical value of the test statistic M.
inline constexpr double kBerkesCrit1pct = 1.72;
// Shortest segment on which a per-segment long-run sigma is meaningful.
inline constexpr std::size_t kMinSegmentLen = 10;

struct BerkesOptions {
  Bandwidth bandwidth = Bandwidth::andrews();
  // A post-break segment's moving sums start at the break position by
  // default; set this to start them one past it (sensitivity check).
  bool sums_from_segment_start = false;
  // Known true boundary (cross-day series); enables r_tilde.
  std::optional<std::size_t> r_star;
};

struct ChangePointResult {
  int n_breaks_hypothesized = 0;
  std::vector<std::size_t> r_hat;  // break positions in estimation order, 1-based
  std::optional<double> r_tilde;   // present iff r* was supplied and breaks >= 1
  std::vector<double> t_stats;     // per-segment statistics (T1, T2[, T3])
  double m_stat = 0.0;             // max of the per-segment statistics
  std::vector<std::size_t> q_used; // bandwidth per segment
  bool reject_1pct = false;        // m_stat > 1.72
};

// Berkes' change-point test for 0, 1, or 2 hypothesized breaks: split at the
// CUSUM estimate(s), form a normalized CUSUM statistic per segment (each with
// its own Newey-West sigma), and take the maximum. Two breaks use recursive
// binary segmentation: the second break is the stronger CUSUM peak among the
// two segments produced by the first.
ChangePointResult berkes_test(std::span<const double> z, int n_breaks,
                              const BerkesOptions& options = {});

// ECDF of the normalized change-point score under a stationary i.i.d.
// standard-normal null with nominal boundary r* = floor(len/2).
struct NullEcdf {
  std::vector<double> r_tilde;  // sorted ascending; step i/n after r_tilde[i-1]
  double cum_prob(double x) const;
  double median() const;
};

NullEcdf null_ecdf(std::size_t n_series, std::size_t series_len, std::uint64_t seed,
                   unsigned threads = 1);

}  // namespace longmem
