#include "longmem/battery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <tuple>

#include "longmem/fft.hpp"
#include "longmem/rng.hpp"
#include "longmem/stats.hpp"

namespace longmem {

namespace {

template <typename T, typename Fn>
Slot<T> run_slot(Fn&& fn) {
  Slot<T> slot;
  try {
    slot.value = fn();
  } catch (const Error& err) {
    slot.error = SlotError{err.code(), err.what()};
  }
  return slot;
}

// All Lo results off one shared autocovariance pass.
std::vector<LoResult> lo_battery(std::span<const double> w, const BatteryConfig& cfg) {
  const std::size_t n = w.size();
  std::vector<std::pair<std::size_t, Bandwidth::Rule>> requests;
  for (std::size_t q : cfg.lo_bandwidths) {
    if (q < n) requests.push_back({q, Bandwidth::Rule::Fixed});
  }
  std::optional<double> phi;
  if (cfg.lo_andrews) {
    phi = ar1_mle(w);
    requests.push_back({andrews_bandwidth(*phi, n), Bandwidth::Rule::Andrews});
  }
  if (requests.empty()) raise(Errc::InvalidParameter, "no usable Lo bandwidths");

  std::size_t max_q = 0;
  for (const auto& [q, rule] : requests) max_q = std::max(max_q, q);
  const std::vector<double> gamma = autocovariance_fft(w, max_q);
  const double range = partial_sum_range(w);
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  std::vector<LoResult> results;
  results.reserve(requests.size());
  for (const auto& [q, rule] : requests) {
    LoResult res;
    res.q = q;
    res.q_source = rule;
    if (rule == Bandwidth::Rule::Andrews) res.phi_hat = phi;
    res.sigma_hat = newey_west_sigma_from_gamma(gamma, q);
    res.q_tilde = range / res.sigma_hat;
    res.v = res.q_tilde / sqrt_n;
    res.reject_5pct = res.v < kLoAcceptLow5pct || res.v > kLoAcceptHigh5pct;
    results.push_back(res);
  }
  return results;
}

}  // namespace

bool ReportBundle::all_ok() const {
  return summary.ok() && acf.ok() && pox.ok() && lo.ok() && dfa.ok() && gph.ok() &&
         gph_sweep.ok() && cp.ok();
}

std::vector<std::size_t> default_gph_sweep(std::size_t n) {
  const std::size_t top = std::max<std::size_t>(4, n / 20);  // 0.1 * (N/2)
  std::vector<std::size_t> sweep = log_spaced_sizes(std::min<std::size_t>(16, top), top, 12);
  const std::size_t sqrt_c = gph_frequency_count(CRule::SqrtN, n);
  if (sqrt_c >= 3) sweep.push_back(sqrt_c);
  std::sort(sweep.begin(), sweep.end());
  sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());
  std::erase_if(sweep, [&](std::size_t c) { return c < 3 || c > (n - 1) / 2; });
  return sweep;
}

ReportBundle run_battery(const SignSeries& series, const BatteryConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::span<const double> w = series.values();
  const std::size_t n = w.size();

  ReportBundle bundle;
  bundle.label = series.label();

  bundle.summary = run_slot<SummaryStats>([&] {
    SummaryStats s;
    if (series.label().flow == FlowKind::Arrival) {
      s.n_arrivals = n;
      s.pct_sell_arrivals = pct_sell(w);
    } else {
      s.n_departures = n;
      s.pct_sell_departures = pct_sell(w);
    }
    return s;
  });

  bundle.acf = run_slot<AcfEstimate>([&] {
    const std::size_t lag = cfg.acf_max_lag > 0 ? cfg.acf_max_lag : default_acf_max_lag(n);
    return sample_acf(series, lag);
  });

  bundle.pox = run_slot<PoxPlot>([&] {
    const auto grid = pow2_k_grid(n);
    return pox_plot(w, cfg.pox_blocks, grid, cfg.pox_fit_k_min);
  });

  bundle.lo = run_slot<std::vector<LoResult>>([&] { return lo_battery(w, cfg); });

  bundle.dfa = run_slot<DfaResult>([&] {
    const auto grid = cfg.dfa_grid.empty() ? default_dfa_grid(n) : cfg.dfa_grid;
    return dfa_estimate(w, grid, cfg.dfa_m_min);
  });

  bundle.gph = run_slot<GphResult>([&] { return gph_estimate(w, cfg.gph_rule, cfg.gph_fixed_c); });

  bundle.gph_sweep = run_slot<std::vector<GphResult>>([&] {
    const auto sweep = cfg.gph_sweep.empty() ? default_gph_sweep(n) : cfg.gph_sweep;
    if (sweep.empty()) raise(Errc::TooFewFrequencies, "empty c sweep");
    const std::size_t c_max = *std::max_element(sweep.begin(), sweep.end());
    const std::vector<double> ordinates = periodogram(w, std::min(c_max, (n - 1) / 2));
    std::vector<GphResult> rows;
    rows.reserve(sweep.size());
    for (std::size_t c : sweep) rows.push_back(gph_from_ordinates(ordinates, n, c, CRule::Fixed));
    return rows;
  });

  bundle.cp = run_slot<std::vector<ChangePointResult>>([&] {
    BerkesOptions opts;
    opts.bandwidth = cfg.cp_bandwidth;
    opts.sums_from_segment_start = cfg.cp_sums_from_segment_start;
    opts.r_star = series.boundary_index();
    std::vector<ChangePointResult> rows;
    rows.reserve(cfg.cp_breaks.size());
    for (int breaks : cfg.cp_breaks) rows.push_back(berkes_test(w, breaks, opts));
    return rows;
  });

  bundle.provenance.config_hash = config_hash(cfg);
  bundle.provenance.seed = cfg.seed;
  bundle.provenance.toolkit_version = kToolkitVersion;
  bundle.provenance.rng_algorithm = std::string(Rng::kAlgorithm);
  bundle.provenance.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return bundle;
}

std::vector<AggregateRow> aggregate(std::span<const ReportBundle> bundles) {
  if (bundles.size() < 2) raise(Errc::InvalidParameter, "aggregate needs at least 2 bundles");

  using Key = std::tuple<std::string, FlowKind, SeriesSpan::Kind, std::string>;
  std::map<Key, std::vector<double>> groups;
  for (const ReportBundle& b : bundles) {
    const SeriesLabel& l = b.label;
    if (b.dfa.ok()) {
      groups[{l.pair, l.flow, l.span.kind, "dfa"}].push_back(b.dfa.value->h_hat);
    }
    if (b.gph.ok()) {
      groups[{l.pair, l.flow, l.span.kind, "gph"}].push_back(b.gph.value->h_hat);
    }
  }

  std::vector<AggregateRow> rows;
  for (auto& [key, hs] : groups) {
    // Canonical summation order makes aggregation permutation-invariant.
    std::sort(hs.begin(), hs.end());
    AggregateRow row;
    row.pair = std::get<0>(key);
    row.flow = std::get<1>(key);
    row.span = std::get<2>(key);
    row.estimator = std::get<3>(key);
    row.n = hs.size();
    row.mean_h = mean(hs);
    if (hs.size() > 1) {
      double ss = 0.0;
      for (double h : hs) ss += (h - row.mean_h) * (h - row.mean_h);
      row.sd_h = std::sqrt(ss / static_cast<double>(hs.size() - 1));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace longmem
