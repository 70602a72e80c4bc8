#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "longmem/acf.hpp"
#include "longmem/changepoint.hpp"
#include "longmem/dfa.hpp"
#include "longmem/errors.hpp"
#include "longmem/events.hpp"
#include "longmem/periodogram.hpp"
#include "longmem/rescaled_range.hpp"
#include "longmem/series.hpp"

namespace longmem {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct BatteryConfig {
  std::size_t acf_max_lag = 0;  // 0 = min(10^4, N/10)
  std::size_t acf_k_min = 50;

  std::size_t pox_blocks = 100;
  double pox_fit_k_min = 1e4;

  std::vector<std::size_t> lo_bandwidths = {0, 5, 10, 25, 50, 100, 250, 500};
  bool lo_andrews = true;

  std::size_t dfa_m_min = 100;
  std::vector<std::size_t> dfa_grid;  // empty = 24 log-spaced in [10, N/4]

  CRule gph_rule = CRule::SqrtN;
  std::size_t gph_fixed_c = 0;
  std::vector<std::size_t> gph_sweep;  // empty = default diagnostic sweep

  std::vector<int> cp_breaks = {0, 1, 2};
  Bandwidth cp_bandwidth = Bandwidth::andrews();
  bool cp_sums_from_segment_start = false;

  std::uint64_t seed = 0;
};

struct SlotError {
  Errc code = Errc::InvalidParameter;
  std::string message;
};

// One analysis result or the error that produced none; a degenerate day must
// not void the rest of the battery.
template <typename T>
struct Slot {
  std::optional<T> value;
  std::optional<SlotError> error;

  bool ok() const { return value.has_value(); }
};

struct Provenance {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string toolkit_version;
  std::string rng_algorithm;
  double wall_ms = 0.0;  // measured, never serialized: bundles stay byte-stable
};

struct ReportBundle {
  SeriesLabel label;
  Slot<SummaryStats> summary;
  Slot<AcfEstimate> acf;
  Slot<PoxPlot> pox;
  Slot<std::vector<LoResult>> lo;  // one per bandwidth; Andrews entry last
  Slot<DfaResult> dfa;
  Slot<GphResult> gph;
  Slot<std::vector<GphResult>> gph_sweep;
  Slot<std::vector<ChangePointResult>> cp;  // one per hypothesized break count
  Provenance provenance;

  bool all_ok() const;
};

// Default diagnostic c grid for the periodogram-regression sweep.
std::vector<std::size_t> default_gph_sweep(std::size_t n);

std::string config_hash(const BatteryConfig& cfg);

// Run the complete long-memory battery on one series. Sub-analysis errors are
// captured per slot, never fatal. Deterministic for fixed config and input.
ReportBundle run_battery(const SignSeries& series, const BatteryConfig& cfg = {});

struct AggregateRow {
  std::string pair;
  FlowKind flow = FlowKind::Arrival;
  SeriesSpan::Kind span = SeriesSpan::Kind::Intraday;
  std::string estimator;  // "dfa" or "gph"
  double mean_h = 0.0;
  double sd_h = 0.0;  // sample (n-1) convention
  std::size_t n = 0;
};

// Mean and standard deviation of the Hurst estimates across bundles, grouped
// by (pair, flow kind, span) -- one row per estimator per group.
std::vector<AggregateRow> aggregate(std::span<const ReportBundle> bundles);

// JSON serialization: stable key order, shortest round-trip numbers; parsing
// a dump and re-emitting reproduces identical bytes.
std::string bundle_to_json_text(const ReportBundle& bundle);
ReportBundle bundle_from_json_text(const std::string& text);
void emit_bundle(const ReportBundle& bundle, const std::string& path);
ReportBundle load_bundle(const std::string& path);

std::string battery_config_to_json_text(const BatteryConfig& cfg);
BatteryConfig battery_config_from_json_text(const std::string& text);

}  // namespace longmem
