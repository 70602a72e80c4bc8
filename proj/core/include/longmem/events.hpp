#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "longmem/series.hpp"

namespace longmem {

inline constexpr std::int64_t kNsPerDay = 86'400'000'000'000LL;
// Peak trading session, 08:00:00-17:00:00 UTC, half-open on the right.
inline constexpr std::int64_t kSessionStartNs = 8LL * 3'600'000'000'000LL;
inline constexpr std::int64_t kSessionEndNs = 17LL * 3'600'000'000'000LL;

// One limit-order arrival or active-order departure. Price is not retained; the
// sign series needs only the signed size and the event ordering.
struct OrderEvent {
  std::int64_t timestamp_ns = 0;  // UTC nanoseconds since the Unix epoch
  FlowKind kind = FlowKind::Arrival;
  double size = 0.0;  // < 0 buy, > 0 sell; never 0
  std::string pair;
  Date day;
};

// Column mapping for event-log CSVs. With a header the columns are located by
// name; without one the five fields are read in this order.
struct CsvSchema {
  char delimiter = ',';
  bool has_header = true;
  std::string timestamp_column = "timestamp_ns";
  std::string kind_column = "kind";
  std::string size_column = "size";
  std::string pair_column = "pair";
  std::string day_column = "day";
};

// Events in file order. Rows with size 0 abort with the row number (the sign
// is undefined there), as do rows that fail to parse. Timestamp order is not
// enforced: logs are trusted as event-ordered.
std::vector<OrderEvent> parse_events(std::istream& in, const CsvSchema& schema = {});
std::vector<OrderEvent> parse_events_file(const std::string& path, const CsvSchema& schema = {});

// Keep events whose UTC time-of-day lies in [start_ns, end_ns); order preserved.
std::vector<OrderEvent> filter_session(std::span<const OrderEvent> events,
                                       std::int64_t start_ns = kSessionStartNs,
                                       std::int64_t end_ns = kSessionEndNs);

// Intra-day sign series for the matching (kind, pair, day) events:
// -1 where size < 0 (buy), +1 where size > 0 (sell), in event order.
SignSeries build_sign_series(std::span<const OrderEvent> events, FlowKind kind,
                             const std::string& pair, const Date& day);

// Concatenate the last floor(N_i/2) signs of day i with the first
// floor(N_{i+1}/2) signs of day i+1; the daily boundary r* = floor(N_i/2).
SignSeries build_cross_day(const SignSeries& day_series, const SignSeries& next_day_series);

struct SummaryStats {
  std::size_t n_arrivals = 0;
  std::size_t n_departures = 0;
  double pct_sell_arrivals = 0.0;
  double pct_sell_departures = 0.0;
};

double pct_sell(std::span<const double> signs);

SummaryStats summary_stats(const SignSeries& arrivals, const SignSeries& departures);

}  // namespace longmem
