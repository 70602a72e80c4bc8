#include "longmem/events.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "longmem/errors.hpp"

namespace longmem {

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::int64_t parse_i64(const std::string& s, std::size_t row) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    raise(Errc::MalformedRow, "row " + std::to_string(row) + ": bad integer '" + s + "'");
  }
  return v;
}

double parse_f64(const std::string& s, std::size_t row) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    raise(Errc::MalformedRow, "row " + std::to_string(row) + ": bad number '" + s + "'");
  }
  return v;
}

struct ColumnIndices {
  std::size_t timestamp, kind, size, pair, day, required;
};

ColumnIndices resolve_columns(const CsvSchema& schema, const std::string& header_line) {
  ColumnIndices idx{0, 1, 2, 3, 4, 5};
  if (!schema.has_header) return idx;
  const auto names = split_line(header_line, schema.delimiter);
  auto find = [&](const std::string& wanted) -> std::size_t {
    const auto it = std::find(names.begin(), names.end(), wanted);
    if (it == names.end()) {
      raise(Errc::MalformedRow, "header is missing column '" + wanted + "'");
    }
    return static_cast<std::size_t>(it - names.begin());
  };
  idx.timestamp = find(schema.timestamp_column);
  idx.kind = find(schema.kind_column);
  idx.size = find(schema.size_column);
  idx.pair = find(schema.pair_column);
  idx.day = find(schema.day_column);
  idx.required = names.size();
  return idx;
}

}  // namespace

std::vector<OrderEvent> parse_events(std::istream& in, const CsvSchema& schema) {
  std::vector<OrderEvent> events;
  std::string line;
  std::size_t row = 0;

  ColumnIndices idx{0, 1, 2, 3, 4, 5};
  if (schema.has_header) {
    if (!std::getline(in, line)) raise(Errc::MalformedRow, "empty input: no header row");
    ++row;
    idx = resolve_columns(schema, line);
  }

  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const auto fields = split_line(line, schema.delimiter);
    if (fields.size() != idx.required) {
      raise(Errc::MalformedRow, "row " + std::to_string(row) + ": expected " +
                                    std::to_string(idx.required) + " fields, got " +
                                    std::to_string(fields.size()));
    }

    OrderEvent ev;
    ev.timestamp_ns = parse_i64(fields[idx.timestamp], row);
    const std::string& kind = fields[idx.kind];
    if (kind == "A") {
      ev.kind = FlowKind::Arrival;
    } else if (kind == "D") {
      ev.kind = FlowKind::Departure;
    } else {
      raise(Errc::MalformedRow, "row " + std::to_string(row) + ": kind must be A or D, got '" +
                                    kind + "'");
    }
    ev.size = parse_f64(fields[idx.size], row);
    if (ev.size == 0.0) {
      raise(Errc::ZeroSize, "row " + std::to_string(row) + ": order size 0 has no sign");
    }
    ev.pair = fields[idx.pair];
    try {
      ev.day = Date::parse(fields[idx.day]);
    } catch (const Error&) {
      raise(Errc::MalformedRow,
            "row " + std::to_string(row) + ": bad day '" + fields[idx.day] + "'");
    }
    events.push_back(std::move(ev));
  }
  return events;
}

std::vector<OrderEvent> parse_events_file(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoFailure, "cannot open " + path);
  return parse_events(in, schema);
}

std::vector<OrderEvent> filter_session(std::span<const OrderEvent> events,
                                       std::int64_t start_ns, std::int64_t end_ns) {
  if (start_ns >= end_ns) raise(Errc::InvalidParameter, "session start must precede end");
  std::vector<OrderEvent> kept;
  kept.reserve(events.size());
  for (const OrderEvent& ev : events) {
    std::int64_t tod = ev.timestamp_ns % kNsPerDay;
    if (tod < 0) tod += kNsPerDay;
    if (tod >= start_ns && tod < end_ns) kept.push_back(ev);
  }
  return kept;
}

SignSeries build_sign_series(std::span<const OrderEvent> events, FlowKind kind,
                             const std::string& pair, const Date& day) {
  std::vector<double> signs;
  for (const OrderEvent& ev : events) {
    if (ev.kind != kind || ev.pair != pair || ev.day != day) continue;
    signs.push_back(ev.size < 0.0 ? -1.0 : 1.0);
  }
  if (signs.size() < 2) {
    raise(Errc::TooShort, "fewer than 2 events match (" + std::string(flow_kind_name(kind)) +
                              ", " + pair + ", " + day.to_string() + ")");
  }
  SeriesLabel label;
  label.pair = pair;
  label.flow = kind;
  label.span = {SeriesSpan::Kind::Intraday, day, {}};
  return SignSeries(std::move(signs), std::move(label));
}

SignSeries build_cross_day(const SignSeries& day_series, const SignSeries& next_day_series) {
  const SeriesLabel& a = day_series.label();
  const SeriesLabel& b = next_day_series.label();
  if (a.pair != b.pair || a.flow != b.flow) {
    raise(Errc::LabelMismatch, "cross-day inputs must share pair and flow kind");
  }
  if (a.span.kind != SeriesSpan::Kind::Intraday || b.span.kind != SeriesSpan::Kind::Intraday) {
    raise(Errc::LabelMismatch, "cross-day inputs must be intra-day series");
  }
  if (a.span.first.next_day() != b.span.first) {
    raise(Errc::LabelMismatch, "days are not consecutive: " + a.span.first.to_string() + " then " +
                                   b.span.first.to_string());
  }

  // "Second half" of an odd-length day drops the middle element; both halves
  // round down to floor(N/2).
  const std::span<const double> first = day_series.values();
  const std::span<const double> second = next_day_series.values();
  const std::size_t take_first = first.size() / 2;
  const std::size_t take_second = second.size() / 2;

  std::vector<double> joined;
  joined.reserve(take_first + take_second);
  joined.insert(joined.end(), first.end() - take_first, first.end());
  joined.insert(joined.end(), second.begin(), second.begin() + take_second);

  SeriesLabel label;
  label.pair = a.pair;
  label.flow = a.flow;
  label.span = {SeriesSpan::Kind::Crossday, a.span.first, b.span.first};
  return SignSeries(std::move(joined), std::move(label), take_first);
}

double pct_sell(std::span<const double> signs) {
  if (signs.empty()) raise(Errc::TooShort, "pct_sell of empty series");
  std::size_t sells = 0;
  for (double v : signs) {
    if (v > 0.0) ++sells;
  }
  return 100.0 * static_cast<double>(sells) / static_cast<double>(signs.size());
}

SummaryStats summary_stats(const SignSeries& arrivals, const SignSeries& departures) {
  SummaryStats s;
  s.n_arrivals = arrivals.size();
  s.n_departures = departures.size();
  s.pct_sell_arrivals = pct_sell(arrivals.values());
  s.pct_sell_departures = pct_sell(departures.values());
  return s;
}

}  // namespace longmem
