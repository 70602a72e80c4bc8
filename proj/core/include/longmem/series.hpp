#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace longmem {

enum class FlowKind { Arrival, Departure };

const char* flow_kind_name(FlowKind k);

// Calendar date (UTC), ISO-8601 text form.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  static Date parse(const std::string& iso);
  std::string to_string() const;
  std::int64_t days_since_epoch() const;
  Date next_day() const;

  auto operator<=>(const Date&) const = default;
};

// Intraday(day) or Crossday(day_i, day_{i+1}).
struct SeriesSpan {
  enum class Kind { Intraday, Crossday };
  Kind kind = Kind::Intraday;
  Date first;
  Date second;  // meaningful iff Crossday

  bool operator==(const SeriesSpan&) const = default;
};

struct SeriesLabel {
  std::string pair = "synthetic";
  FlowKind flow = FlowKind::Arrival;
  SeriesSpan span;

  bool operator==(const SeriesLabel&) const = default;
};

// Immutable labeled +/-1 series; safe to share across concurrent analyses.
class SignSeries {
 public:
  // boundary = r* for cross-day series (1 <= r* < N), absent otherwise.
  SignSeries(std::vector<double> signs, SeriesLabel label,
             std::optional<std::size_t> boundary = std::nullopt);

  std::span<const double> values() const { return signs_; }
  std::size_t size() const { return signs_.size(); }
  const SeriesLabel& label() const { return label_; }
  std::optional<std::size_t> boundary_index() const { return boundary_; }

 private:
  std::vector<double> signs_;
  SeriesLabel label_;
  std::optional<std::size_t> boundary_;
};

}  // namespace longmem
