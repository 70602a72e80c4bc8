#include "longmem/series.hpp"

#include <cstdio>

#include "longmem/errors.hpp"

namespace longmem {

const char* flow_kind_name(FlowKind k) {
  return k == FlowKind::Arrival ? "arrival" : "departure";
}

Date Date::parse(const std::string& iso) {
  Date d;
  char extra = 0;
  if (std::sscanf(iso.c_str(), "%d-%d-%d%c", &d.year, &d.month, &d.day, &extra) != 3 ||
      d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) {
    raise(Errc::MalformedRow, "bad ISO date: '" + iso + "'");
  }
  return d;
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

// Howard Hinnant's civil-days algorithm.
std::int64_t Date::days_since_epoch() const {
  const int y = year - (month <= 2 ? 1 : 0);
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy =
      (153u * static_cast<unsigned>(month + (month > 2 ? -3 : 9)) + 2u) / 5u +
      static_cast<unsigned>(day) - 1u;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date Date::next_day() const {
  std::int64_t z = days_since_epoch() + 1 + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  Date d;
  d.day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  d.month = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  d.year = static_cast<int>(y + (d.month <= 2 ? 1 : 0));
  return d;
}

SignSeries::SignSeries(std::vector<double> signs, SeriesLabel label,
                       std::optional<std::size_t> boundary)
    : signs_(std::move(signs)), label_(std::move(label)), boundary_(boundary) {
  if (signs_.size() < 2) raise(Errc::TooShort, "sign series needs at least 2 entries");
  for (double v : signs_) {
    if (v != 1.0 && v != -1.0) raise(Errc::InvalidParameter, "sign series entries must be +/-1");
  }
  const bool crossday = label_.span.kind == SeriesSpan::Kind::Crossday;
  if (crossday) {
    if (!boundary_ || *boundary_ < 1 || *boundary_ >= signs_.size()) {
      raise(Errc::InvalidParameter, "cross-day series needs boundary 1 <= r* < N");
    }
  } else if (boundary_) {
    raise(Errc::InvalidParameter, "boundary index is defined only for cross-day series");
  }
}

}  // namespace longmem
