#include <doctest.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "longmem/battery.hpp"
#include "longmem/csv.hpp"
#include "longmem/synth.hpp"

using namespace longmem;

namespace {

SignSeries labeled_signs(std::vector<double> signs, const char* pair = "synthetic",
                         const char* day = "1970-01-01") {
  SeriesLabel label;
  label.pair = pair;
  label.span = {SeriesSpan::Kind::Intraday, Date::parse(day), {}};
  return SignSeries(std::move(signs), std::move(label));
}

SignSeries fgn_signs(std::size_t n, double hurst, std::uint64_t seed) {
  return signs_of(gen_fgn(n, hurst, seed));
}

}  // namespace

TEST_CASE("battery on a long-memory sign series" * doctest::test_suite("slow")) {
  const SignSeries series = fgn_signs(1 << 16, 0.7, 7001);
  const ReportBundle bundle = run_battery(series);

  CHECK(bundle.all_ok());
  REQUIRE(bundle.dfa.ok());
  CHECK(bundle.dfa.value->h_hat > 0.62);
  CHECK(bundle.dfa.value->h_hat < 0.78);

  REQUIRE(bundle.lo.ok());
  const auto& lo_rows = *bundle.lo.value;
  REQUIRE(!lo_rows.empty());
  CHECK(lo_rows.back().q_source == Bandwidth::Rule::Andrews);
  CHECK(lo_rows.back().reject_5pct);

  REQUIRE(bundle.acf.ok());
  CHECK(bundle.acf.value->rho[0] == 1.0);

  REQUIRE(bundle.cp.ok());
  CHECK(bundle.cp.value->size() == 3);
  for (const auto& cp : *bundle.cp.value) {
    CHECK(cp.m_stat >= 0.0);
    CHECK(cp.reject_1pct == (cp.m_stat > kBerkesCrit1pct));
  }

  REQUIRE(bundle.gph_sweep.ok());
  CHECK(bundle.gph_sweep.value->size() >= 3);

  CHECK(!bundle.provenance.config_hash.empty());
  CHECK(bundle.provenance.toolkit_version == kToolkitVersion);
  CHECK(!bundle.provenance.rng_algorithm.empty());
  CHECK(bundle.provenance.wall_ms > 0.0);
}

TEST_CASE("cross-day series carry their boundary into the change-point slot") {
  SeriesLabel day1, day2;
  day1.pair = day2.pair = "EUR/USD";
  day1.span = {SeriesSpan::Kind::Intraday, Date::parse("2010-05-05"), {}};
  day2.span = {SeriesSpan::Kind::Intraday, Date::parse("2010-05-06"), {}};

  const SignSeries raw1 = fgn_signs(4096, 0.7, 7004);
  const SignSeries raw2 = fgn_signs(4096, 0.7, 7005);
  const SignSeries a({raw1.values().begin(), raw1.values().end()}, day1);
  const SignSeries b({raw2.values().begin(), raw2.values().end()}, day2);
  const SignSeries cross = build_cross_day(a, b);
  REQUIRE(cross.boundary_index().has_value());
  CHECK(*cross.boundary_index() == 2048);

  const ReportBundle bundle = run_battery(cross);
  REQUIRE(bundle.cp.ok());
  for (const auto& cp : *bundle.cp.value) {
    if (cp.n_breaks_hypothesized == 0) {
      CHECK(!cp.r_tilde.has_value());
    } else {
      REQUIRE(cp.r_tilde.has_value());
      CHECK(*cp.r_tilde >= -1.0);
      CHECK(*cp.r_tilde <= 1.0);
      CHECK(*cp.r_tilde == normalize_cp(cp.r_hat.front(), 2048, cross.size()));
    }
  }

  // The cross-day label survives serialization.
  const ReportBundle parsed = bundle_from_json_text(bundle_to_json_text(bundle));
  CHECK(parsed.label.span.kind == SeriesSpan::Kind::Crossday);
  CHECK(parsed.label.span.second == Date{2010, 5, 6});
}

TEST_CASE("a constant series errors per slot, not fatally") {
  const SignSeries series = labeled_signs(std::vector<double>(4096, 1.0));
  const ReportBundle bundle = run_battery(series);

  CHECK(bundle.summary.ok());  // counts and percentages still make sense
  CHECK(bundle.summary.value->pct_sell_arrivals == 100.0);

  CHECK(!bundle.acf.ok());
  CHECK(bundle.acf.error->code == Errc::DegenerateSeries);
  CHECK(!bundle.pox.ok());
  CHECK(!bundle.lo.ok());
  CHECK(!bundle.dfa.ok());
  CHECK(!bundle.gph.ok());
  CHECK(!bundle.cp.ok());
  CHECK(!bundle.all_ok());
}

TEST_CASE("battery output is deterministic and round-trips") {
  const SignSeries series = fgn_signs(4096, 0.7, 7002);
  const ReportBundle a = run_battery(series);
  const ReportBundle b = run_battery(series);
  const std::string ja = bundle_to_json_text(a);
  const std::string jb = bundle_to_json_text(b);
  CHECK(ja == jb);

  const ReportBundle parsed = bundle_from_json_text(ja);
  CHECK(bundle_to_json_text(parsed) == ja);
}

TEST_CASE("pox CSV round-trips r_bar to full precision") {
  const SignSeries series = fgn_signs(8192, 0.7, 7010);
  const auto grid = pow2_k_grid(series.size());
  const PoxPlot pox = pox_plot(series.values(), 100, grid);

  const std::string path =
      (std::filesystem::temp_directory_path() / "longmem-pox-roundtrip.csv").string();
  write_pox_csv(path, pox);

  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "k,r_bar,n_anchors");
  std::size_t row = 0;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    REQUIRE(c2 != std::string::npos);
    CHECK(std::stoull(line.substr(0, c1)) == pox.k_grid[row]);
    double r_bar = 0.0;
    const char* begin = line.data() + c1 + 1;
    std::from_chars(begin, line.data() + c2, r_bar);
    CHECK(r_bar == pox.r_bar[row]);  // bitwise, via shortest round-trip decimals
    ++row;
  }
  CHECK(row == pox.k_grid.size());
  std::filesystem::remove(path);
}

TEST_CASE("emit fails loudly on a missing directory") {
  const SignSeries series = fgn_signs(1024, 0.6, 7003);
  const ReportBundle bundle = run_battery(series);
  try {
    emit_bundle(bundle, "/no-such-dir-anywhere/bundle.json");
    FAIL("expected IoFailure");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::IoFailure);
    CHECK(std::string(err.what()).find("/no-such-dir-anywhere/bundle.json") !=
          std::string::npos);
  }
}

namespace {

ReportBundle bundle_with_h(const char* pair, SeriesSpan::Kind span, double dfa_h, double gph_h) {
  ReportBundle b;
  b.label.pair = pair;
  b.label.flow = FlowKind::Arrival;
  b.label.span.kind = span;
  DfaResult d;
  d.h_hat = dfa_h;
  b.dfa.value = d;
  GphResult g;
  g.h_hat = gph_h;
  b.gph.value = g;
  return b;
}

}  // namespace

TEST_CASE("aggregate mean and sample standard deviation") {
  std::vector<ReportBundle> bundles;
  for (int i = 0; i < 30; ++i) {
    bundles.push_back(bundle_with_h("EUR/USD", SeriesSpan::Kind::Intraday, 0.7, 0.74));
  }
  auto rows = aggregate(bundles);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].estimator == "dfa");
  CHECK(rows[0].mean_h == doctest::Approx(0.70).epsilon(1e-14));
  CHECK(rows[0].sd_h == 0.0);
  CHECK(rows[0].n == 30);

  std::vector<ReportBundle> two = {
      bundle_with_h("EUR/USD", SeriesSpan::Kind::Intraday, 0.6, 0.7),
      bundle_with_h("EUR/USD", SeriesSpan::Kind::Intraday, 0.8, 0.7),
  };
  rows = aggregate(two);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].mean_h == doctest::Approx(0.70).epsilon(1e-14));
  CHECK(rows[0].sd_h == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
}

TEST_CASE("aggregate groups by pair, flow, and span") {
  std::vector<ReportBundle> bundles = {
      bundle_with_h("EUR/USD", SeriesSpan::Kind::Intraday, 0.7, 0.7),
      bundle_with_h("EUR/USD", SeriesSpan::Kind::Crossday, 0.8, 0.8),
      bundle_with_h("GBP/USD", SeriesSpan::Kind::Intraday, 0.9, 0.9),
  };
  const auto rows = aggregate(bundles);
  CHECK(rows.size() == 6);  // 3 groups x 2 estimators
}

TEST_CASE("aggregate is permutation invariant") {
  std::vector<ReportBundle> bundles;
  std::mt19937 tmp(3);
  for (int i = 0; i < 12; ++i) {
    bundles.push_back(bundle_with_h("EUR/USD", SeriesSpan::Kind::Intraday,
                                    0.6 + 0.01 * i, 0.7 + 0.005 * i));
  }
  const auto rows = aggregate(bundles);
  std::shuffle(bundles.begin(), bundles.end(), tmp);
  const auto shuffled = aggregate(bundles);
  REQUIRE(rows.size() == shuffled.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].mean_h == shuffled[i].mean_h);
    CHECK(rows[i].sd_h == shuffled[i].sd_h);
  }
}

TEST_CASE("aggregate needs at least two bundles") {
  std::vector<ReportBundle> one = {
      bundle_with_h("EUR/USD", SeriesSpan::Kind::Intraday, 0.7, 0.7)};
  CHECK_THROWS_AS(aggregate(one), Error);
}

TEST_CASE("config hash tracks analysis-affecting parameters") {
  BatteryConfig a;
  BatteryConfig b;
  CHECK(config_hash(a) == config_hash(b));
  b.dfa_m_min = 200;
  CHECK(config_hash(a) != config_hash(b));

  BatteryConfig c;
  c.lo_bandwidths = {0, 5};
  CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("config JSON round-trips with partial keys") {
  const BatteryConfig parsed =
      battery_config_from_json_text(R"({"dfa_m_min": 250, "cp_breaks": [0, 2]})");
  CHECK(parsed.dfa_m_min == 250);
  CHECK(parsed.cp_breaks == std::vector<int>{0, 2});
  CHECK(parsed.acf_k_min == 50);  // untouched defaults survive

  const BatteryConfig full = battery_config_from_json_text(battery_config_to_json_text(parsed));
  CHECK(config_hash(full) == config_hash(parsed));
}

TEST_CASE("thirty synthetic days aggregate tightly around the true exponent" *
          doctest::test_suite("slow")) {
  std::vector<ReportBundle> bundles;
  BatteryConfig cfg;
  for (int day = 0; day < 30; ++day) {
    const SignSeries s = fgn_signs(1 << 16, 0.7, 7100 + day);
    bundles.push_back(run_battery(s, cfg));
  }
  const auto rows = aggregate(bundles);
  for (const auto& row : rows) {
    if (row.estimator != "dfa") continue;
    CHECK(row.n == 30);
    CHECK(row.mean_h > 0.66);
    CHECK(row.mean_h < 0.74);
    CHECK(row.sd_h <= 0.06);
  }
}
