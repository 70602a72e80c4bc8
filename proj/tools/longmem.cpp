// longmem: construct order-sign series from limit-order-book event logs and
// run the long-memory battery (ACF, rescaled range, Lo's test, DFA,
// log-periodogram regression, change-point tests) over them.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "longmem/battery.hpp"
#include "longmem/csv.hpp"
#include "longmem/parallel.hpp"
#include "longmem/stats.hpp"
#include "longmem/synth.hpp"

namespace fs = std::filesystem;
using namespace longmem;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::uint64_t seed = 42;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string out_dir = ".";
};

BatteryConfig load_config(const GlobalOpts& g) {
  BatteryConfig cfg;
  if (!g.config_path.empty()) {
    std::ifstream in(g.config_path);
    if (!in) raise(Errc::IoFailure, "cannot open config: " + g.config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    cfg = battery_config_from_json_text(buf.str());
  }
  cfg.seed = g.seed;
  return cfg;
}

std::pair<std::int64_t, std::int64_t> parse_session(const std::string& text) {
  int h1, m1, s1, h2, m2, s2;
  if (std::sscanf(text.c_str(), "%d:%d:%d-%d:%d:%d", &h1, &m1, &s1, &h2, &m2, &s2) != 6) {
    raise(Errc::InvalidParameter, "session must look like 08:00:00-17:00:00");
  }
  auto ns = [](int h, int m, int s) {
    return (static_cast<std::int64_t>(h) * 3600 + m * 60 + s) * 1'000'000'000LL;
  };
  return {ns(h1, m1, s1), ns(h2, m2, s2)};
}

FlowKind parse_kind(const std::string& text) {
  if (text == "A" || text == "arrival") return FlowKind::Arrival;
  if (text == "D" || text == "departure") return FlowKind::Departure;
  raise(Errc::InvalidParameter, "kind must be A or D");
}

std::vector<double> load_series_values(const std::string& path) {
  SeriesFile file = read_series_csv(path);
  if (file.values.size() < 2) raise(Errc::TooShort, path + ": series too short");
  return std::move(file.values);
}

// Restore the label (and cross-day boundary) that the signs subcommand wrote
// as key=value metadata; unlabeled files fall back to the synthetic label.
SignSeries load_sign_series(const std::string& path) {
  SeriesFile file = read_series_csv(path);

  SeriesLabel label;
  std::optional<std::size_t> boundary;
  for (const std::string& line : file.metadata) {
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      const std::size_t eq = token.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      if (key == "pair") {
        label.pair = value;
      } else if (key == "kind") {
        label.flow = parse_kind(value);
      } else if (key == "span") {
        label.span.kind = value == "crossday" ? SeriesSpan::Kind::Crossday
                                              : SeriesSpan::Kind::Intraday;
      } else if (key == "day") {
        label.span.first = Date::parse(value);
      } else if (key == "day2") {
        label.span.second = Date::parse(value);
      } else if (key == "rstar") {
        boundary = std::stoull(value);
      }
    }
  }
  if (label.span.kind != SeriesSpan::Kind::Crossday) boundary.reset();

  if (!file.is_signs) {
    std::cerr << path << ": real-valued series clipped to +/-1 for the sign battery\n";
    for (double& v : file.values) v = v < 0.0 ? -1.0 : 1.0;  // signs_of tie rule
  }
  return SignSeries(std::move(file.values), std::move(label), boundary);
}

// "log:LO:HI:COUNT" with HI either an integer or "N/4"; empty = default grid.
std::vector<std::size_t> parse_dfa_grid(const std::string& text, std::size_t n) {
  if (text.empty()) return default_dfa_grid(n);
  std::size_t lo = 0, count = 0, hi = 0;
  char hi_buf[32] = {0};
  if (std::sscanf(text.c_str(), "log:%zu:%31[^:]:%zu", &lo, hi_buf, &count) != 3) {
    raise(Errc::InvalidParameter, "grid must look like log:10:N/4:24");
  }
  const std::string hi_text(hi_buf);
  if (hi_text == "N/4") {
    hi = n / 4;
  } else {
    hi = std::stoull(hi_text);
  }
  return log_spaced_sizes(lo, hi, count);
}

// (pair, day) -> events, preserving event order within each group.
using GroupKey = std::pair<std::string, std::string>;
std::map<GroupKey, std::vector<OrderEvent>> group_events(std::vector<OrderEvent> events) {
  std::map<GroupKey, std::vector<OrderEvent>> groups;
  for (OrderEvent& ev : events) {
    groups[{ev.pair, ev.day.to_string()}].push_back(std::move(ev));
  }
  return groups;
}

std::string sanitize(const std::string& text) {
  std::string out = text;
  for (char& c : out) {
    if (c == '/' || c == ' ') c = '-';
  }
  return out;
}

std::string bundle_stem(const SeriesLabel& label) {
  std::string stem = sanitize(label.pair) + "_" + label.span.first.to_string();
  if (label.span.kind == SeriesSpan::Kind::Crossday) {
    stem += "_" + label.span.second.to_string();
  }
  stem += std::string("_") + (label.flow == FlowKind::Arrival ? "A" : "D");
  return stem;
}

void write_bundle_outputs(const ReportBundle& bundle, const fs::path& dir,
                          const std::string& stem) {
  emit_bundle(bundle, (dir / (stem + ".json")).string());
  if (bundle.acf.ok()) write_acf_csv((dir / (stem + ".acf.csv")).string(), *bundle.acf.value);
  if (bundle.pox.ok()) write_pox_csv((dir / (stem + ".rs.csv")).string(), *bundle.pox.value);
  if (bundle.lo.ok()) write_lo_csv((dir / (stem + ".lo.csv")).string(), *bundle.lo.value);
  if (bundle.dfa.ok()) write_dfa_csv((dir / (stem + ".dfa.csv")).string(), *bundle.dfa.value);
  if (bundle.gph_sweep.ok()) {
    write_gph_csv((dir / (stem + ".gph.csv")).string(), *bundle.gph_sweep.value);
  }
  if (bundle.cp.ok()) write_cp_csv((dir / (stem + ".cp.csv")).string(), *bundle.cp.value, true);
}

int cmd_ingest(const std::string& events_path, const std::string& session,
               const std::string& out_path) {
  auto [start_ns, end_ns] = parse_session(session);
  const auto events = filter_session(parse_events_file(events_path), start_ns, end_ns);
  std::vector<std::pair<SeriesLabel, SummaryStats>> rows;
  for (const auto& [key, group] : group_events(events)) {
    const Date day = Date::parse(key.second);
    try {
      const SignSeries arrivals = build_sign_series(group, FlowKind::Arrival, key.first, day);
      const SignSeries departures = build_sign_series(group, FlowKind::Departure, key.first, day);
      rows.push_back({arrivals.label(), summary_stats(arrivals, departures)});
    } catch (const Error& err) {
      std::cerr << "skipping (" << key.first << ", " << key.second << "): " << err.what()
                << "\n";
    }
  }
  write_summary_csv(out_path, rows);
  std::cout << "wrote " << rows.size() << " summary rows to " << out_path << "\n";
  return 0;
}

int cmd_signs(const std::string& events_path, const std::string& pair, const std::string& day,
              const std::string& kind, bool crossday, const std::string& session,
              const std::string& out_path) {
  auto [start_ns, end_ns] = parse_session(session);
  const auto events = filter_session(parse_events_file(events_path), start_ns, end_ns);
  const FlowKind flow = parse_kind(kind);
  const Date first = Date::parse(day);

  std::vector<std::string> metadata;
  std::vector<double> signs;
  if (crossday) {
    const SignSeries a = build_sign_series(events, flow, pair, first);
    const SignSeries b = build_sign_series(events, flow, pair, first.next_day());
    const SignSeries joined = build_cross_day(a, b);
    metadata.push_back("pair=" + pair + " kind=" + kind + " span=crossday day=" +
                       first.to_string() + " day2=" + first.next_day().to_string() +
                       " rstar=" + std::to_string(*joined.boundary_index()));
    signs.assign(joined.values().begin(), joined.values().end());
  } else {
    const SignSeries s = build_sign_series(events, flow, pair, first);
    metadata.push_back("pair=" + pair + " kind=" + kind + " span=intraday day=" +
                       first.to_string());
    signs.assign(s.values().begin(), s.values().end());
  }
  write_series_csv(out_path, signs, true, metadata);
  std::cout << "wrote " << signs.size() << " signs to " << out_path << "\n";
  return 0;
}

const char* gen_kind_name(GenSpec::Kind kind) {
  switch (kind) {
    case GenSpec::Kind::IidSigns: return "iid";
    case GenSpec::Kind::Ar1: return "ar1";
    case GenSpec::Kind::Fgn: return "fgn";
    case GenSpec::Kind::MeanShift: return "meanshift";
  }
  return "unknown";
}

int cmd_synth(const GenSpec& spec, bool clip_signs, const std::string& out_path) {
  std::vector<std::string> metadata;
  metadata.push_back("generator=" + std::string(Rng::kAlgorithm) +
                     " seed=" + std::to_string(spec.seed) + " gen_kind=" +
                     gen_kind_name(spec.kind) + " n=" + std::to_string(spec.n));
  const std::vector<double> values = generate(spec);
  const bool signs = clip_signs || spec.kind == GenSpec::Kind::IidSigns;
  if (signs && spec.kind != GenSpec::Kind::IidSigns) {
    const SignSeries s = signs_of(values);
    write_series_csv(out_path, s.values(), true, metadata);
  } else {
    write_series_csv(out_path, values, signs, metadata);
  }
  std::cout << "wrote " << values.size() << " values to " << out_path << "\n";
  return 0;
}

int cmd_battery(const std::vector<std::string>& series_paths, const std::string& events_path,
                const std::string& kind, bool crossday, const GlobalOpts& g) {
  const BatteryConfig cfg = load_config(g);
  const fs::path dir(g.out_dir);
  fs::create_directories(dir);

  std::vector<std::pair<std::string, SignSeries>> inputs;
  for (const std::string& path : series_paths) {
    inputs.push_back({fs::path(path).stem().string(), load_sign_series(path)});
  }
  if (!events_path.empty()) {
    const auto events = filter_session(parse_events_file(events_path));
    const FlowKind flow = parse_kind(kind);
    std::vector<SignSeries> days;
    for (const auto& [key, group] : group_events(events)) {
      try {
        days.push_back(build_sign_series(group, flow, key.first, Date::parse(key.second)));
      } catch (const Error& err) {
        std::cerr << "skipping (" << key.first << ", " << key.second << "): " << err.what()
                  << "\n";
      }
    }
    for (const SignSeries& s : days) inputs.push_back({bundle_stem(s.label()), s});
    if (crossday) {
      for (std::size_t i = 0; i + 1 < days.size(); ++i) {
        const SeriesLabel& a = days[i].label();
        const SeriesLabel& b = days[i + 1].label();
        if (a.pair != b.pair || a.span.first.next_day() != b.span.first) continue;
        SignSeries joined = build_cross_day(days[i], days[i + 1]);
        inputs.push_back({bundle_stem(joined.label()), std::move(joined)});
      }
    }
  }
  if (inputs.empty()) raise(Errc::InvalidParameter, "battery needs --series or --events input");

  // Days fan out across the worker pool; each battery is sequential inside.
  std::vector<ReportBundle> bundles(inputs.size());
  parallel_for(inputs.size(), g.threads, [&](std::size_t i) {
    bundles[i] = run_battery(inputs[i].second, cfg);
  });

  bool any_slot_error = false;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    write_bundle_outputs(bundles[i], dir, inputs[i].first);
    if (!bundles[i].all_ok()) any_slot_error = true;
    std::cout << inputs[i].first << ": " << (bundles[i].all_ok() ? "ok" : "slot errors") << " ("
              << format_double(bundles[i].provenance.wall_ms) << " ms)\n";
  }
  return any_slot_error ? 1 : 0;
}

int cmd_aggregate(const std::vector<std::string>& bundle_paths, const std::string& out_path) {
  std::vector<ReportBundle> bundles;
  bundles.reserve(bundle_paths.size());
  for (const std::string& path : bundle_paths) bundles.push_back(load_bundle(path));
  const auto rows = aggregate(bundles);
  write_aggregate_csv(out_path, rows);
  std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"long-memory analysis of order-flow sign series"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "battery config JSON");
  app.add_option("--seed", g.seed, "generator seed");
  app.add_option("--threads", g.threads, "worker threads");
  app.add_option("--out-dir", g.out_dir, "output directory for battery bundles");

  std::string events_path, series_path, out_path = "out.csv";
  std::string pair, day, kind = "A";
  std::string session = "08:00:00-17:00:00";

  auto* ingest = app.add_subcommand("ingest", "event-log summary per (pair, day)");
  ingest->add_option("--events", events_path, "event-log CSV")->required();
  ingest->add_option("--session", session, "session window, UTC");
  ingest->add_option("--out", out_path, "summary CSV");

  bool crossday = false;
  auto* signs = app.add_subcommand("signs", "build an order-sign series");
  signs->add_option("--events", events_path, "event-log CSV")->required();
  signs->add_option("--pair", pair, "currency pair")->required();
  signs->add_option("--day", day, "ISO date")->required();
  signs->add_option("--kind", kind, "A (arrivals) or D (departures)");
  signs->add_flag("--crossday", crossday, "join with the following day");
  signs->add_option("--session", session, "session window, UTC");
  signs->add_option("--out", out_path, "series CSV");

  std::string synth_kind = "fgn", base_kind = "iid";
  std::size_t synth_n = 131072, r_star = 0;
  double p_sell = 0.5, phi = 0.5, sigma = 1.0, hurst = 0.7, mu_star = 1.0;
  bool clip = false;
  auto* synth = app.add_subcommand("synth", "generate a synthetic series");
  synth->add_option("--kind", synth_kind, "iid|ar1|fgn|meanshift");
  synth->add_option("--n", synth_n, "length");
  synth->add_option("--p-sell", p_sell, "P(+1) for iid signs");
  synth->add_option("--phi", phi, "AR(1) coefficient");
  synth->add_option("--sigma", sigma, "AR(1) innovation scale");
  synth->add_option("--H", hurst, "fGn Hurst exponent");
  synth->add_option("--rstar", r_star, "mean-shift break position");
  synth->add_option("--mu", mu_star, "mean-shift size");
  synth->add_option("--base", base_kind, "mean-shift base: iid|ar1");
  synth->add_flag("--signs", clip, "clip output to +/-1");
  synth->add_option("--out", out_path, "series CSV");

  std::size_t max_lag = 0, k_min = 50;
  auto* acf = app.add_subcommand("acf", "sample autocorrelation function");
  acf->add_option("--series", series_path, "series CSV")->required();
  acf->add_option("--max-lag", max_lag, "max lag (0 = min(10^4, N/10))");
  acf->add_option("--kmin", k_min, "smallest lag in log-log output");
  acf->add_option("--out", out_path, "output CSV");

  std::size_t blocks = 100;
  std::string kgrid = "pow2";
  double fit_kmin = 1e4;
  auto* rs = app.add_subcommand("rs", "rescaled-range (pox) plot data");
  rs->add_option("--series", series_path, "series CSV")->required();
  rs->add_option("--blocks", blocks, "block count B");
  rs->add_option("--kgrid", kgrid, "window grid (pow2)");
  rs->add_option("--fit-kmin", fit_kmin, "slope fit lower cutoff");
  rs->add_option("--out", out_path, "output CSV");

  std::string q_text = "andrews";
  auto* lo = app.add_subcommand("lo", "Lo's modified rescaled-range test");
  lo->add_option("--series", series_path, "series CSV")->required();
  lo->add_option("--q", q_text, "bandwidth: integer or 'andrews'");
  lo->add_option("--out", out_path, "output CSV");

  std::size_t m_min = 100;
  std::string grid_text;
  auto* dfa = app.add_subcommand("dfa", "detrended fluctuation analysis");
  dfa->add_option("--series", series_path, "series CSV")->required();
  dfa->add_option("--mmin", m_min, "fit lower cutoff");
  dfa->add_option("--grid", grid_text, "window grid, log:LO:HI:COUNT (HI may be N/4)");
  dfa->add_option("--out", out_path, "output CSV");

  std::string c_text = "sqrt";
  bool sweep = false;
  auto* gph = app.add_subcommand("gph", "log-periodogram regression");
  gph->add_option("--series", series_path, "series CSV")->required();
  gph->add_option("--c", c_text, "frequency count: sqrt|tenth|integer");
  gph->add_flag("--sweep", sweep, "emit the diagnostic c sweep");
  gph->add_option("--out", out_path, "output CSV");

  int breaks = 1;
  std::string cp_q = "andrews";
  std::size_t cp_rstar = 0;
  bool from_segment_start = false;
  auto* cp = app.add_subcommand("cp", "change-point estimate and Berkes' test");
  cp->add_option("--series", series_path, "series CSV")->required();
  cp->add_option("--breaks", breaks, "hypothesized break count: 0, 1, or 2");
  cp->add_option("--q", cp_q, "bandwidth: integer or 'andrews'");
  cp->add_option("--rstar", cp_rstar, "known true boundary (optional)");
  cp->add_flag("--from-segment-start", from_segment_start,
               "start second-segment sums at r*+1 instead of r*");
  cp->add_option("--out", out_path, "output CSV");

  std::size_t n_series = 1000, len = 100000;
  auto* cpnull = app.add_subcommand("cp-null", "null ECDF of the normalized change point");
  cpnull->add_option("--n-series", n_series, "replica count");
  cpnull->add_option("--len", len, "replica length");
  cpnull->add_option("--out", out_path, "output CSV");

  std::vector<std::string> series_paths;
  auto* battery = app.add_subcommand("battery", "full long-memory battery");
  battery->add_option("--series", series_paths, "series CSV (repeatable)");
  battery->add_option("--events", events_path, "event-log CSV");
  battery->add_option("--kind", kind, "A or D (with --events)");
  battery->add_flag("--crossday", crossday, "also build cross-day series (with --events)");

  std::vector<std::string> bundle_paths;
  auto* agg = app.add_subcommand("aggregate", "summarize Hurst estimates across bundles");
  agg->add_option("--bundles", bundle_paths, "bundle JSON files")->required();
  agg->add_option("--out", out_path, "output CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) return cmd_ingest(events_path, session, out_path);
    if (signs->parsed()) {
      return cmd_signs(events_path, pair, day, kind, crossday, session, out_path);
    }
    if (synth->parsed()) {
      GenSpec spec;
      spec.n = synth_n;
      spec.seed = g.seed;
      spec.p_sell = p_sell;
      spec.phi = phi;
      spec.sigma_eps = sigma;
      spec.hurst = hurst;
      spec.r_star = r_star;
      spec.mu_star = mu_star;
      if (synth_kind == "iid") {
        spec.kind = GenSpec::Kind::IidSigns;
      } else if (synth_kind == "ar1") {
        spec.kind = GenSpec::Kind::Ar1;
      } else if (synth_kind == "fgn") {
        spec.kind = GenSpec::Kind::Fgn;
      } else if (synth_kind == "meanshift") {
        spec.kind = GenSpec::Kind::MeanShift;
        spec.base_kind = base_kind == "ar1" ? GenSpec::Kind::Ar1 : GenSpec::Kind::IidSigns;
      } else {
        raise(Errc::InvalidParameter, "unknown generator kind: " + synth_kind);
      }
      return cmd_synth(spec, clip, out_path);
    }
    if (acf->parsed()) {
      const auto values = load_series_values(series_path);
      const std::size_t lag = max_lag > 0 ? max_lag : default_acf_max_lag(values.size());
      const AcfEstimate est = sample_acf(values, lag);
      write_acf_csv(out_path, est);
      // Figure-2 style log-log plot data for lags >= kmin with positive rho.
      std::ofstream loglog(out_path + ".loglog.csv", std::ios::binary);
      if (!loglog) raise(Errc::IoFailure, "cannot open for writing: " + out_path + ".loglog.csv");
      loglog << "log10_lag,log10_rho\n";
      for (const LogLogPoint& p : loglog_points(est, k_min)) {
        loglog << format_double(p.log10_k) << ',' << format_double(p.log10_rho) << '\n';
      }
      return 0;
    }
    if (rs->parsed()) {
      if (kgrid != "pow2") raise(Errc::InvalidParameter, "only --kgrid pow2 is supported");
      const auto values = load_series_values(series_path);
      const auto grid = pow2_k_grid(values.size());
      write_pox_csv(out_path, pox_plot(values, blocks, grid, fit_kmin));
      return 0;
    }
    if (lo->parsed()) {
      const auto values = load_series_values(series_path);
      Bandwidth bw = Bandwidth::andrews();
      if (q_text != "andrews") bw = Bandwidth::fixed(std::stoull(q_text));
      const LoResult res = lo_test(values, bw);
      write_lo_csv(out_path, std::span(&res, 1));
      return 0;
    }
    if (dfa->parsed()) {
      const auto values = load_series_values(series_path);
      const auto grid = parse_dfa_grid(grid_text, values.size());
      write_dfa_csv(out_path, dfa_estimate(values, grid, m_min));
      return 0;
    }
    if (gph->parsed()) {
      const auto values = load_series_values(series_path);
      std::vector<GphResult> rows;
      if (sweep) {
        for (std::size_t c : default_gph_sweep(values.size())) {
          rows.push_back(gph_estimate(values, CRule::Fixed, c));
        }
      }
      if (c_text == "sqrt") {
        rows.push_back(gph_estimate(values, CRule::SqrtN));
      } else if (c_text == "tenth") {
        rows.push_back(gph_estimate(values, CRule::TenPercentHalfN));
      } else {
        rows.push_back(gph_estimate(values, CRule::Fixed, std::stoull(c_text)));
      }
      write_gph_csv(out_path, rows);
      return 0;
    }
    if (cp->parsed()) {
      const auto values = load_series_values(series_path);
      BerkesOptions opts;
      if (cp_q != "andrews") opts.bandwidth = Bandwidth::fixed(std::stoull(cp_q));
      opts.sums_from_segment_start = from_segment_start;
      if (cp_rstar > 0) opts.r_star = cp_rstar;
      const ChangePointResult res = berkes_test(values, breaks, opts);
      write_cp_csv(out_path, std::span(&res, 1));
      return 0;
    }
    if (cpnull->parsed()) {
      write_ecdf_csv(out_path, null_ecdf(n_series, len, g.seed, g.threads));
      return 0;
    }
    if (battery->parsed()) {
      return cmd_battery(series_paths, events_path, kind, crossday, g);
    }
    if (agg->parsed()) return cmd_aggregate(bundle_paths, out_path);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
