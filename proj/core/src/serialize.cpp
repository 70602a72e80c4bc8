#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "longmem/battery.hpp"
#include "longmem/errors.hpp"

namespace longmem {

namespace {

using nlohmann::json;

// NaN has no JSON literal; it travels as null.
json num(double v) { return std::isnan(v) ? json() : json(v); }
double num_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

const char* flow_tag(FlowKind k) { return k == FlowKind::Arrival ? "arrival" : "departure"; }
FlowKind flow_from(const std::string& s) {
  if (s == "arrival") return FlowKind::Arrival;
  if (s == "departure") return FlowKind::Departure;
  raise(Errc::InvalidParameter, "bad flow kind '" + s + "'");
}

const char* span_tag(SeriesSpan::Kind k) {
  return k == SeriesSpan::Kind::Intraday ? "intraday" : "crossday";
}
SeriesSpan::Kind span_from(const std::string& s) {
  if (s == "intraday") return SeriesSpan::Kind::Intraday;
  if (s == "crossday") return SeriesSpan::Kind::Crossday;
  raise(Errc::InvalidParameter, "bad span kind '" + s + "'");
}

const char* rule_tag(Bandwidth::Rule r) {
  return r == Bandwidth::Rule::Fixed ? "fixed" : "andrews";
}
Bandwidth::Rule rule_from(const std::string& s) {
  if (s == "fixed") return Bandwidth::Rule::Fixed;
  if (s == "andrews") return Bandwidth::Rule::Andrews;
  raise(Errc::InvalidParameter, "bad bandwidth rule '" + s + "'");
}

CRule c_rule_from(const std::string& s) {
  if (s == "sqrt") return CRule::SqrtN;
  if (s == "tenth") return CRule::TenPercentHalfN;
  if (s == "fixed") return CRule::Fixed;
  raise(Errc::InvalidParameter, "bad c rule '" + s + "'");
}

json to_js(const SeriesLabel& l) {
  json span{{"kind", span_tag(l.span.kind)}, {"first", l.span.first.to_string()}};
  if (l.span.kind == SeriesSpan::Kind::Crossday) span["second"] = l.span.second.to_string();
  return json{{"pair", l.pair}, {"flow", flow_tag(l.flow)}, {"span", span}};
}
SeriesLabel label_from(const json& j) {
  SeriesLabel l;
  l.pair = j.at("pair").get<std::string>();
  l.flow = flow_from(j.at("flow").get<std::string>());
  const json& span = j.at("span");
  l.span.kind = span_from(span.at("kind").get<std::string>());
  l.span.first = Date::parse(span.at("first").get<std::string>());
  if (l.span.kind == SeriesSpan::Kind::Crossday) {
    l.span.second = Date::parse(span.at("second").get<std::string>());
  }
  return l;
}

json to_js(const SummaryStats& s) {
  return json{{"n_arrivals", s.n_arrivals},
              {"n_departures", s.n_departures},
              {"pct_sell_arrivals", num(s.pct_sell_arrivals)},
              {"pct_sell_departures", num(s.pct_sell_departures)}};
}
SummaryStats summary_from(const json& j) {
  SummaryStats s;
  s.n_arrivals = j.at("n_arrivals").get<std::size_t>();
  s.n_departures = j.at("n_departures").get<std::size_t>();
  s.pct_sell_arrivals = num_from(j.at("pct_sell_arrivals"));
  s.pct_sell_departures = num_from(j.at("pct_sell_departures"));
  return s;
}

json to_js(const AcfEstimate& a) {
  return json{{"max_lag", a.max_lag}, {"gamma", a.gamma},   {"rho", a.rho},
              {"n", a.n},             {"label", to_js(a.label)}};
}
AcfEstimate acf_from(const json& j) {
  AcfEstimate a;
  a.max_lag = j.at("max_lag").get<std::size_t>();
  a.gamma = j.at("gamma").get<std::vector<double>>();
  a.rho = j.at("rho").get<std::vector<double>>();
  a.n = j.at("n").get<std::size_t>();
  a.label = label_from(j.at("label"));
  return a;
}

json to_js(const PoxPlot& p) {
  return json{{"blocks", p.blocks},
              {"k_grid", p.k_grid},
              {"anchors", p.anchors},
              {"q_values", p.q_values},
              {"r_bar", p.r_bar},
              {"skipped_constant_windows", p.skipped_constant_windows},
              {"fit_k_min", num(p.fit_k_min)},
              {"slope_hat", num(p.slope_hat)},
              {"slope_stderr", num(p.slope_stderr)}};
}
PoxPlot pox_from(const json& j) {
  PoxPlot p;
  p.blocks = j.at("blocks").get<std::size_t>();
  p.k_grid = j.at("k_grid").get<std::vector<std::size_t>>();
  p.anchors = j.at("anchors").get<std::vector<std::vector<std::size_t>>>();
  p.q_values = j.at("q_values").get<std::vector<std::vector<double>>>();
  p.r_bar = j.at("r_bar").get<std::vector<double>>();
  p.skipped_constant_windows = j.at("skipped_constant_windows").get<std::size_t>();
  p.fit_k_min = num_from(j.at("fit_k_min"));
  p.slope_hat = num_from(j.at("slope_hat"));
  p.slope_stderr = num_from(j.at("slope_stderr"));
  return p;
}

json to_js(const LoResult& r) {
  json j{{"q", r.q},
         {"q_source", rule_tag(r.q_source)},
         {"sigma_hat", num(r.sigma_hat)},
         {"q_tilde", num(r.q_tilde)},
         {"v", num(r.v)},
         {"reject_5pct", r.reject_5pct}};
  if (r.phi_hat) j["phi_hat"] = num(*r.phi_hat);
  return j;
}
LoResult lo_from(const json& j) {
  LoResult r;
  r.q = j.at("q").get<std::size_t>();
  r.q_source = rule_from(j.at("q_source").get<std::string>());
  if (j.contains("phi_hat")) r.phi_hat = num_from(j.at("phi_hat"));
  r.sigma_hat = num_from(j.at("sigma_hat"));
  r.q_tilde = num_from(j.at("q_tilde"));
  r.v = num_from(j.at("v"));
  r.reject_5pct = j.at("reject_5pct").get<bool>();
  return r;
}

json to_js(const DfaResult& d) {
  return json{{"m_grid", d.m_grid},
              {"f", d.f},
              {"m_min", d.m_min},
              {"h_hat", num(d.h_hat)},
              {"fit_stderr", num(d.fit_stderr)}};
}
DfaResult dfa_from(const json& j) {
  DfaResult d;
  d.m_grid = j.at("m_grid").get<std::vector<std::size_t>>();
  d.f = j.at("f").get<std::vector<double>>();
  d.m_min = j.at("m_min").get<std::size_t>();
  d.h_hat = num_from(j.at("h_hat"));
  d.fit_stderr = num_from(j.at("fit_stderr"));
  return d;
}

json to_js(const GphResult& g) {
  return json{{"c", g.c},
              {"c_rule", c_rule_name(g.c_rule)},
              {"beta_hat", num(g.beta_hat)},
              {"h_hat", num(g.h_hat)},
              {"fit_stderr", num(g.fit_stderr)},
              {"dropped_zero_ordinates", g.dropped_zero_ordinates}};
}
GphResult gph_from(const json& j) {
  GphResult g;
  g.c = j.at("c").get<std::size_t>();
  g.c_rule = c_rule_from(j.at("c_rule").get<std::string>());
  g.beta_hat = num_from(j.at("beta_hat"));
  g.h_hat = num_from(j.at("h_hat"));
  g.fit_stderr = num_from(j.at("fit_stderr"));
  g.dropped_zero_ordinates = j.at("dropped_zero_ordinates").get<std::size_t>();
  return g;
}

json to_js(const ChangePointResult& c) {
  json j{{"n_breaks", c.n_breaks_hypothesized},
         {"r_hat", c.r_hat},
         {"t_stats", c.t_stats},
         {"m_stat", num(c.m_stat)},
         {"q_used", c.q_used},
         {"reject_1pct", c.reject_1pct}};
  if (c.r_tilde) j["r_tilde"] = num(*c.r_tilde);
  return j;
}
ChangePointResult cp_from(const json& j) {
  ChangePointResult c;
  c.n_breaks_hypothesized = j.at("n_breaks").get<int>();
  c.r_hat = j.at("r_hat").get<std::vector<std::size_t>>();
  if (j.contains("r_tilde")) c.r_tilde = num_from(j.at("r_tilde"));
  c.t_stats = j.at("t_stats").get<std::vector<double>>();
  c.m_stat = num_from(j.at("m_stat"));
  c.q_used = j.at("q_used").get<std::vector<std::size_t>>();
  c.reject_1pct = j.at("reject_1pct").get<bool>();
  return c;
}

template <typename T, typename Fn>
json slot_to_js(const Slot<T>& slot, Fn&& value_to_js) {
  if (slot.value) return json{{"value", value_to_js(*slot.value)}};
  json err;
  if (slot.error) {
    err = json{{"code", errc_name(slot.error->code)}, {"message", slot.error->message}};
  }
  return json{{"error", err}};
}

template <typename T, typename Fn>
Slot<T> slot_from_js(const json& j, Fn&& value_from_js) {
  Slot<T> slot;
  if (j.contains("value")) {
    slot.value = value_from_js(j.at("value"));
  } else if (j.contains("error") && !j.at("error").is_null()) {
    const json& err = j.at("error");
    slot.error = SlotError{errc_from_name(err.at("code").get<std::string>()),
                           err.at("message").get<std::string>()};
  }
  return slot;
}

template <typename Inner, typename Fn>
json vector_to_js(const std::vector<Inner>& v, Fn&& one) {
  json arr = json::array();
  for (const Inner& x : v) arr.push_back(one(x));
  return arr;
}

json to_js(const Provenance& p) {
  return json{{"config_hash", p.config_hash},
              {"seed", p.seed},
              {"toolkit_version", p.toolkit_version},
              {"rng_algorithm", p.rng_algorithm}};
}
Provenance provenance_from(const json& j) {
  Provenance p;
  p.config_hash = j.at("config_hash").get<std::string>();
  p.seed = j.at("seed").get<std::uint64_t>();
  p.toolkit_version = j.at("toolkit_version").get<std::string>();
  p.rng_algorithm = j.at("rng_algorithm").get<std::string>();
  return p;
}

json bundle_to_js(const ReportBundle& b) {
  return json{
      {"schema", 1},
      {"label", to_js(b.label)},
      {"summary", slot_to_js(b.summary, [](const SummaryStats& s) { return to_js(s); })},
      {"acf", slot_to_js(b.acf, [](const AcfEstimate& a) { return to_js(a); })},
      {"pox", slot_to_js(b.pox, [](const PoxPlot& p) { return to_js(p); })},
      {"lo", slot_to_js(b.lo,
                        [](const std::vector<LoResult>& v) {
                          return vector_to_js(v, [](const LoResult& r) { return to_js(r); });
                        })},
      {"dfa", slot_to_js(b.dfa, [](const DfaResult& d) { return to_js(d); })},
      {"gph", slot_to_js(b.gph, [](const GphResult& g) { return to_js(g); })},
      {"gph_sweep",
       slot_to_js(b.gph_sweep,
                  [](const std::vector<GphResult>& v) {
                    return vector_to_js(v, [](const GphResult& g) { return to_js(g); });
                  })},
      {"cp", slot_to_js(b.cp,
                        [](const std::vector<ChangePointResult>& v) {
                          return vector_to_js(
                              v, [](const ChangePointResult& c) { return to_js(c); });
                        })},
      {"provenance", to_js(b.provenance)},
  };
}

ReportBundle bundle_from_js(const json& j) {
  ReportBundle b;
  b.label = label_from(j.at("label"));
  b.summary = slot_from_js<SummaryStats>(j.at("summary"), summary_from);
  b.acf = slot_from_js<AcfEstimate>(j.at("acf"), acf_from);
  b.pox = slot_from_js<PoxPlot>(j.at("pox"), pox_from);
  b.lo = slot_from_js<std::vector<LoResult>>(j.at("lo"), [](const json& arr) {
    std::vector<LoResult> v;
    for (const json& x : arr) v.push_back(lo_from(x));
    return v;
  });
  b.dfa = slot_from_js<DfaResult>(j.at("dfa"), dfa_from);
  b.gph = slot_from_js<GphResult>(j.at("gph"), gph_from);
  b.gph_sweep = slot_from_js<std::vector<GphResult>>(j.at("gph_sweep"), [](const json& arr) {
    std::vector<GphResult> v;
    for (const json& x : arr) v.push_back(gph_from(x));
    return v;
  });
  b.cp = slot_from_js<std::vector<ChangePointResult>>(j.at("cp"), [](const json& arr) {
    std::vector<ChangePointResult> v;
    for (const json& x : arr) v.push_back(cp_from(x));
    return v;
  });
  b.provenance = provenance_from(j.at("provenance"));
  return b;
}

json config_to_js(const BatteryConfig& c) {
  return json{
      {"acf_max_lag", c.acf_max_lag},
      {"acf_k_min", c.acf_k_min},
      {"pox_blocks", c.pox_blocks},
      {"pox_fit_k_min", c.pox_fit_k_min},
      {"lo_bandwidths", c.lo_bandwidths},
      {"lo_andrews", c.lo_andrews},
      {"dfa_m_min", c.dfa_m_min},
      {"dfa_grid", c.dfa_grid},
      {"gph_rule", c_rule_name(c.gph_rule)},
      {"gph_fixed_c", c.gph_fixed_c},
      {"gph_sweep", c.gph_sweep},
      {"cp_breaks", c.cp_breaks},
      {"cp_bandwidth", rule_tag(c.cp_bandwidth.rule)},
      {"cp_fixed_q", c.cp_bandwidth.q},
      {"cp_sums_from_segment_start", c.cp_sums_from_segment_start},
      {"seed", c.seed},
  };
}

BatteryConfig config_from_js(const json& j) {
  BatteryConfig c;
  c.acf_max_lag = j.value("acf_max_lag", c.acf_max_lag);
  c.acf_k_min = j.value("acf_k_min", c.acf_k_min);
  c.pox_blocks = j.value("pox_blocks", c.pox_blocks);
  c.pox_fit_k_min = j.value("pox_fit_k_min", c.pox_fit_k_min);
  c.lo_bandwidths = j.value("lo_bandwidths", c.lo_bandwidths);
  c.lo_andrews = j.value("lo_andrews", c.lo_andrews);
  c.dfa_m_min = j.value("dfa_m_min", c.dfa_m_min);
  c.dfa_grid = j.value("dfa_grid", c.dfa_grid);
  if (j.contains("gph_rule")) c.gph_rule = c_rule_from(j.at("gph_rule").get<std::string>());
  c.gph_fixed_c = j.value("gph_fixed_c", c.gph_fixed_c);
  c.gph_sweep = j.value("gph_sweep", c.gph_sweep);
  c.cp_breaks = j.value("cp_breaks", c.cp_breaks);
  if (j.contains("cp_bandwidth")) {
    c.cp_bandwidth.rule = rule_from(j.at("cp_bandwidth").get<std::string>());
  }
  c.cp_bandwidth.q = j.value("cp_fixed_q", c.cp_bandwidth.q);
  c.cp_sums_from_segment_start =
      j.value("cp_sums_from_segment_start", c.cp_sums_from_segment_start);
  c.seed = j.value("seed", c.seed);
  return c;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::string bundle_to_json_text(const ReportBundle& bundle) {
  return bundle_to_js(bundle).dump(2) + "\n";
}

ReportBundle bundle_from_json_text(const std::string& text) {
  return bundle_from_js(json::parse(text));
}

void emit_bundle(const ReportBundle& bundle, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::IoFailure, "cannot open for writing: " + path);
  out << bundle_to_json_text(bundle);
  if (!out) raise(Errc::IoFailure, "write failed: " + path);
}

ReportBundle load_bundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::IoFailure, "cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return bundle_from_json_text(buf.str());
}

std::string battery_config_to_json_text(const BatteryConfig& cfg) {
  return config_to_js(cfg).dump(2) + "\n";
}

BatteryConfig battery_config_from_json_text(const std::string& text) {
  return config_from_js(json::parse(text));
}

std::string config_hash(const BatteryConfig& cfg) {
  const std::uint64_t h = fnv1a64(battery_config_to_json_text(cfg));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace longmem
