#include "longmem/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "longmem/errors.hpp"

namespace longmem {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::IoFailure, "cannot open for writing: " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) raise(Errc::IoFailure, "write failed: " + path);
}

std::string yesno(bool b) { return b ? "1" : "0"; }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) raise(Errc::IoFailure, "number formatting failed");
  return std::string(buf, ptr);
}

SeriesFile read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoFailure, "cannot open: " + path);

  SeriesFile file;
  std::string line;
  bool header_seen = false;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      file.metadata.push_back(line.substr(1));
      continue;
    }
    if (!header_seen) {
      if (line == "index,sign") {
        file.is_signs = true;
      } else if (line != "index,value") {
        raise(Errc::MalformedRow, path + ": expected header index,value or index,sign");
      }
      header_seen = true;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      raise(Errc::MalformedRow, path + " row " + std::to_string(row) + ": missing comma");
    }
    double v = 0.0;
    const char* begin = line.data() + comma + 1;
    const char* end = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
      raise(Errc::MalformedRow, path + " row " + std::to_string(row) + ": bad value");
    }
    file.values.push_back(v);
  }
  if (!header_seen) raise(Errc::MalformedRow, path + ": no header row");
  return file;
}

void write_series_csv(const std::string& path, std::span<const double> values, bool as_signs,
                      std::span<const std::string> metadata) {
  auto out = open_out(path);
  for (const std::string& m : metadata) out << '#' << m << '\n';
  out << (as_signs ? "index,sign" : "index,value") << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << i << ',' << format_double(values[i]) << '\n';
  }
  finish(out, path);
}

void write_acf_csv(const std::string& path, const AcfEstimate& est) {
  auto out = open_out(path);
  out << "lag,gamma,rho\n";
  for (std::size_t k = 0; k <= est.max_lag; ++k) {
    out << k << ',' << format_double(est.gamma[k]) << ',' << format_double(est.rho[k]) << '\n';
  }
  finish(out, path);
}

void write_pox_csv(const std::string& path, const PoxPlot& pox) {
  auto out = open_out(path);
  out << "k,r_bar,n_anchors\n";
  for (std::size_t i = 0; i < pox.k_grid.size(); ++i) {
    out << pox.k_grid[i] << ',' << format_double(pox.r_bar[i]) << ',' << pox.anchors[i].size()
        << '\n';
  }
  finish(out, path);
}

void write_lo_csv(const std::string& path, std::span<const LoResult> results) {
  auto out = open_out(path);
  out << "q,phi_hat,sigma_hat,v,reject\n";
  for (const LoResult& r : results) {
    out << r.q << ',' << (r.phi_hat ? format_double(*r.phi_hat) : "") << ','
        << format_double(r.sigma_hat) << ',' << format_double(r.v) << ',' << yesno(r.reject_5pct)
        << '\n';
  }
  finish(out, path);
}

void write_dfa_csv(const std::string& path, const DfaResult& dfa) {
  auto out = open_out(path);
  out << "m,F\n";
  for (std::size_t i = 0; i < dfa.m_grid.size(); ++i) {
    out << dfa.m_grid[i] << ',' << format_double(dfa.f[i]) << '\n';
  }
  out << "h_hat," << format_double(dfa.h_hat) << '\n';
  finish(out, path);
}

void write_gph_csv(const std::string& path, std::span<const GphResult> results) {
  auto out = open_out(path);
  out << "c,beta_hat,h_hat,stderr\n";
  for (const GphResult& g : results) {
    out << g.c << ',' << format_double(g.beta_hat) << ',' << format_double(g.h_hat) << ','
        << format_double(g.fit_stderr) << '\n';
  }
  finish(out, path);
}

void write_cp_csv(const std::string& path, std::span<const ChangePointResult> results,
                  bool include_breaks_column) {
  auto out = open_out(path);
  if (include_breaks_column) out << "breaks,";
  out << "r_hat,r_tilde,t1,t2,m,reject\n";
  for (const ChangePointResult& c : results) {
    if (include_breaks_column) out << c.n_breaks_hypothesized << ',';
    for (std::size_t i = 0; i < c.r_hat.size(); ++i) {
      if (i > 0) out << ';';
      out << c.r_hat[i];
    }
    out << ',' << (c.r_tilde ? format_double(*c.r_tilde) : "") << ','
        << (!c.t_stats.empty() ? format_double(c.t_stats[0]) : "") << ','
        << (c.t_stats.size() > 1 ? format_double(c.t_stats[1]) : "") << ','
        << format_double(c.m_stat) << ',' << yesno(c.reject_1pct) << '\n';
  }
  finish(out, path);
}

void write_ecdf_csv(const std::string& path, const NullEcdf& ecdf) {
  auto out = open_out(path);
  out << "r_tilde,cum_prob\n";
  const double n = static_cast<double>(ecdf.r_tilde.size());
  for (std::size_t i = 0; i < ecdf.r_tilde.size(); ++i) {
    out << format_double(ecdf.r_tilde[i]) << ','
        << format_double(static_cast<double>(i + 1) / n) << '\n';
  }
  finish(out, path);
}

void write_summary_csv(const std::string& path,
                       std::span<const std::pair<SeriesLabel, SummaryStats>> rows) {
  auto out = open_out(path);
  out << "pair,day,n_arrivals,n_departures,pct_sell_arrivals,pct_sell_departures\n";
  for (const auto& [label, s] : rows) {
    out << label.pair << ',' << label.span.first.to_string() << ',' << s.n_arrivals << ','
        << s.n_departures << ',' << format_double(s.pct_sell_arrivals) << ','
        << format_double(s.pct_sell_departures) << '\n';
  }
  finish(out, path);
}

void write_aggregate_csv(const std::string& path, std::span<const AggregateRow> rows) {
  auto out = open_out(path);
  out << "pair,flow,span,estimator,mean_h,sd_h,n\n";
  for (const AggregateRow& r : rows) {
    out << r.pair << ',' << flow_kind_name(r.flow) << ','
        << (r.span == SeriesSpan::Kind::Intraday ? "intraday" : "crossday") << ',' << r.estimator
        << ',' << format_double(r.mean_h) << ',' << format_double(r.sd_h) << ',' << r.n << '\n';
  }
  finish(out, path);
}

}  // namespace longmem
