#pragma once

#include <span>
#include <string>
#include <vector>

#include "longmem/acf.hpp"
#include "longmem/battery.hpp"
#include "longmem/changepoint.hpp"
#include "longmem/dfa.hpp"
#include "longmem/periodogram.hpp"
#include "longmem/rescaled_range.hpp"

namespace longmem {

// Shortest decimal form that round-trips the exact double.
std::string format_double(double v);

// Series files: optional '#' metadata lines, then a header `index,value` or
// `index,sign`, then one row per entry.
struct SeriesFile {
  std::vector<double> values;
  bool is_signs = false;
  std::vector<std::string> metadata;
};

SeriesFile read_series_csv(const std::string& path);
void write_series_csv(const std::string& path, std::span<const double> values, bool as_signs,
                      std::span<const std::string> metadata = {});

void write_acf_csv(const std::string& path, const AcfEstimate& est);
void write_pox_csv(const std::string& path, const PoxPlot& pox);
void write_lo_csv(const std::string& path, std::span<const LoResult> results);
void write_dfa_csv(const std::string& path, const DfaResult& dfa);
void write_gph_csv(const std::string& path, std::span<const GphResult> results);
// The plain schema is `r_hat,r_tilde,t1,t2,m,reject`; multi-row battery files
// prepend the hypothesized break count.
void write_cp_csv(const std::string& path, std::span<const ChangePointResult> results,
                  bool include_breaks_column = false);
void write_ecdf_csv(const std::string& path, const NullEcdf& ecdf);
void write_summary_csv(const std::string& path,
                       std::span<const std::pair<SeriesLabel, SummaryStats>> rows);
void write_aggregate_csv(const std::string& path, std::span<const AggregateRow> rows);

}  // namespace longmem
