// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line each. Exit code is the number of failed criteria.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "longmem/battery.hpp"
#include "longmem/changepoint.hpp"
#include "longmem/parallel.hpp"
#include "longmem/synth.hpp"
#include "oracles.hpp"

using namespace longmem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;
unsigned g_threads = 4;

struct Line {
  int id;
  std::string text;
};
std::vector<Line> g_lines;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int id, const char* name, bool pass, const std::string& detail) {
  char buf[640];
  std::snprintf(buf, sizeof(buf), "[%s] criterion %2d — %s (%s)", pass ? "PASS" : "FAIL", id,
                name, detail.c_str());
  g_lines.push_back({id, buf});
  if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

struct RecoveryStats {
  double dfa_mean = 0.0;
  double gph_mean = 0.0;
  double dfa_sign_mean = 0.0;
  double max_estimator_seconds = 0.0;
};

RecoveryStats recover(double hurst, std::uint64_t seed_base, int seeds) {
  std::vector<double> dfa_h(seeds), gph_h(seeds), sign_h(seeds), secs(seeds);
  parallel_for(seeds, g_threads, [&](std::size_t i) {
    const auto w = gen_fgn(1 << 17, hurst, seed_base + i);

    auto t0 = Clock::now();
    dfa_h[i] = dfa_estimate(w, 100).h_hat;
    double elapsed = seconds_since(t0);

    t0 = Clock::now();
    gph_h[i] = gph_estimate(w, CRule::SqrtN).h_hat;
    elapsed = std::max(elapsed, seconds_since(t0));

    const SignSeries clipped = signs_of(w);
    t0 = Clock::now();
    sign_h[i] = dfa_estimate(clipped.values(), 100).h_hat;
    elapsed = std::max(elapsed, seconds_since(t0));
    secs[i] = elapsed;
  });

  RecoveryStats out;
  for (int i = 0; i < seeds; ++i) {
    out.dfa_mean += dfa_h[i];
    out.gph_mean += gph_h[i];
    out.dfa_sign_mean += sign_h[i];
    out.max_estimator_seconds = std::max(out.max_estimator_seconds, secs[i]);
  }
  out.dfa_mean /= seeds;
  out.gph_mean /= seeds;
  out.dfa_sign_mean /= seeds;
  return out;
}

void criteria_1_and_2() {
  const int seeds = 20;
  const double hursts[3] = {0.55, 0.70, 0.85};
  bool real_pass = true, sign_pass = true, fast = true;
  std::string detail, sign_detail;
  for (int hi = 0; hi < 3; ++hi) {
    const RecoveryStats st = recover(hursts[hi], 11000 + 1000 * hi, seeds);
    real_pass = real_pass && std::abs(st.dfa_mean - hursts[hi]) <= 0.05 &&
                std::abs(st.gph_mean - hursts[hi]) <= 0.08;
    sign_pass = sign_pass && std::abs(st.dfa_sign_mean - hursts[hi]) <= 0.05;
    fast = fast && st.max_estimator_seconds <= 10.0;
    detail += fmt("H=%.2f: dfa %.3f gph %.3f; ", hursts[hi], st.dfa_mean, st.gph_mean);
    sign_detail += fmt("H=%.2f: dfa %.3f; ", hursts[hi], st.dfa_sign_mean);
  }
  report(1, "estimator recovery on fGn", real_pass && fast,
         detail + (fast ? "<=10 s per estimator" : "estimator too slow"));
  report(2, "sign-series robustness of DFA", sign_pass, sign_detail);
}

void criterion_3() {
  const int seeds = 200;
  const std::size_t n = 100'000;

  std::vector<char> lo_reject(seeds);
  parallel_for(seeds, g_threads, [&](std::size_t i) {
    const SignSeries s = gen_iid_signs(n, 0.5, 20000 + i);
    lo_reject[i] = lo_test(s.values(), Bandwidth::andrews()).reject_5pct ? 1 : 0;
  });
  int lo_count = 0;
  for (char c : lo_reject) lo_count += c;

  std::vector<char> berkes_reject(seeds);
  parallel_for(seeds, g_threads, [&](std::size_t i) {
    const auto z = gen_ar1(n, 0.0, 1.0, 21000 + i);
    berkes_reject[i] = berkes_test(z, 0).reject_1pct ? 1 : 0;
  });
  int berkes_count = 0;
  for (char c : berkes_reject) berkes_count += c;

  const double lo_rate = 100.0 * lo_count / seeds;
  const double berkes_rate = 100.0 * berkes_count / seeds;
  const bool pass = lo_rate >= 1.0 && lo_rate <= 10.0 && berkes_rate <= 5.0;
  report(3, "test size under the short-memory null", pass,
         fmt("Lo %.1f%% in [1,10]; Berkes(0) %.1f%% <= 5", lo_rate, berkes_rate));
}

void criterion_4() {
  const int seeds = 200;
  const std::size_t n = 100'000;
  std::vector<char> lo_reject(seeds);
  std::vector<char> cp_reject[3] = {std::vector<char>(seeds), std::vector<char>(seeds),
                                    std::vector<char>(seeds)};
  parallel_for(seeds, g_threads, [&](std::size_t i) {
    const auto z = gen_fgn(n, 0.7, 30000 + i);
    lo_reject[i] = lo_test(z, Bandwidth::andrews()).reject_5pct ? 1 : 0;
    for (int breaks = 0; breaks <= 2; ++breaks) {
      cp_reject[breaks][i] = berkes_test(z, breaks).reject_1pct ? 1 : 0;
    }
  });
  int lo_count = 0;
  for (char c : lo_reject) lo_count += c;
  int cp_count[3] = {0, 0, 0};
  for (int b = 0; b < 3; ++b) {
    for (char c : cp_reject[b]) cp_count[b] += c;
  }
  const bool pass = lo_count >= seeds * 9 / 10 && cp_count[0] >= seeds * 9 / 10 &&
                    cp_count[1] >= seeds * 9 / 10 && cp_count[2] >= seeds * 9 / 10;
  report(4, "test power on fGn H=0.7", pass,
         fmt("Lo %d/200; Berkes 0/1/2 breaks %d/%d/%d of 200, all >= 180", lo_count,
             cp_count[0], cp_count[1], cp_count[2]));
}

void criteria_5_and_6() {
  const int seeds = 200;
  const std::size_t n = 100'000, r_star = n / 2;
  GenSpec base;
  base.kind = GenSpec::Kind::Ar1;
  base.phi = 0.0;
  base.sigma_eps = 1.0;

  std::vector<char> reject(seeds), localized(seeds);
  parallel_for(seeds, g_threads, [&](std::size_t i) {
    const auto z = gen_mean_shift(n, r_star, 1.0, base, 40000 + i);
    reject[i] = berkes_test(z, 1).reject_1pct ? 1 : 0;
    const std::size_t r_hat = cusum_estimate(z);
    const double err = std::abs(static_cast<double>(r_hat) - static_cast<double>(r_star));
    localized[i] = err <= 0.02 * static_cast<double>(n) ? 1 : 0;
  });
  int reject_count = 0, local_count = 0;
  for (int i = 0; i < seeds; ++i) {
    reject_count += reject[i];
    local_count += localized[i];
  }

  report(5, "a true structural break is absorbed", reject_count <= seeds / 10,
         fmt("Berkes(1) rejected %d/200, limit 20", reject_count));

  const std::vector<double> step = {0, 0, 0, 1, 1, 1};
  const bool exact = cusum_estimate(step) == 3;
  report(6, "change-point localization", local_count >= seeds * 8 / 10 && exact,
         fmt("within 2%%N in %d/200 (>=160); noiseless step %s", local_count,
             exact ? "exact" : "missed"));
}

void criterion_7() {
  const auto t0 = Clock::now();
  const NullEcdf ecdf = null_ecdf(1000, 100'000, 50000, g_threads);
  const double elapsed = seconds_since(t0);
  const double med = ecdf.median();
  const bool pass = elapsed <= 300.0 && med >= -0.2 && med <= 0.2;
  report(7, "stationary null ECDF of r-tilde", pass,
         fmt("median %.3f in [-0.2, 0.2]; %.1f s <= 300 s", med, elapsed));
}

void criterion_8() {
  bool pass = true;
  double worst_acf = 0.0, worst_pgram = 0.0, worst_q = 0.0;
  Rng rng(60000);
  for (std::size_t n : {100u, 1023u, 2048u, 4096u}) {
    std::vector<double> signs(n), gauss(n);
    const SignSeries s = gen_iid_signs(n, 0.5, 61000 + n);
    std::copy(s.values().begin(), s.values().end(), signs.begin());
    for (double& v : gauss) v = rng.next_gaussian();

    for (const auto& w : {signs, gauss}) {
      const std::size_t max_lag = std::min<std::size_t>(n - 1, 512);
      const auto direct_g = oracle::direct_autocovariance(w, max_lag);
      const auto fft_g = sample_acf(w, max_lag).gamma;
      for (std::size_t k = 0; k <= max_lag; ++k) {
        worst_acf = std::max(worst_acf, std::abs(fft_g[k] - direct_g[k]));
      }

      const std::size_t j_max = (n - 1) / 2;
      const auto direct_i = oracle::direct_periodogram(w, j_max);
      const auto fft_i = periodogram(w);
      for (std::size_t j = 0; j < j_max; ++j) {
        worst_pgram =
            std::max(worst_pgram, std::abs(fft_i[j] - direct_i[j]) / std::abs(direct_i[j]));
      }

      for (std::size_t k : {16u, 64u, 256u, 1024u}) {
        if (k > n) continue;
        for (std::size_t t : {std::size_t{0}, std::size_t{3}, n - k}) {
          if (t + k > n) continue;
          bool constant = true;
          for (std::size_t j = t + 1; j < t + k && constant; ++j) constant = w[j] == w[t];
          if (constant) continue;
          worst_q = std::max(worst_q, std::abs(rescaled_range(w, t, k) -
                                               oracle::direct_rescaled_range(w, t, k)));
        }
      }
    }
  }
  pass = worst_acf <= 1e-10 && worst_pgram <= 1e-9 && worst_q <= 1e-12;
  report(8, "transform kernels match definitional oracles", pass,
         fmt("acf %.2e <= 1e-10; periodogram %.2e <= 1e-9; Q %.2e <= 1e-12", worst_acf,
             worst_pgram, worst_q));
}

void criterion_9() {
  bool pass = kLoAcceptLow5pct == 0.809 && kLoAcceptHigh5pct == 1.862 &&
              kBerkesCrit1pct == 1.72;
  pass = pass && alpha_to_h(0.6) == 0.7 && beta_to_h(0.4) == 0.7;

  // Decision flags are pure functions of the statistic and these constants.
  const SignSeries s = gen_iid_signs(4096, 0.5, 70001);
  const LoResult lo = lo_test(s.values(), Bandwidth::fixed(5));
  pass = pass && lo.reject_5pct == (lo.v < 0.809 || lo.v > 1.862);
  const auto z = gen_ar1(4096, 0.0, 1.0, 70002);
  const ChangePointResult cp = berkes_test(z, 1);
  pass = pass && cp.reject_1pct == (cp.m_stat > 1.72);

  report(9, "pinned constants and exponent conversions", pass,
         "Lo [0.809, 1.862], Berkes 1.72, alpha/beta -> H = 0.7");
}

void criterion_10() {
  const std::size_t n = 5'000'000;
  const SignSeries series = gen_iid_signs(n, 0.5, 80001);

  const auto t0 = Clock::now();
  const ReportBundle bundle = run_battery(series);
  const double elapsed = seconds_since(t0);

  struct rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double peak_bytes = static_cast<double>(usage.ru_maxrss) * 1024.0;
  const double budget_bytes = 4.0 * static_cast<double>(n) * sizeof(double);

  const bool pass = elapsed <= 60.0 && peak_bytes <= budget_bytes && bundle.all_ok();
  report(10, "battery throughput and memory on 5e6 signs", pass,
         fmt("%.1f s <= 60 s; peak rss %.0f MB <= %.0f MB; slots %s", elapsed,
             peak_bytes / 1e6, budget_bytes / 1e6, bundle.all_ok() ? "ok" : "errored"));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_threads = static_cast<unsigned>(std::stoul(argv[1]));
  const auto t0 = Clock::now();

  // The throughput/memory criterion runs first: peak RSS is a process-wide
  // high-water mark, so the battery must be measured on a clean heap.
  criterion_10();
  criteria_1_and_2();
  criterion_3();
  criterion_4();
  criteria_5_and_6();
  criterion_7();
  criterion_8();
  criterion_9();

  std::sort(g_lines.begin(), g_lines.end(), [](const Line& a, const Line& b) {
    return a.id < b.id;
  });
  for (const Line& line : g_lines) std::printf("%s\n", line.text.c_str());
  std::printf("%d of 10 criteria passed in %.1f s\n", 10 - g_failures, seconds_since(t0));
  return g_failures;
}
