#include <benchmark/benchmark.h>

#include "longmem/acf.hpp"
#include "longmem/changepoint.hpp"
#include "longmem/dfa.hpp"
#include "longmem/periodogram.hpp"
#include "longmem/rescaled_range.hpp"
#include "longmem/synth.hpp"

namespace {

std::vector<double> sign_fixture(std::size_t n) {
  const longmem::SignSeries s = longmem::gen_iid_signs(n, 0.5, 7);
  return {s.values().begin(), s.values().end()};
}

void BM_SampleAcf(benchmark::State& state) {
  const auto w = sign_fixture(static_cast<std::size_t>(state.range(0)));
  const std::size_t lag = longmem::default_acf_max_lag(w.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(longmem::sample_acf(w, lag));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleAcf)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_PoxPlot(benchmark::State& state) {
  const auto w = sign_fixture(static_cast<std::size_t>(state.range(0)));
  const auto grid = longmem::pow2_k_grid(w.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(longmem::pox_plot(w, 100, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PoxPlot)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_LoTest(benchmark::State& state) {
  const auto w = sign_fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(longmem::lo_test(w, longmem::Bandwidth::andrews()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LoTest)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_DfaEstimate(benchmark::State& state) {
  const auto w = sign_fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(longmem::dfa_estimate(w));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DfaEstimate)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_GphEstimate(benchmark::State& state) {
  const auto w = sign_fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(longmem::gph_estimate(w, longmem::CRule::SqrtN));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GphEstimate)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_CusumEstimate(benchmark::State& state) {
  const auto w = sign_fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(longmem::cusum_estimate(w));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CusumEstimate)->Arg(1 << 20)->Arg(6'000'000)->Unit(benchmark::kMillisecond);

void BM_GenFgn(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(longmem::gen_fgn(static_cast<std::size_t>(state.range(0)), 0.7, 11));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenFgn)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
