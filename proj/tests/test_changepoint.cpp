#include <doctest.h>

#include <cmath>

#include "longmem/changepoint.hpp"
#include "longmem/errors.hpp"
#include "longmem/synth.hpp"
#include "oracles.hpp"

using namespace longmem;

TEST_CASE("cusum finds a noiseless step exactly") {
  const std::vector<double> z = {0, 0, 0, 1, 1, 1};
  CHECK(cusum_estimate(z) == 3);

  // Same step through the generator.
  GenSpec base;
  base.kind = GenSpec::Kind::Ar1;
  base.phi = 0.0;
  base.sigma_eps = 0.0;
  const auto gen = gen_mean_shift(6, 3, 1.0, base, 1);
  CHECK(gen == z);
  CHECK(cusum_estimate(gen) == 3);

  // Interior steps of any height at other positions.
  for (std::size_t r : {2u, 5u, 9u}) {
    std::vector<double> zz(12, 0.0);
    for (std::size_t t = r; t < zz.size(); ++t) zz[t] = -2.5;
    CHECK(cusum_estimate(zz) == r);
  }
}

TEST_CASE("constant series ties resolve to r = 1") {
  CHECK(cusum_estimate(std::vector<double>(4, 1.0)) == 1);
  CHECK(cusum_estimate(std::vector<double>(4, 3.5)) == 1);
  CHECK(cusum_estimate(std::vector<double>(8, -2.25)) == 1);
}

TEST_CASE("cusum is invariant to shifts and positive scaling") {
  const SignSeries s = gen_iid_signs(2000, 0.5, 111);
  std::vector<double> z(s.values().begin(), s.values().end());
  const std::size_t r = cusum_estimate(z);

  std::vector<double> shifted(z);
  for (double& v : shifted) v += 2.0;
  CHECK(cusum_estimate(shifted) == r);

  std::vector<double> scaled(z);
  for (double& v : scaled) v *= 2.0;
  CHECK(cusum_estimate(scaled) == r);

  Rng rng(112);
  std::vector<double> gauss(5000);
  for (double& v : gauss) v = rng.next_gaussian();
  const std::size_t rg = cusum_estimate(gauss);
  for (double& v : gauss) v += 3.0;
  CHECK(cusum_estimate(gauss) == rg);
}

TEST_CASE("cusum needs 3 points") {
  CHECK_THROWS_AS(cusum_estimate(std::vector<double>{1.0, -1.0}), Error);
}

TEST_CASE("normalized change point") {
  CHECK(normalize_cp(50, 50, 100) == 0.0);
  CHECK(normalize_cp(1, 50, 100) == doctest::Approx((1.0 - 50.0) / 50.0));
  CHECK(normalize_cp(100, 50, 100) == 1.0);
  CHECK(normalize_cp(25, 50, 100) == doctest::Approx(-0.5));
  CHECK(normalize_cp(75, 50, 100) == doctest::Approx(0.5));
  CHECK_THROWS_AS(normalize_cp(5, 1, 100), Error);
  CHECK_THROWS_AS(normalize_cp(5, 100, 100), Error);
  try {
    normalize_cp(0, 50, 100);
    FAIL("expected OutOfRange");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::OutOfRange);
  }
}

TEST_CASE("r_tilde stays in [-1, 1]") {
  const std::size_t n = 64;
  for (std::size_t r_star = 2; r_star <= n - 1; r_star += 7) {
    for (std::size_t r_hat = 1; r_hat <= n; ++r_hat) {
      const double rt = normalize_cp(r_hat, r_star, n);
      CHECK(rt >= -1.0);
      CHECK(rt <= 1.0);
      if (r_hat == r_star) CHECK(rt == 0.0);
      if (r_hat != r_star) CHECK(rt != 0.0);
    }
  }
}

TEST_CASE("berkes test segments are guarded") {
  // A spike near the start drags the estimate below the minimum segment length.
  std::vector<double> z(100, 0.0);
  Rng rng(117);
  for (double& v : z) v = 0.01 * rng.next_gaussian();
  for (std::size_t t = 3; t < z.size(); ++t) z[t] += 50.0;
  try {
    berkes_test(z, 1);
    FAIL("expected SegmentTooShort");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::SegmentTooShort);
  }
}

TEST_CASE("constant segments raise rather than produce NaN") {
  std::vector<double> z(40, 0.0);
  for (std::size_t t = 20; t < z.size(); ++t) z[t] = 1.0;
  SUBCASE("fixed bandwidth reports zero variance") {
    BerkesOptions opts;
    opts.bandwidth = Bandwidth::fixed(2);
    try {
      berkes_test(z, 1, opts);
      FAIL("expected ZeroVariance");
    } catch (const Error& err) {
      CHECK(err.code() == Errc::ZeroVariance);
    }
  }
  SUBCASE("Andrews bandwidth reports the degenerate AR fit") {
    try {
      berkes_test(z, 1);
      FAIL("expected DegenerateSeries");
    } catch (const Error& err) {
      CHECK(err.code() == Errc::DegenerateSeries);
    }
  }
}

TEST_CASE("berkes result structure") {
  Rng rng(119);
  std::vector<double> z(4000);
  for (double& v : z) v = rng.next_gaussian();

  const ChangePointResult none = berkes_test(z, 0);
  CHECK(none.r_hat.empty());
  CHECK(none.t_stats.size() == 1);
  CHECK(none.q_used.size() == 1);
  CHECK(none.m_stat == none.t_stats[0]);
  CHECK(none.m_stat >= 0.0);
  CHECK(!none.r_tilde.has_value());
  CHECK(none.reject_1pct == (none.m_stat > 1.72));

  BerkesOptions opts;
  opts.r_star = 2000;
  const ChangePointResult one = berkes_test(z, 1, opts);
  CHECK(one.r_hat.size() == 1);
  CHECK(one.t_stats.size() == 2);
  CHECK(one.q_used.size() == 2);
  CHECK(one.m_stat == std::max(one.t_stats[0], one.t_stats[1]));
  REQUIRE(one.r_tilde.has_value());
  CHECK(*one.r_tilde == normalize_cp(one.r_hat[0], 2000, z.size()));
  CHECK(one.r_hat[0] >= 2);
  CHECK(one.r_hat[0] <= z.size() - 1);

  const ChangePointResult two = berkes_test(z, 2, opts);
  CHECK(two.r_hat.size() == 2);
  CHECK(two.t_stats.size() == 3);
  CHECK(two.q_used.size() == 3);
  CHECK(two.r_hat[0] == one.r_hat[0]);  // first break estimated on the full series

  CHECK_THROWS_AS(berkes_test(z, 3), Error);
}

TEST_CASE("second-segment sum convention flag changes only T2") {
  Rng rng(127);
  std::vector<double> z(5000);
  for (double& v : z) v = rng.next_gaussian();

  BerkesOptions printed;
  BerkesOptions clean;
  clean.sums_from_segment_start = true;
  const ChangePointResult a = berkes_test(z, 1, printed);
  const ChangePointResult b = berkes_test(z, 1, clean);
  CHECK(a.r_hat[0] == b.r_hat[0]);
  CHECK(a.t_stats[0] == b.t_stats[0]);
  CHECK(a.t_stats[1] != b.t_stats[1]);
}

TEST_CASE("mean shift is absorbed by the split" * doctest::test_suite("slow")) {
  GenSpec base;
  base.kind = GenSpec::Kind::Ar1;
  base.phi = 0.0;
  base.sigma_eps = 1.0;
  int rejects = 0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    const auto z = gen_mean_shift(30'000, 15'000, 1.0, base, 1300 + s);
    if (berkes_test(z, 1).reject_1pct) ++rejects;
  }
  CHECK(rejects <= 2);
}

TEST_CASE("fGn power grows with series length" * doctest::test_suite("slow")) {
  // Power against H = 0.7 climbs with N (the statistic scales like N^(H-1/2));
  // at N = 1e6 and above the test rejects essentially always.
  int rejects[3] = {0, 0, 0};
  for (int s = 0; s < 10; ++s) {
    const auto z = gen_fgn(100'000, 0.7, 1400 + s);
    for (int breaks : {0, 1, 2}) rejects[breaks] += berkes_test(z, breaks).reject_1pct;
  }
  for (int breaks : {0, 1, 2}) CHECK(rejects[breaks] >= 5);

  for (int s = 0; s < 2; ++s) {
    const auto z = gen_fgn(1'000'000, 0.7, 1500 + s);
    for (int breaks : {0, 1, 2}) {
      CHECK(berkes_test(z, breaks).reject_1pct);
    }
  }
}

TEST_CASE("null ECDF determinism and shape") {
  const NullEcdf a = null_ecdf(100, 2000, 42, 1);
  const NullEcdf b = null_ecdf(100, 2000, 42, 4);
  REQUIRE(a.r_tilde.size() == 100);
  CHECK(a.r_tilde == b.r_tilde);  // independent of thread count

  const NullEcdf c = null_ecdf(100, 2000, 43, 2);
  CHECK(a.r_tilde != c.r_tilde);

  CHECK(std::is_sorted(a.r_tilde.begin(), a.r_tilde.end()));
  CHECK(a.cum_prob(-1.0 - 1e-12) == 0.0);
  CHECK(a.cum_prob(1.0) == 1.0);
  CHECK_THROWS_AS(null_ecdf(50, 2000, 1, 1), Error);
}

TEST_CASE("null ECDF is broad and symmetric" * doctest::test_suite("slow")) {
  const NullEcdf ecdf = null_ecdf(400, 5000, 77, 4);
  CHECK(ecdf.median() > -0.2);
  CHECK(ecdf.median() < 0.2);
  // Broad: a fair mass sits away from zero.
  CHECK(ecdf.cum_prob(0.5) < 0.95);
  CHECK(ecdf.cum_prob(-0.5) > 0.05);
}

TEST_CASE("null distribution is stable across independent batches" *
          doctest::test_suite("slow")) {
  // Two Monte Carlo batches at desk scale; their ECDFs must agree.
  const NullEcdf a = null_ecdf(1000, 100'000, 101, 4);
  const NullEcdf b = null_ecdf(1000, 100'000, 202, 4);
  CHECK(oracle::ks_distance(a.r_tilde, b.r_tilde) < 0.05);
}
