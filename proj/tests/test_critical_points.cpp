#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "zcurve/critical_points.hpp"
#include "reference_values.hpp"

using namespace zcurve;
namespace ref = zcurve_test;

TEST_CASE("window validation") {
  CHECK_THROWS_AS((Window{50.0, 10.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((Window{100.0, 0.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((Window{100.0, -1.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((Window{9.999e11, 2e9}.validate()), std::domain_error);
  CHECK_NOTHROW((Window{100.0, 10.0}.validate()));
  CHECK((Window{1e4, 9.0}.within_quarter_power()));
  CHECK(!(Window{1e4, 100.0}.within_quarter_power()));
}

TEST_CASE("zeros on [100, 110] match the oracle list") {
  std::vector<Finding> findings;
  auto zeros = find_zeros(Window{100.0, 10.0}, {}, &findings);
  REQUIRE(zeros.size() == 4);  // oracle zeros 101.32, 103.73, 105.45, 107.17
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    // truncation of the order-5 evaluator shifts roots by ~1e-8 near t=100
    CHECK(std::fabs(zeros[i].t - ref::kOracleZeros[i + 1]) <= 5e-8);
    CHECK(zeros[i].index_hint == static_cast<long long>(i));
    CHECK(zeros[i].residual <= 1e-9);
  }
  CHECK(findings.empty());
}

TEST_CASE("zero lists are strictly increasing with sane density") {
  auto zeros = find_zeros(Window{10000.0, 100.0});
  CHECK(zeros.size() == 118);  // includes the close pair at t ~ 10073.5
  for (std::size_t i = 0; i + 1 < zeros.size(); ++i)
    CHECK(zeros[i].t < zeros[i + 1].t);
  // Eq.-(2.6)-scale density: (H/2pi) ln(T/2pi) ~ 117.3
  const double predicted = 100.0 / kTwoPi * std::log(10000.0 / kTwoPi);
  CHECK(std::fabs(static_cast<double>(zeros.size()) - predicted) < 5.0);
}

TEST_CASE("close-pair rescue finds both zeros the coarse grid straddles") {
  auto zeros = find_zeros(Window{10000.0, 100.0});
  int inside = 0;
  for (const auto& zp : zeros)
    if (zp.t > 10073.4 && zp.t < 10073.7) ++inside;
  CHECK(inside == 2);  // spacing 0.169 vs scan step 0.213
}

TEST_CASE("zero counts are stable under grid halving") {
  EvalOptions opts;
  ZModel half = make_rs_model(opts);
  auto base_step = half.scan_step;
  half.scan_step = [base_step](double t) { return 0.5 * base_step(t); };
  auto coarse = find_zeros(Window{10000.0, 100.0}, opts);
  auto fine = find_zeros(half, 10000.0, 10100.0);
  CHECK(coarse.size() == fine.size());
  for (std::size_t i = 0; i < coarse.size(); ++i)
    CHECK(std::fabs(coarse[i].t - fine[i].t) <= 1e-9);
}

TEST_CASE("degenerate ranges are rejected") {
  CHECK_THROWS_AS((void)find_zeros(Window{100.0, 0.0}), std::domain_error);
  ZModel m = make_rs_model({});
  CHECK_THROWS_AS((void)find_zeros(m, 105.0, 105.0), std::domain_error);
}

TEST_CASE("extrema on [100, 112] match the oracle list") {
  std::vector<Finding> findings;
  auto zeros = find_zeros(Window{100.0, 12.0}, {}, &findings);
  REQUIRE(zeros.size() == 6);
  auto extrema = find_extrema(zeros, {}, &findings);
  REQUIRE(extrema.size() == 5);
  CHECK(findings.empty());
  // oracle rows 1..4 have both bracketing zeros inside [100, 112]
  for (int i = 0; i < 4; ++i) {
    CHECK(std::fabs(extrema[i].t - ref::kOracleExtrema[i + 1][0]) <= 1e-6);
    CHECK(std::fabs(extrema[i].z_value - ref::kOracleExtrema[i + 1][1]) <=
          1e-6);
  }
  for (std::size_t i = 0; i < extrema.size(); ++i) {
    CHECK(extrema[i].left_zero == zeros[i].t);
    CHECK(extrema[i].right_zero == zeros[i + 1].t);
    CHECK(extrema[i].t > extrema[i].left_zero);
    CHECK(extrema[i].t < extrema[i].right_zero);
    CHECK(std::fabs(extrema[i].z_value) > 0.0);
  }
}

TEST_CASE("interlacing: one extremum per gap over a long window") {
  EvalOptions opts;
  std::vector<Finding> findings;
  auto zeros = find_zeros(Window{10000.0, 100.0}, opts, &findings);
  auto extrema = find_extrema(zeros, opts, &findings);
  CHECK(extrema.size() == zeros.size() - 1);
  CHECK(findings.empty());
  ZModel m = make_rs_model(opts);
  for (const auto& e : extrema)
    CHECK(std::fabs(m.z_prime(e.t)) <= 1e-7);  // refinement residual
}

TEST_CASE("synthetic cosine model has exact analytic points") {
  const double A = 2.5, omega = 0.7, phase = 0.3;
  ZModel m = make_cosine_model(A, omega, phase);
  auto zeros = find_zeros(m, 100.0, 130.0);
  REQUIRE(zeros.size() == 7);
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    const double k = 22.0 + static_cast<double>(i);
    const double expected = (kPi / 2.0 + k * kPi - phase) / omega;
    CHECK(std::fabs(zeros[i].t - expected) <= 1e-9);
  }
  auto extrema = find_extrema(m, zeros);
  REQUIRE(extrema.size() == 6);
  for (const auto& e : extrema) {
    CHECK(std::fabs(std::fabs(e.z_value) - A) <= 1e-10);
    const double g = (e.t * omega + phase) / kPi;
    CHECK(std::fabs(g - std::round(g)) <= 1e-9);  // omega t + phase = k pi
  }
}

TEST_CASE("gram_like solves theta1 = pi near the classical Gram point") {
  // theta1(h) = pi * 0 + pi/2 + pi/2
  GramLikePoint p = gram_like(0, kPi / 2.0);
  CHECK(std::fabs(p.t - ref::kGramPointTheta1) <= 1e-9);
  CHECK(std::fabs(p.t - ref::kGramPointTheta) <= 0.003);
}

TEST_CASE("gram_like satisfies its defining equation to 1e-10") {
  for (long long nu : {5LL, 100LL, 648LL, 50000LL}) {
    for (double tau : {-2.0, 0.0, 1.3}) {
      GramLikePoint p = gram_like(nu, tau);
      const double target = kPi * static_cast<double>(nu) + tau + kPi / 2.0;
      CHECK(std::fabs(theta1(p.t) - target) <= 1e-10);
    }
  }
}

TEST_CASE("gram_like ordering and phase-wrap identities") {
  for (long long nu = 10; nu < 16; ++nu)
    CHECK(gram_like(nu + 1, 0.4).t > gram_like(nu, 0.4).t);
  // pi*nu + pi = pi*(nu+2) - pi: identical targets, identical ordinates
  CHECK(gram_like(7, kPi).t == gram_like(9, -kPi).t);
}

TEST_CASE("gram_like rejects out-of-branch requests") {
  CHECK_THROWS_AS((void)gram_like(0, 4.0), std::domain_error);   // |tau| > pi
  CHECK_THROWS_AS((void)gram_like(-1, 0.0), std::domain_error);  // t <= 2pi e
}

TEST_CASE("count_gram_like matches the (1/pi) H ln P prediction") {
  GramCountReport rep = count_gram_like(Window{1000.0, 100.0});
  CHECK(rep.count >= 79);
  CHECK(rep.count <= 82);
  CHECK(std::fabs(rep.deviation) <= 2.0);
  CHECK(rep.count == rep.nu_last - rep.nu_first + 1);
  // boundary indices really straddle the window
  CHECK(gram_like(rep.nu_first, 0.0).t >= 1000.0);
  CHECK(gram_like(rep.nu_first - 1, 0.0).t < 1000.0);
  CHECK(gram_like(rep.nu_last, 0.0).t <= 1100.0);
  CHECK(gram_like(rep.nu_last + 1, 0.0).t > 1100.0);
}

TEST_CASE("count_gram_like: tiny windows and tau invariance") {
  GramCountReport tiny = count_gram_like(Window{1000.0, 1e-6});
  CHECK(tiny.count <= 1);
  CHECK(std::fabs(tiny.deviation) < 1.0);
  long long c0 = count_gram_like(Window{10000.0, 100.0}, 0.0).count;
  long long c1 = count_gram_like(Window{10000.0, 100.0}, 1.1).count;
  CHECK(std::llabs(c0 - c1) <= 2);
}

TEST_CASE("G sets: measure scales like (x/pi) H") {
  Window w{10000.0, 100.0};
  const double x = 0.4, y = 0.7;
  auto [g1, g2] = build_g_sets(w, x, y);
  CHECK_NOTHROW(g1.validate());
  CHECK_NOTHROW(g2.validate());
  const double pace = std::log(std::sqrt(w.T / kTwoPi));  // theta1' ~ ln P
  CHECK(std::fabs(g1.measure() - x / kPi * w.H) <= 0.05 * w.H * x / kPi +
                                                       2.0 * x / pace);
  CHECK(std::fabs(g2.measure() - y / kPi * w.H) <= 0.05 * w.H * y / kPi +
                                                       2.0 * y / pace);
  CHECK(g1.measure() <= w.H);
  CHECK(g2.measure() <= w.H);
}

TEST_CASE("G sets at x = y = pi/2 abut without overlapping") {
  Window w{10000.0, 100.0};
  auto [g1, g2] = build_g_sets(w, kPi / 2.0, kPi / 2.0);
  // validate() checked disjointness per set; cross-set: merge and re-validate
  IntervalSet merged;
  merged.intervals = g1.intervals;
  merged.intervals.insert(merged.intervals.end(), g2.intervals.begin(),
                          g2.intervals.end());
  std::sort(merged.intervals.begin(), merged.intervals.end());
  CHECK_NOTHROW(merged.validate());
  CHECK(merged.measure() == doctest::Approx(w.H).epsilon(0.02));
}

TEST_CASE("G sets: tiny and invalid half-widths") {
  Window w{10000.0, 100.0};
  auto [g1, g2] = build_g_sets(w, 1e-9, 1e-9);
  CHECK(g1.measure() <= 1e-6);
  CHECK(g2.measure() <= 1e-6);
  CHECK_THROWS_AS((void)build_g_sets(w, 0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS((void)build_g_sets(w, 0.5, 2.0), std::domain_error);
}

TEST_CASE("split_by_sign partitions measure exactly") {
  Window w{10000.0, 100.0};
  auto [g1, g2] = build_g_sets(w, 0.5, 0.5);
  auto [plus, minus] = split_by_sign(g1, {});
  CHECK_NOTHROW(plus.validate());
  CHECK_NOTHROW(minus.validate());
  CHECK(std::fabs(plus.measure() + minus.measure() - g1.measure()) <= 1e-12);
  ZModel m = make_rs_model({});
  for (const auto& iv : plus.intervals)
    CHECK(m.z_prime(0.5 * (iv.first + iv.second)) > 0.0);
  for (const auto& iv : minus.intervals)
    CHECK(m.z_prime(0.5 * (iv.first + iv.second)) < 0.0);
}

TEST_CASE("split_by_sign: one stationary point gives two subintervals") {
  IntervalSet s;
  s.intervals = {{102.0, 103.0}};  // contains only t0 ~ 102.442
  auto [plus, minus] = split_by_sign(s, {});
  CHECK(plus.intervals.size() + minus.intervals.size() == 2);
}

TEST_CASE("interval set validation rejects overlap and disorder") {
  IntervalSet bad;
  bad.intervals = {{100.0, 103.0}, {102.5, 104.0}};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  IntervalSet empty_iv;
  empty_iv.intervals = {{100.0, 100.0}};
  CHECK_THROWS_AS(empty_iv.validate(), std::domain_error);
  IntervalSet ok;
  ok.intervals = {{100.0, 101.0}, {101.0, 102.5}};
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.measure() == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("point cache round-trips bit-exactly") {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / "zcurve_test_cache";
  fs::remove_all(dir);
  EvalOptions opts;
  auto zeros = find_zeros(Window{100.0, 10.0}, opts);
  auto extrema = find_extrema(zeros, opts);
  CacheKey key{100.0, 10.0, opts.hash()};
  cache_store(dir, key, zeros, extrema);

  std::vector<ZeroPoint> z2;
  std::vector<ExtremumPoint> e2;
  REQUIRE(cache_load(dir, key, &z2, &e2));
  REQUIRE(z2.size() == zeros.size());
  REQUIRE(e2.size() == extrema.size());
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    CHECK(z2[i].t == zeros[i].t);  // %.17g round-trips doubles exactly
    CHECK(z2[i].residual == zeros[i].residual);
  }
  for (std::size_t i = 0; i < extrema.size(); ++i) {
    CHECK(e2[i].t == extrema[i].t);
    CHECK(e2[i].z_value == extrema[i].z_value);
    CHECK(e2[i].left_zero == extrema[i].left_zero);
    CHECK(e2[i].right_zero == extrema[i].right_zero);
  }

  // a different options hash is a miss, not a mismatch
  CacheKey other{100.0, 10.0, opts.hash() + 1};
  CHECK(!cache_load(dir, other, &z2, &e2));

  // corrupting the header invalidates the record
  const fs::path file = dir / cache_file_name(key);
  std::ofstream(file, std::ios::trunc) << "# zcache 999 bogus\n";
  CHECK(!cache_load(dir, key, &z2, &e2));
  fs::remove_all(dir);
}
