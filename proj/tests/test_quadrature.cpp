#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zcurve/quadrature.hpp"
#include "reference_values.hpp"

using namespace zcurve;
namespace ref = zcurve_test;

namespace {

bool has_finding(const std::vector<Finding>& fs, const std::string& code) {
  return std::any_of(fs.begin(), fs.end(),
                     [&](const Finding& f) { return f.code == code; });
}

}  // namespace

TEST_CASE("smooth integrals converge to analytic values") {
  auto r = integrate_smooth([](double t) { return std::sin(t); }, 0.0, kPi,
                            1e-12);
  CHECK(std::fabs(r.value - 2.0) <= 1e-12);
  CHECK(r.abs_error_estimate <= 1e-12 * 2.0 * 1.0001);

  auto one = integrate_smooth([](double) { return 1.0; }, 0.0, 1.0, 1e-10);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one.subdivisions == 0);  // a constant is accepted on the first panel

  // K15 is exact through degree 29, so splits stay in the single digits
  auto poly = integrate_smooth([](double t) { return std::pow(t, 20.0); }, 0.0,
                               1.0, 1e-10);
  CHECK(std::fabs(poly.value - 1.0 / 21.0) <= 1e-15);
  CHECK(poly.subdivisions <= 4);
}

TEST_CASE("oscillatory integrands are resolved by subdivision") {
  auto r = integrate_smooth([](double t) { return std::cos(t); }, 0.0,
                            20.0 * kPi, 1e-10);
  CHECK(std::fabs(r.value) <= 1e-10);
  auto s = integrate_smooth([](double t) { return std::sin(t) * std::sin(t); },
                            0.0, 20.0 * kPi, 1e-10);
  CHECK(s.value == doctest::Approx(10.0 * kPi).epsilon(1e-10));
  CHECK(s.subdivisions >= 2);
}

TEST_CASE("error estimates respect the tolerance contract") {
  auto f = [](double t) { return std::sqrt(t); };
  auto coarse = integrate_smooth(f, 0.0, 1.0, 1e-5);
  auto fine = integrate_smooth(f, 0.0, 1.0, 1e-10);
  CHECK(fine.abs_error_estimate <= coarse.abs_error_estimate);
  CHECK(std::fabs(fine.value - 2.0 / 3.0) <= 1e-9);
  CHECK(fine.abs_error_estimate <= 1e-10 * 1.0001);
  CHECK(fine.subdivisions > coarse.subdivisions);
}

TEST_CASE("domain guards") {
  auto f = [](double) { return 1.0; };
  CHECK_THROWS_AS((void)integrate_smooth(f, 0.0, 1.0, 1e-13),
                  std::domain_error);
  CHECK_THROWS_AS((void)integrate_smooth(f, 0.0, 1.0, 1e-3),
                  std::domain_error);
  CHECK_THROWS_AS((void)integrate_smooth(f, 1.0, 0.0, 1e-8),
                  std::domain_error);
  auto nanf = [](double) { return std::nan(""); };
  CHECK_THROWS_AS((void)integrate_smooth(nanf, 0.0, 1.0, 1e-8),
                  std::runtime_error);
}

TEST_CASE("kink seeding clips to the interior and splits |t - c|") {
  auto f = [](double t) { return std::fabs(t - 0.5); };
  auto r = integrate_with_kinks(f, 0.0, 1.0, {-5.0, 0.5, 27.0}, 1e-12);
  CHECK(r.kink_points_used == 1);  // the two exterior markers are dropped
  CHECK(std::fabs(r.value - 0.25) <= 1e-14);  // both pieces are linear

  auto degenerate = integrate_with_kinks(f, 0.3, 0.3, {}, 1e-8);
  CHECK(degenerate.value == 0.0);
  CHECK(degenerate.subdivisions == 0);
}

TEST_CASE("cosine arc length matches the closed-form elliptic value") {
  ZModel m = make_cosine_model(1.0, 1.0, 0.0);
  auto r = arc_length(m, 0.0, kTwoPi, 1e-10);
  CHECK(std::fabs(r.value - ref::kCosArcLength) <= 1e-10);
}

TEST_CASE("arc length over [100, 110] matches the oracle") {
  auto r = arc_length(Window{100.0, 10.0}, {}, 1e-9);
  CHECK(std::fabs(r.value - ref::kArcLength_100_110) <= 1e-8);
  CHECK(r.value >= 10.0);  // arc is never shorter than the t-axis chord
}

TEST_CASE("absolute derivative integral over [100, 110] matches the oracle") {
  std::vector<Finding> findings;
  ThetaResidual tr = theta_residual(Window{100.0, 10.0}, {}, 1e-9, &findings);
  CHECK(findings.empty());
  CHECK(std::fabs(tr.absint - ref::kAbsZprimeInt_100_110) <= 1e-8);
  CHECK(std::fabs(tr.arc - ref::kArcLength_100_110) <= 1e-8);
  CHECK(tr.arc >= tr.absint);
  CHECK(tr.arc >= 10.0);
  CHECK(tr.theta > 0.0);
  CHECK(tr.theta < 1.0);
  CHECK(tr.theta == (tr.arc - tr.absint) / 10.0);
}

TEST_CASE("pairwise identity holds at every extremum in [100, 200]") {
  EvalOptions opts;
  auto zeros = find_zeros(Window{100.0, 100.0}, opts);
  auto extrema = find_extrema(zeros, opts);
  REQUIRE(extrema.size() >= 25);
  std::vector<Finding> findings;
  double worst = 0.0;
  for (const auto& e : extrema)
    worst = std::max(worst, pair_identity_check(e, opts, 1e-9, &findings));
  CHECK(worst <= 1e-7);
  CHECK(findings.empty());
}

TEST_CASE("pairwise identity is exact on a synthetic arch") {
  ZModel m = make_cosine_model(3.0, 1.0, 0.0);
  // arch between the zeros pi/2 and 3pi/2, minimum at pi
  ExtremumPoint e{kPi, -3.0, kPi / 2.0, 3.0 * kPi / 2.0};
  std::vector<Finding> findings;
  double resid = pair_identity_check(m, e, 1e-12, &findings);
  CHECK(resid <= 1e-12);
  CHECK(findings.empty());
}

TEST_CASE("degenerate extrema are flagged, not divided through") {
  ZModel flat = make_constant_model(0.0);
  ExtremumPoint e{0.5, 0.0, 0.0, 1.0};
  std::vector<Finding> findings;
  (void)pair_identity_check(flat, e, 1e-9, &findings);
  CHECK(has_finding(findings, "degenerate-extremum"));
}

TEST_CASE("a missed sign change inside a smooth piece is reported") {
  ZModel m = make_cosine_model(1.0, 1.0, 0.0);
  std::vector<Finding> findings;
  // Z' = -sin changes sign at pi; pass no kinks over [1, 5]
  auto r = integrate_abs_zprime(m, 1.0, 5.0, {}, 1e-9, &findings);
  CHECK(has_finding(findings, "kink-missed"));
  // integral of |sin| over [1, 5] splits at pi: (cos 1 + 1) + (cos 5 + 1)
  const double expected = std::cos(1.0) + std::cos(5.0) + 2.0;
  CHECK(std::fabs(r.value - expected) <= 1e-7);
}

TEST_CASE("set integrals sum per-interval pieces") {
  IntervalSet s;
  CHECK(integrate_over_set(s, [](double) { return 1.0; }, 1e-9).value == 0.0);
  s.intervals = {{0.0, 1.0}, {2.0, 3.0}};
  auto id = integrate_over_set(s, [](double t) { return t; }, 1e-10);
  CHECK(std::fabs(id.value - 3.0) <= 1e-12);
  auto unit = integrate_over_set(s, [](double) { return 1.0; }, 1e-10);
  CHECK(std::fabs(unit.value - s.measure()) <= 1e-13);
}

TEST_CASE("Z' set integrals agree with the telescoped endpoint sum") {
  Window w{10000.0, 50.0};
  auto [g1, g2] = build_g_sets(w, 0.6, 0.6);
  ZModel m = make_rs_model({});
  std::vector<Finding> findings;
  auto r = integrate_zprime_over_set(m, g1, 1e-9, &findings);
  CHECK(findings.empty());
  Kahan<double> telescoped;
  for (const auto& iv : g1.intervals)
    telescoped.add(m.z(iv.second) - m.z(iv.first));
  CHECK(std::fabs(r.value - telescoped.value()) <= 1e-8);
}

TEST_CASE("theta degenerates to 1 on a flat curve and is flagged") {
  ZModel flat = make_constant_model(1.0);
  std::vector<Finding> findings;
  ThetaResidual tr = theta_residual(flat, 100.0, 110.0, 1e-9, &findings);
  CHECK(tr.arc == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(std::fabs(tr.absint) <= 1e-14);
  CHECK(tr.theta == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(has_finding(findings, "theta-degenerate"));
}
