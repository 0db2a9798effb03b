#include "zcurve/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace zcurve {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
// Odd-indexed abscissae (and the centre) are the embedded Gauss nodes.
constexpr double kXGK[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWGK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo = 0.0, hi = 0.0;
  double value = 0.0;
  double error = 0.0;
};

Segment gk15(const Integrand& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const double fc = f(c);
  double resk = kWGK[7] * fc;
  double resg = kWG[3] * fc;
  double resabs = kWGK[7] * std::fabs(fc);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = kXGK[j] * h;
    fv1[j] = f(c - dx);
    fv2[j] = f(c + dx);
    const double fsum = fv1[j] + fv2[j];
    resk += kWGK[j] * fsum;
    resabs += kWGK[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
    if (j % 2 == 1) resg += kWG[j / 2] * fsum;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWGK[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc +=
        kWGK[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
  resasc *= std::fabs(h);
  resabs *= std::fabs(h);
  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  Segment s;
  s.lo = lo;
  s.hi = hi;
  s.value = resk * h;
  s.error = err;
  return s;
}

struct WorseFirst {
  bool operator()(const Segment& a, const Segment& b) const {
    if (a.error != b.error) return a.error < b.error;
    return a.lo > b.lo;  // tie-break: leftmost first
  }
};

constexpr int kMaxSubdivisions = 5000;

bool stalled(const Segment& s) {
  const double scale = std::max(std::fabs(s.lo), std::fabs(s.hi));
  return s.hi - s.lo <= 4.0 * std::numeric_limits<double>::epsilon() * scale;
}

QuadratureResult adaptive(const Integrand& f, const std::vector<double>& knots,
                          double tol) {
  std::priority_queue<Segment, std::vector<Segment>, WorseFirst> queue;
  std::vector<Segment> frozen;
  double sum_val = 0.0, sum_err = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    Segment s = gk15(f, knots[i], knots[i + 1]);
    sum_val += s.value;
    sum_err += s.error;
    queue.push(s);
  }
  int subdivisions = 0;
  while (sum_err > tol * std::max(1.0, std::fabs(sum_val)) && !queue.empty()) {
    Segment worst = queue.top();
    if (stalled(worst)) {
      // cannot be split further at machine resolution; keep its estimate
      queue.pop();
      frozen.push_back(worst);
      continue;
    }
    if (++subdivisions > kMaxSubdivisions)
      throw std::runtime_error(
          "integrate: max subdivisions exceeded; deepest interval [" +
          fmt17(worst.lo) + ", " + fmt17(worst.hi) + "]");
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    Segment a = gk15(f, worst.lo, mid);
    Segment b = gk15(f, mid, worst.hi);
    sum_val += a.value + b.value - worst.value;
    sum_err += a.error + b.error - worst.error;
    queue.push(a);
    queue.push(b);
  }
  // deterministic final accumulation in ascending interval order
  std::vector<Segment> all(std::move(frozen));
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  Kahan<double> val, err;
  for (const auto& s : all) {
    val.add(s.value);
    err.add(s.error);
  }
  QuadratureResult r;
  r.value = val.value();
  r.abs_error_estimate = err.value();
  r.subdivisions = subdivisions;
  if (!std::isfinite(r.value))
    throw std::runtime_error("integrate: non-finite integrand or result");
  return r;
}

void check_tol(double tol) {
  if (!(tol >= 1e-12 && tol <= 1e-4))
    throw std::domain_error("integrate: tol must lie in [1e-12, 1e-4]");
}

std::vector<double> knots_with_kinks(double lo, double hi,
                                     const std::vector<double>& kinks) {
  std::vector<double> knots;
  knots.push_back(lo);
  for (double k : kinks)
    if (k > lo && k < hi) knots.push_back(k);
  knots.push_back(hi);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  return knots;
}

}  // namespace

QuadratureResult integrate_smooth(const Integrand& f, double lo, double hi,
                                  double tol) {
  if (!(lo < hi)) throw std::domain_error("integrate_smooth: requires lo < hi");
  check_tol(tol);
  return adaptive(f, {lo, hi}, tol);
}

QuadratureResult integrate_with_kinks(const Integrand& f, double lo, double hi,
                                      const std::vector<double>& kinks,
                                      double tol) {
  if (lo == hi) return {};
  if (!(lo < hi))
    throw std::domain_error("integrate_with_kinks: requires lo <= hi");
  check_tol(tol);
  std::vector<double> knots = knots_with_kinks(lo, hi, kinks);
  QuadratureResult r = adaptive(f, knots, tol);
  r.kink_points_used = static_cast<int>(knots.size()) - 2;
  return r;
}

QuadratureResult arc_length(const ZModel& m, double lo, double hi, double tol,
                            const std::vector<double>* seeds,
                            int parallelism) {
  if (!(lo < hi)) throw std::domain_error("arc_length: requires lo < hi");
  check_tol(tol);
  std::vector<double> seed_points;
  if (seeds) {
    seed_points = *seeds;
  } else {
    auto zeros = find_zeros(m, lo, hi, nullptr, parallelism);
    for (const auto& zp : zeros) seed_points.push_back(zp.t);
    for (const auto& e : find_extrema(m, zeros, nullptr, parallelism))
      seed_points.push_back(e.t);
  }
  auto integrand = [&m](double t) { return std::hypot(1.0, m.z_prime(t)); };
  QuadratureResult r =
      adaptive(integrand, knots_with_kinks(lo, hi, seed_points), tol);
  r.kink_points_used = 0;  // seeds are smooth points, not kinks
  return r;
}

QuadratureResult arc_length(const Window& w, const EvalOptions& opts,
                            double tol, int parallelism) {
  w.validate();
  return arc_length(make_rs_model(opts), w.lo(), w.hi(), tol, nullptr,
                    parallelism);
}

QuadratureResult integrate_abs_zprime(const ZModel& m, double lo, double hi,
                                      const std::vector<double>& kinks,
                                      double tol,
                                      std::vector<Finding>* findings) {
  if (lo == hi) return {};
  if (!(lo < hi))
    throw std::domain_error("integrate_abs_zprime: requires lo <= hi");
  check_tol(tol);
  auto integrand = [&m](double t) { return std::fabs(m.z_prime(t)); };
  std::vector<double> knots = knots_with_kinks(lo, hi, kinks);
  QuadratureResult r = adaptive(integrand, knots, tol);
  r.kink_points_used = static_cast<int>(knots.size()) - 2;
  if (findings) {
    // post-hoc smoothness check: Z' must keep one sign inside each piece
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      double prev = 0.0;
      bool flipped = false;
      for (int k = 1; k <= 9; k += 2) {
        double v = m.z_prime(knots[i] + (knots[i + 1] - knots[i]) * k / 10.0);
        if (prev * v < 0.0) flipped = true;
        if (v != 0.0) prev = v;
      }
      if (flipped)
        findings->push_back(
            {"kink-missed",
             "Z' changes sign inside piece (" + fmt17(knots[i]) + ", " +
                 fmt17(knots[i + 1]) + "); kink list incomplete",
             knots[i]});
    }
  }
  return r;
}

QuadratureResult integrate_abs_zprime(double lo, double hi,
                                      const std::vector<double>& kinks,
                                      const EvalOptions& opts, double tol,
                                      std::vector<Finding>* findings) {
  return integrate_abs_zprime(make_rs_model(opts), lo, hi, kinks, tol,
                              findings);
}

double pair_identity_check(const ZModel& m, const ExtremumPoint& e, double tol,
                           std::vector<Finding>* findings) {
  if (!(e.left_zero < e.t && e.t < e.right_zero))
    throw std::domain_error(
        "pair_identity_check: extremum must lie strictly between its "
        "bracketing zeros");
  const double two_z = 2.0 * std::fabs(e.z_value);
  if (two_z < 2e-10 && findings)
    findings->push_back({"degenerate-extremum",
                         "|Z(t0)| < 1e-10 at t0=" + fmt17(e.t) +
                             "; residual left unnormalized",
                         e.t});
  QuadratureResult integral =
      integrate_abs_zprime(m, e.left_zero, e.right_zero, {e.t}, tol, findings);
  return std::fabs(integral.value - two_z) / std::max(1.0, two_z);
}

double pair_identity_check(const ExtremumPoint& e, const EvalOptions& opts,
                           double tol, std::vector<Finding>* findings) {
  return pair_identity_check(make_rs_model(opts), e, tol, findings);
}

QuadratureResult integrate_over_set(const IntervalSet& s, const Integrand& f,
                                    double tol) {
  s.validate();
  check_tol(tol);
  QuadratureResult total;
  Kahan<double> val, err;
  for (const auto& iv : s.intervals) {
    QuadratureResult r = adaptive(f, {iv.first, iv.second}, tol);
    val.add(r.value);
    err.add(r.abs_error_estimate);
    total.subdivisions += r.subdivisions;
  }
  total.value = val.value();
  total.abs_error_estimate = err.value();
  return total;
}

QuadratureResult integrate_zprime_over_set(const ZModel& m,
                                           const IntervalSet& s, double tol,
                                           std::vector<Finding>* findings) {
  QuadratureResult r = integrate_over_set(s, m.z_prime, tol);
  Kahan<double> telescoped;
  for (const auto& iv : s.intervals)
    telescoped.add(m.z(iv.second) - m.z(iv.first));
  const double gap = std::fabs(r.value - telescoped.value());
  if (gap > 1e-8 * std::max(1.0, std::fabs(telescoped.value())) && findings)
    findings->push_back(
        {"telescoping-mismatch",
         "set integral of Z' (" + fmt17(r.value) +
             ") deviates from endpoint telescoping (" +
             fmt17(telescoped.value()) + ")",
         s.intervals.empty() ? 0.0 : s.intervals.front().first});
  return r;
}

ThetaResidual theta_residual(const ZModel& m, double lo, double hi, double tol,
                             std::vector<Finding>* findings, int parallelism) {
  if (!(lo < hi)) throw std::domain_error("theta_residual: requires lo < hi");
  check_tol(tol);
  auto zeros = find_zeros(m, lo, hi, nullptr, parallelism);
  std::vector<double> kinks;
  std::vector<double> seeds;
  if (zeros.size() >= 2) {
    for (const auto& e : find_extrema(m, zeros, findings, parallelism))
      kinks.push_back(e.t);
    // partial boundary arches still contain stationary points of Z
    for (double r : zprime_roots(m, lo, zeros.front().t)) kinks.push_back(r);
    for (double r : zprime_roots(m, zeros.back().t, hi)) kinks.push_back(r);
  } else {
    for (double r : zprime_roots(m, lo, hi)) kinks.push_back(r);
  }
  for (const auto& zp : zeros) seeds.push_back(zp.t);
  seeds.insert(seeds.end(), kinks.begin(), kinks.end());

  ThetaResidual out;
  out.arc = arc_length(m, lo, hi, tol, &seeds).value;
  out.absint = integrate_abs_zprime(m, lo, hi, kinks, tol, findings).value;
  out.theta = (out.arc - out.absint) / (hi - lo);
  if (findings) {
    if (out.theta == 1.0)
      findings->push_back({"theta-degenerate",
                           "theta at boundary value 1 (zero-derivative "
                           "integrand?)",
                           lo});
    if (!(out.theta > 0.0 && out.theta < 1.0))
      findings->push_back({"theta-range",
                           "theta out of range (0,1): " + fmt17(out.theta), lo});
  }
  return out;
}

ThetaResidual theta_residual(const Window& w, const EvalOptions& opts,
                             double tol, std::vector<Finding>* findings,
                             int parallelism) {
  w.validate();
  return theta_residual(make_rs_model(opts), w.lo(), w.hi(), tol, findings,
                        parallelism);
}

}  // namespace zcurve
