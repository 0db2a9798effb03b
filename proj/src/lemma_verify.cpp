#include "zcurve/lemma_verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zcurve {

std::string to_string(LemmaId id) {
  switch (id) {
    case LemmaId::L1: return "L1";
    case LemmaId::L2: return "L2";
    case LemmaId::L3: return "L3";
    case LemmaId::L4: return "L4";
  }
  return "L?";
}

namespace {

double log_cutoff(const Window& w) { return std::log(std::sqrt(w.T / kTwoPi)); }

void check_tau(double tau) {
  if (!(tau >= -kPi && tau <= kPi))
    throw std::domain_error("tau must lie in [-pi, pi]");
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0 / 6.0 + 1e-15))
    throw std::domain_error("delta must lie in (0, 1/6]");
}

// All h_nu(tau) inside [T, T+H], ascending in nu.
std::vector<GramLikePoint> gram_points_in_window(const Window& w, double tau) {
  std::vector<GramLikePoint> pts;
  long double lo_idx = (detail::theta1_l(w.lo()) -
                        static_cast<long double>(tau) - kPiL / 2.0L) /
                       kPiL;
  long double hi_idx = (detail::theta1_l(w.hi()) -
                        static_cast<long double>(tau) - kPiL / 2.0L) /
                       kPiL;
  long long first = static_cast<long long>(ceill(lo_idx));
  long long last = static_cast<long long>(floorl(hi_idx));
  for (long long nu = first; nu <= last; ++nu)
    pts.push_back(gram_like(nu, tau));
  return pts;
}

// Everything the window-level integrals need: located points, the kink list
// (interior extrema plus the stationary points of the two partial boundary
// arches), and subdivision seeds.
struct WindowPoints {
  std::vector<ZeroPoint> zeros;
  std::vector<ExtremumPoint> extrema;
  std::vector<double> edge_kinks;
  std::vector<double> all_kinks;
  std::vector<double> seeds;
};

WindowPoints analyze(const ZModel& m, double lo, double hi,
                     std::vector<Finding>* findings, int parallelism) {
  WindowPoints p;
  p.zeros = find_zeros(m, lo, hi, findings, parallelism);
  if (p.zeros.size() >= 2) {
    p.extrema = find_extrema(m, p.zeros, findings, parallelism);
    for (const auto& e : p.extrema) p.all_kinks.push_back(e.t);
    for (double r : zprime_roots(m, lo, p.zeros.front().t))
      p.edge_kinks.push_back(r);
    for (double r : zprime_roots(m, p.zeros.back().t, hi))
      p.edge_kinks.push_back(r);
  } else {
    for (double r : zprime_roots(m, lo, hi)) p.edge_kinks.push_back(r);
  }
  p.all_kinks.insert(p.all_kinks.end(), p.edge_kinks.begin(),
                     p.edge_kinks.end());
  std::sort(p.all_kinks.begin(), p.all_kinks.end());
  for (const auto& zp : p.zeros) p.seeds.push_back(zp.t);
  p.seeds.insert(p.seeds.end(), p.all_kinks.begin(), p.all_kinks.end());
  std::sort(p.seeds.begin(), p.seeds.end());
  return p;
}

bool weakly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i + 1] > v[i] + 1e-12) return false;
  return !v.empty();
}

nlohmann::ordered_json findings_json(const std::vector<Finding>& fs) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& f : fs)
    arr.push_back({{"code", f.code}, {"detail", f.detail}, {"t", f.t}});
  return arr;
}

nlohmann::ordered_json window_json(const Window& w) {
  return {{"T", w.T}, {"H", w.H}};
}

}  // namespace

// --- Lemma 1 ------------------------------------------------------------------

std::pair<LemmaReport, LemmaReport> verify_lemma1(const Window& w, double tau,
                                                  const EvalOptions& opts,
                                                  double delta,
                                                  int parallelism) {
  w.validate();
  check_tau(tau);
  check_delta(delta);
  opts.validate();
  ZModel m = make_rs_model(opts);
  auto pts = gram_points_in_window(w, tau);
  std::vector<double> zp(pts.size());
  parallel_for(pts.size(), parallelism,
               [&](std::size_t i) { zp[i] = m.z_prime(pts[i].t); });
  Kahan<double> even_sum, odd_sum;
  for (std::size_t i = 0; i < pts.size(); ++i)
    ((pts[i].nu % 2 + 2) % 2 == 0 ? even_sum : odd_sum).add(zp[i]);

  const double lnP = log_cutoff(w);
  const double main_even = -(1.0 / kPi) * w.H * lnP * lnP * std::cos(tau);
  const double main_odd = -main_even;  // exact antisymmetry by construction
  const double lnT = std::log(w.T);
  const double scale = std::pow(w.T, delta) * lnT * lnT;

  LemmaReport even, odd;
  even.lemma_id = odd.lemma_id = LemmaId::L1;
  even.window = odd.window = w;
  even.params = odd.params = {{"tau", tau}, {"delta", delta}};
  even.variant = "even";
  even.lhs = even_sum.value();
  even.main_term = main_even;
  even.deviation = even.lhs - even.main_term;
  even.normalized_deviation = even.deviation / scale;
  even.ratio = main_even != 0.0 ? even.lhs / main_even : 0.0;
  odd.variant = "odd";
  odd.lhs = odd_sum.value();
  odd.main_term = main_odd;
  odd.deviation = odd.lhs - odd.main_term;
  odd.normalized_deviation = odd.deviation / scale;
  odd.ratio = main_odd != 0.0 ? odd.lhs / main_odd : 0.0;
  return {even, odd};
}

LemmaReport verify_alternating_sums(const Window& w, double tau,
                                    const EvalOptions& opts, double delta,
                                    int parallelism) {
  w.validate();
  check_tau(tau);
  check_delta(delta);
  opts.validate();
  ZModel m = make_rs_model(opts);
  auto pts = gram_points_in_window(w, tau);
  std::vector<double> zp(pts.size());
  parallel_for(pts.size(), parallelism,
               [&](std::size_t i) { zp[i] = m.z_prime(pts[i].t); });
  Kahan<double> plain, alternating;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    plain.add(zp[i]);
    alternating.add(((pts[i].nu % 2 + 2) % 2 == 0) ? zp[i] : -zp[i]);
  }
  const double lnP = log_cutoff(w);
  const double lnT = std::log(w.T);
  const double scale = std::pow(w.T, delta) * lnT * lnT;

  LemmaReport rep;
  rep.lemma_id = LemmaId::L1;
  rep.variant = "alternating";
  rep.window = w;
  rep.lhs = alternating.value();
  rep.main_term = -(2.0 / kPi) * w.H * lnP * lnP * std::cos(tau);
  rep.deviation = rep.lhs - rep.main_term;
  rep.normalized_deviation = rep.deviation / scale;
  rep.ratio = rep.main_term != 0.0 ? rep.lhs / rep.main_term : 0.0;
  rep.params = {{"tau", tau},
                {"delta", delta},
                {"plain_sum", plain.value()},
                {"plain_normalized", plain.value() / scale}};
  return rep;
}

// --- Lemma 2 -------------------------------------------------------------------

std::pair<LemmaReport, LemmaReport> verify_lemma2(const Window& w, double x,
                                                  double y,
                                                  const EvalOptions& opts,
                                                  double delta, double tol,
                                                  int parallelism) {
  w.validate();
  check_delta(delta);
  opts.validate();
  (void)parallelism;  // set integrals are already subsecond at these scales
  ZModel m = make_rs_model(opts);
  auto [g1, g2] = build_g_sets(w, x, y);

  const double lnP = log_cutoff(w);
  const double lnT = std::log(w.T);
  LemmaReport r1, r2;
  r1.lemma_id = r2.lemma_id = LemmaId::L2;
  r1.window = r2.window = w;
  r1.params = r2.params = {{"x", x}, {"y", y}, {"delta", delta}};

  r1.variant = "G1";
  r1.lhs = integrate_zprime_over_set(m, g1, tol, &r1.findings).value;
  r1.main_term = -(2.0 / kPi) * w.H * lnP * std::sin(x);
  r1.deviation = r1.lhs - r1.main_term;
  r1.normalized_deviation =
      r1.deviation / (x * std::pow(w.T, delta) * lnT);
  r1.ratio = r1.main_term != 0.0 ? r1.lhs / r1.main_term : 0.0;

  r2.variant = "G2";
  r2.lhs = integrate_zprime_over_set(m, g2, tol, &r2.findings).value;
  r2.main_term = (2.0 / kPi) * w.H * lnP * std::sin(y);
  r2.deviation = r2.lhs - r2.main_term;
  r2.normalized_deviation =
      r2.deviation / (y * std::pow(w.T, delta) * lnT);
  r2.ratio = r2.main_term != 0.0 ? r2.lhs / r2.main_term : 0.0;
  return {r1, r2};
}

// --- Lemma 3 --------------------------------------------------------------------

LemmaReport verify_lemma3(const Window& w, double eps, const EvalOptions& opts,
                          double tol, int parallelism) {
  w.validate();
  if (!(eps > 0.0 && eps < 0.5))
    throw std::domain_error("verify_lemma3: eps must lie in (0, 1/2)");
  opts.validate();
  ZModel m = make_rs_model(opts);

  LemmaReport rep;
  rep.lemma_id = LemmaId::L3;
  rep.variant = "ratio";
  rep.window = w;

  WindowPoints pts = analyze(m, w.lo(), w.hi(), &rep.findings, parallelism);
  rep.lhs = integrate_abs_zprime(m, w.lo(), w.hi(), pts.all_kinks, tol,
                                 &rep.findings)
                .value;
  rep.main_term = (4.0 / kPi) * w.H * log_cutoff(w);
  rep.deviation = rep.lhs - rep.main_term;
  rep.ratio = rep.lhs / rep.main_term;
  rep.normalized_deviation = rep.ratio - 1.0;
  if (!(rep.ratio > 1.0 - eps))
    rep.findings.push_back({"lemma3-bound",
                            "ratio " + fmt17(rep.ratio) +
                                " not above 1 - eps = " + fmt17(1.0 - eps),
                            w.T});

  // proof route: the sign-restricted halves of the G sets underestimate the
  // full integral (disjoint subsets of the window)
  auto abs_zprime = [&m](double t) { return std::fabs(m.z_prime(t)); };
  auto [g1, g2] = build_g_sets(w, kPi / 2.0, kPi / 2.0);
  auto g1_split = split_by_sign(m, g1, &rep.findings);
  auto g2_split = split_by_sign(m, g2, &rep.findings);
  const double route = integrate_over_set(g1_split.second, abs_zprime, tol).value +
                       integrate_over_set(g2_split.first, abs_zprime, tol).value;
  rep.params = {{"eps", eps}, {"route_sum", route}};
  if (route > rep.lhs * (1.0 + 1e-6) + 1e-9)
    rep.findings.push_back(
        {"route-inequality",
         "sign-split route sum " + fmt17(route) +
             " exceeds the full integral " + fmt17(rep.lhs),
         w.T});
  return rep;
}

// --- Lemma 4 ---------------------------------------------------------------------

LemmaReport verify_lemma4(const Window& w, const EvalOptions& opts, double tol,
                          int parallelism) {
  w.validate();
  opts.validate();
  ZModel m = make_rs_model(opts);

  LemmaReport rep;
  rep.lemma_id = LemmaId::L4;
  rep.variant = "decomposition";
  rep.window = w;

  WindowPoints pts = analyze(m, w.lo(), w.hi(), &rep.findings, parallelism);
  if (pts.zeros.size() < 2) {
    rep.findings.push_back({"too-few-zeros",
                            "window contains fewer than two zeros; "
                            "decomposition undefined",
                            w.T});
    return rep;
  }
  rep.lhs = integrate_abs_zprime(m, w.lo(), w.hi(), pts.all_kinks, tol,
                                 &rep.findings)
                .value;
  Kahan<double> twice;
  for (const auto& e : pts.extrema) twice.add(2.0 * std::fabs(e.z_value));
  rep.main_term = twice.value();
  rep.deviation = rep.lhs - rep.main_term;
  rep.edge_mass =
      integrate_abs_zprime(m, w.lo(), pts.zeros.front().t, pts.edge_kinks, tol,
                           &rep.findings)
          .value +
      integrate_abs_zprime(m, pts.zeros.back().t, w.hi(), pts.edge_kinks, tol,
                           &rep.findings)
          .value;
  // the decomposition residual relative to the integral is the L4 figure of
  // merit (the asymptotic error scale hides an unspecified constant)
  rep.normalized_deviation = (rep.deviation - rep.edge_mass) / rep.lhs;
  if (std::fabs(rep.deviation - rep.edge_mass) > 1e-6 * rep.lhs)
    rep.findings.push_back(
        {"decomposition-mismatch",
         "int |Z'| - 2 sum |Z(t0)| - edge_mass = " +
             fmt17(rep.deviation - rep.edge_mass) + " exceeds 1e-6 * lhs",
         w.T});
  return rep;
}

// --- Theorem -----------------------------------------------------------------------

TheoremReport verify_theorem(const Window& w, const EvalOptions& opts,
                             bool allow_wide, double mu, double tol,
                             int parallelism) {
  w.validate();
  opts.validate();
  if (!(mu > 0.0 && mu <= 0.25))
    throw std::domain_error("verify_theorem: mu must lie in (0, 1/4]");
  if (w.H < std::pow(w.T, mu))
    throw std::domain_error("verify_theorem: theorem mode requires H >= T^mu");
  if (!allow_wide && !w.within_quarter_power())
    throw std::domain_error(
        "verify_theorem: H above T^(1/4) rejected in theorem mode (pass "
        "allow_wide / --allow-wide to inspect such windows)");
  ZModel m = make_rs_model(opts);

  TheoremReport rep;
  rep.window = w;
  WindowPoints pts = analyze(m, w.lo(), w.hi(), &rep.findings, parallelism);
  rep.zero_count = static_cast<long long>(pts.zeros.size());
  rep.extremum_count = static_cast<long long>(pts.extrema.size());
  rep.gram_count = count_gram_like(w).count;
  if (pts.zeros.size() < 2) {
    rep.findings.push_back({"too-few-zeros",
                            "window contains fewer than two zeros; theorem "
                            "comparison undefined",
                            w.T});
    return rep;
  }

  rep.arc_len = arc_length(m, w.lo(), w.hi(), tol, &pts.seeds).value;
  rep.abs_deriv_integral = integrate_abs_zprime(m, w.lo(), w.hi(),
                                                pts.all_kinks, tol,
                                                &rep.findings)
                               .value;
  Kahan<double> twice;
  for (const auto& e : pts.extrema) twice.add(2.0 * std::fabs(e.z_value));
  rep.twice_sum_local_max = twice.value();
  rep.theta = (rep.arc_len - rep.abs_deriv_integral) / w.H;
  rep.residual = rep.arc_len - rep.twice_sum_local_max - rep.theta * w.H;
  rep.edge_mass =
      integrate_abs_zprime(m, w.lo(), pts.zeros.front().t, pts.edge_kinks, tol,
                           &rep.findings)
          .value +
      integrate_abs_zprime(m, pts.zeros.back().t, w.hi(), pts.edge_kinks, tol,
                           &rep.findings)
          .value;

  if (!(rep.theta > 0.0 && rep.theta < 1.0))
    rep.findings.push_back(
        {"theta-range", "theta out of range (0,1): " + fmt17(rep.theta), w.T});
  if (std::fabs(rep.residual - rep.edge_mass) > 1e-5 * rep.arc_len)
    rep.findings.push_back(
        {"decomposition-mismatch",
         "residual minus edge_mass = " + fmt17(rep.residual - rep.edge_mass) +
             " exceeds 1e-5 * arc_len",
         w.T});

  if (rep.twice_sum_local_max > 0.0) {
    rep.ratio_literal = rep.arc_len / rep.twice_sum_local_max;
    const double arc_aligned =
        arc_length(m, pts.zeros.front().t, pts.zeros.back().t, tol, &pts.seeds)
            .value;
    rep.ratio_aligned = arc_aligned / rep.twice_sum_local_max;
  }
  return rep;
}

// --- Littlewood diagnostics -----------------------------------------------------------

LittlewoodReport littlewood_diagnostics(
    const std::vector<ZeroPoint>& zeros,
    const std::vector<ExtremumPoint>& extrema) {
  if (zeros.size() < 2 || extrema.empty())
    throw std::domain_error(
        "littlewood_diagnostics: needs at least one zero pair and one "
        "extremum");
  LittlewoodReport rep;
  rep.max_gap_scaled = -std::numeric_limits<double>::infinity();
  rep.max_log_z_scaled = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < zeros.size(); ++i) {
    double v = (zeros[i + 1].t - zeros[i].t) * std::log(std::log(zeros[i].t));
    if (v > rep.max_gap_scaled) {
      rep.max_gap_scaled = v;
      rep.gap_at = zeros[i].t;
    }
  }
  for (const auto& e : extrema) {
    double v = std::log(std::fabs(e.z_value)) * std::log(std::log(e.t)) /
               std::log(e.t);
    if (v > rep.max_log_z_scaled) {
      rep.max_log_z_scaled = v;
      rep.log_z_at = e.t;
    }
  }
  return rep;
}

// --- sweep -------------------------------------------------------------------------

SweepReport sweep_theorem(const std::vector<double>& Ts, double p_exponent,
                          const EvalOptions& opts, bool allow_wide, double tol,
                          int parallelism) {
  if (!(p_exponent > 0.0 && p_exponent <= 0.25))
    throw std::domain_error(
        "sweep_theorem: H-rule exponent must lie in (0, 0.25]");
  if (Ts.empty()) throw std::domain_error("sweep_theorem: empty T list");
  SweepReport sweep;
  sweep.h_rule = "T^" + fmt_label(p_exponent);
  sweep.entries.resize(Ts.size());
  // validate every window before entering the parallel section
  for (double T : Ts) Window{T, std::pow(T, p_exponent)}.validate();
  parallel_for(Ts.size(), parallelism, [&](std::size_t i) {
    const double T = Ts[i];
    const double H = std::pow(T, p_exponent);
    sweep.entries[i] = {
        T, H,
        verify_theorem(Window{T, H}, opts, allow_wide,
                       std::min(0.1, p_exponent), tol, 1)};
  });
  std::vector<double> literal, aligned;
  for (const auto& e : sweep.entries) {
    literal.push_back(e.report.ratio_literal);
    aligned.push_back(e.report.ratio_aligned);
  }
  sweep.literal_weakly_decreasing = weakly_decreasing(literal);
  sweep.aligned_weakly_decreasing = weakly_decreasing(aligned);
  return sweep;
}

// --- JSON ---------------------------------------------------------------------------

nlohmann::ordered_json to_json(const LemmaReport& r) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  return {{"schema_version", "1"},
          {"kind", "lemma_report"},
          {"lemma", to_string(r.lemma_id)},
          {"variant", r.variant},
          {"window", window_json(r.window)},
          {"params", params},
          {"lhs", r.lhs},
          {"main_term", r.main_term},
          {"deviation", r.deviation},
          {"normalized_deviation", r.normalized_deviation},
          {"ratio", r.ratio},
          {"edge_mass", r.edge_mass},
          {"findings", findings_json(r.findings)}};
}

nlohmann::ordered_json to_json(const TheoremReport& r) {
  return {{"schema_version", "1"},
          {"kind", "theorem_report"},
          {"window", window_json(r.window)},
          {"arc_len", r.arc_len},
          {"twice_sum_local_max", r.twice_sum_local_max},
          {"abs_deriv_integral", r.abs_deriv_integral},
          {"theta", r.theta},
          {"residual", r.residual},
          {"edge_mass", r.edge_mass},
          {"counts",
           {{"zeros", r.zero_count},
            {"extrema", r.extremum_count},
            {"gram_like", r.gram_count}}},
          {"ratio_literal", r.ratio_literal},
          {"ratio_aligned", r.ratio_aligned},
          {"findings", findings_json(r.findings)}};
}

nlohmann::ordered_json to_json(const LittlewoodReport& r) {
  return {{"schema_version", "1"},
          {"kind", "littlewood_report"},
          {"max_gap_scaled", r.max_gap_scaled},
          {"gap_at", r.gap_at},
          {"max_log_z_scaled", r.max_log_z_scaled},
          {"log_z_at", r.log_z_at}};
}

nlohmann::ordered_json to_json(const SweepReport& r) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    nlohmann::ordered_json item = to_json(e.report);
    entries.push_back(
        {{"T", e.T}, {"H", e.H}, {"report", std::move(item)}});
  }
  return {{"schema_version", "1"},
          {"kind", "sweep_report"},
          {"h_rule", r.h_rule},
          {"entries", std::move(entries)},
          {"literal_weakly_decreasing", r.literal_weakly_decreasing},
          {"aligned_weakly_decreasing", r.aligned_weakly_decreasing}};
}

}  // namespace zcurve
