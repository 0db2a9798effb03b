#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zcurve/critical_points.hpp"
#include "zcurve/quadrature.hpp"
#include "zcurve/window.hpp"

namespace zcurve {

enum class LemmaId { L1, L2, L3, L4 };
std::string to_string(LemmaId id);

// One verified statement: lhs vs the predicted main term, with the deviation
// normalized by that lemma's error-term scale (the T^Delta factors use the
// configured Delta, default 1/6 — the admissible upper end).
struct LemmaReport {
  LemmaId lemma_id = LemmaId::L1;
  std::string variant;  // even|odd|alternating|G1|G2|ratio|decomposition
  Window window;
  std::vector<std::pair<std::string, double>> params;
  double lhs = 0.0;
  double main_term = 0.0;
  double deviation = 0.0;             // lhs - main_term
  double normalized_deviation = 0.0;  // deviation / lemma error scale
  double ratio = 0.0;                 // lhs / main term where meaningful
  double edge_mass = 0.0;             // boundary-arch mass (decomposition only)
  std::vector<Finding> findings;
};

struct TheoremReport {
  Window window;
  double arc_len = 0.0;
  double twice_sum_local_max = 0.0;  // 2 sum |Z(t0)| over interior extrema
  double abs_deriv_integral = 0.0;
  double theta = 0.0;     // (arc_len - abs_deriv_integral) / H
  double residual = 0.0;  // arc_len - twice_sum_local_max - theta*H
  double edge_mass = 0.0;
  long long zero_count = 0;
  long long extremum_count = 0;
  long long gram_count = 0;
  double ratio_literal = 0.0;  // arc over [T, T+H] / twice_sum
  double ratio_aligned = 0.0;  // arc over [first zero, last zero] / twice_sum
  std::vector<Finding> findings;
};

struct LittlewoodReport {
  double max_gap_scaled = 0.0;  // max (gamma'' - gamma') ln ln gamma'
  double gap_at = 0.0;
  double max_log_z_scaled = 0.0;  // max ln|Z(t0)| ln ln t0 / ln t0
  double log_z_at = 0.0;
};

struct SweepEntry {
  double T = 0.0;
  double H = 0.0;
  TheoremReport report;
};

struct SweepReport {
  std::string h_rule;  // e.g. "T^0.24"
  std::vector<SweepEntry> entries;
  bool literal_weakly_decreasing = false;
  bool aligned_weakly_decreasing = false;
};

// Gram-point derivative sums vs -(1/pi) H ln^2(P) cos(tau) (even indices)
// and its exact negative (odd indices).
std::pair<LemmaReport, LemmaReport> verify_lemma1(const Window& w, double tau,
                                                  const EvalOptions& opts = {},
                                                  double delta = 1.0 / 6.0,
                                                  int parallelism = 1);

// Plain sum (main term 0, carried in params) and alternating sum vs
// -(2/pi) H ln^2(P) cos(tau), in one report.
LemmaReport verify_alternating_sums(const Window& w, double tau,
                                    const EvalOptions& opts = {},
                                    double delta = 1.0 / 6.0,
                                    int parallelism = 1);

// Integrals of Z' over G1(x), G2(y) vs -/+ (2/pi) H ln(P) sin(x|y).
std::pair<LemmaReport, LemmaReport> verify_lemma2(const Window& w, double x,
                                                  double y,
                                                  const EvalOptions& opts = {},
                                                  double delta = 1.0 / 6.0,
                                                  double tol = 1e-7,
                                                  int parallelism = 1);

// ratio = int |Z'| / ((4/pi) H ln P) checked against > 1 - eps, plus the
// proof-route inequality int |Z'| >= int_{G1-}|Z'| + int_{G2+}|Z'|.
LemmaReport verify_lemma3(const Window& w, double eps,
                          const EvalOptions& opts = {}, double tol = 1e-7,
                          int parallelism = 1);

// Exact decomposition int |Z'| = 2 sum |Z(t0)| + edge_mass.
LemmaReport verify_lemma4(const Window& w, const EvalOptions& opts = {},
                          double tol = 1e-9, int parallelism = 1);

// Full Eq.-(1.5) assembly.  Theorem mode enforces T^mu <= H <= T^(1/4);
// allow_wide lifts the upper constraint for diagnostic windows.
TheoremReport verify_theorem(const Window& w, const EvalOptions& opts = {},
                             bool allow_wide = false, double mu = 0.1,
                             double tol = 1e-9, int parallelism = 1);

LittlewoodReport littlewood_diagnostics(const std::vector<ZeroPoint>& zeros,
                                        const std::vector<ExtremumPoint>& extrema);

// One verify_theorem per T with H = T^p (p <= 0.25), plus trend flags over
// the literal and zero-aligned arc ratios.
SweepReport sweep_theorem(const std::vector<double>& Ts, double p_exponent,
                          const EvalOptions& opts = {}, bool allow_wide = false,
                          double tol = 1e-9, int parallelism = 1);

nlohmann::ordered_json to_json(const LemmaReport& r);
nlohmann::ordered_json to_json(const TheoremReport& r);
nlohmann::ordered_json to_json(const LittlewoodReport& r);
nlohmann::ordered_json to_json(const SweepReport& r);

}  // namespace zcurve
