#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "zcurve/common.hpp"
#include "zcurve/window.hpp"

namespace zcurve {

enum class DerivativeMode {
  paper_sum,           // -2 sum n^{-1/2} ln(P/n) sin(theta - t ln n)
  central_difference,  // (z(t+h) - z(t-h)) / (2h)
  analytic             // exact derivative of the implemented z (default)
};

const char* to_string(DerivativeMode m);
DerivativeMode derivative_mode_from_string(const std::string& s);

struct EvalOptions {
  // Number of Riemann-Siegel correction terms beyond the main sum (0..5).
  // Order 1 is the classical first correction; the higher orders are needed
  // to push truncation error below the quadrature tolerances (the first
  // correction alone leaves ~1e-3 absolute error near t = 100).
  int rs_correction_order = 5;
  DerivativeMode derivative_mode = DerivativeMode::analytic;
  double fd_step = 1e-5;  // step for central differences

  void validate() const;
  std::string describe() const;   // canonical rendering, e.g. "order=5;mode=analytic;fd=1e-05"
  std::uint64_t hash() const { return fnv1a(describe()); }
};

// --- phase functions ---------------------------------------------------------

// Riemann-Siegel theta via the asymptotic expansion through the 1/t^3 term;
// absolute error below 1e-13 for t >= 100.
double theta(double t);
double theta_prime(double t);

// Elementary main part theta1(t) = (t/2) ln(t/2pi) - t/2 - pi/8, exactly.
double theta1(double t);
double theta1_prime(double t);

// --- Hardy Z -----------------------------------------------------------------

double z(double t, const EvalOptions& opts = {});
double z_prime(double t, const EvalOptions& opts = {});

// Main-sum transition ordinates 2*pi*m^2 strictly inside (lo, hi), ascending.
std::vector<double> rs_transitions(double lo, double hi);

// --- elementary trigonometric sums ---------------------------------------------

struct TrigSumParams {
  long long a = 1;
  long long b = 2;
  double t = 0.0;
  void validate() const;  // 1 <= a < b <= 2a; b <= sqrt(t/2pi) when t > 2pi
};

std::complex<double> trig_sum(const TrigSumParams& p);

struct TrigHypothesisRow {
  long long a;
  double t;
  double ratio;  // |S(a,2a)| / (sqrt(a) * a^delta)
};

struct TrigHypothesisReport {
  double delta = 0.0;
  double max_ratio = 0.0;
  bool degenerate = false;  // only a = 1 admissible (or nothing at all)
  std::string flag;
  std::vector<TrigHypothesisRow> rows;
};

// Sweeps dyadic pairs (a, 2a) with 2a <= sqrt(T/2pi) over a log-spaced grid of
// ordinates in the window; reports the empirical surrogate for the constant
// A(delta).  Purely diagnostic.
TrigHypothesisReport check_trig_hypothesis(const Window& w, double delta);

// --- internals shared with the test suite -------------------------------------

namespace detail {

long double theta_l(long double t);
long double theta1_l(long double t);

// Chebyshev tables for the correction functions C_0..C_4 on p in [0,1]
// (generated by tools/mint_rs_coefficients.py).
extern const double kRsC0Cheb[];
extern const double kRsC1Cheb[];
extern const double kRsC2Cheb[];
extern const double kRsC3Cheb[];
extern const double kRsC4Cheb[];
extern const int kRsChebCount;
extern const double* const kRsChebTables[5];

// C_j(p) and its derivative; j in [0, 5).
double rs_coefficient(int j, double p);
double rs_coefficient_prime(int j, double p);

// Closed form Psi(p) = cos(2pi(p^2-p-1/16))/cos(2pi p) with the removable
// singularities at p = 1/4, 3/4 handled; equals C_0 analytically.
double psi_closed(double p);

}  // namespace detail

}  // namespace zcurve
