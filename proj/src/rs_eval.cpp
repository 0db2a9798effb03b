#include "zcurve/rs_eval.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace zcurve {

const char* to_string(DerivativeMode m) {
  switch (m) {
    case DerivativeMode::paper_sum: return "paper_sum";
    case DerivativeMode::central_difference: return "central_difference";
    case DerivativeMode::analytic: return "analytic";
  }
  return "?";
}

DerivativeMode derivative_mode_from_string(const std::string& s) {
  if (s == "paper_sum") return DerivativeMode::paper_sum;
  if (s == "central_difference") return DerivativeMode::central_difference;
  if (s == "analytic") return DerivativeMode::analytic;
  throw std::domain_error("unknown derivative mode: " + s);
}

void EvalOptions::validate() const {
  if (rs_correction_order < 0 || rs_correction_order > 5)
    throw std::domain_error("rs_correction_order must lie in 0..5");
  if (!(fd_step >= 1e-7 && fd_step <= 1e-3))
    throw std::domain_error("fd_step must lie in [1e-7, 1e-3]");
}

std::string EvalOptions::describe() const {
  return "order=" + std::to_string(rs_correction_order) +
         ";mode=" + to_string(derivative_mode) + ";fd=" + fmt17(fd_step);
}

namespace detail {

long double theta_l(long double t) {
  return 0.5L * t * logl(t / kTwoPiL) - 0.5L * t - kPiL / 8.0L +
         1.0L / (48.0L * t) + 7.0L / (5760.0L * t * t * t);
}

long double theta1_l(long double t) {
  return 0.5L * t * logl(t / kTwoPiL) - 0.5L * t - kPiL / 8.0L;
}

long double theta_prime_l(long double t) {
  return 0.5L * logl(t / kTwoPiL) - 1.0L / (48.0L * t * t) -
         7.0L / (1920.0L * t * t * t * t);
}

// ln n table shared by all evaluations; grown copy-on-write so concurrent
// readers keep a consistent snapshot.
static std::shared_ptr<const std::vector<long double>> log_table(long long need) {
  static std::mutex mu;
  static std::shared_ptr<const std::vector<long double>> table =
      std::make_shared<const std::vector<long double>>();
  std::lock_guard<std::mutex> lock(mu);
  if (static_cast<long long>(table->size()) <= need) {
    auto grown = std::make_shared<std::vector<long double>>(*table);
    grown->reserve(static_cast<std::size_t>(need) + 64);
    if (grown->empty()) grown->push_back(0.0L);  // index 0 unused
    for (long long n = static_cast<long long>(grown->size()); n <= need + 63; ++n)
      grown->push_back(logl(static_cast<long double>(n)));
    table = std::move(grown);
  }
  return table;
}

static double cheb_eval(const double* c, int n, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (int k = n - 1; k >= 1; --k) {
    double b0 = c[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + x * b1 - b2;
}

// derivative series of a Chebyshev expansion (same [-1,1] variable)
static std::vector<double> cheb_derivative(const double* c, int n) {
  std::vector<double> d(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = n - 1; k >= 1; --k)
    d[static_cast<std::size_t>(k) - 1] =
        d[static_cast<std::size_t>(k) + 1] + 2.0 * k * c[k];
  d[0] *= 0.5;
  d.resize(static_cast<std::size_t>(n));
  return d;
}

static const std::array<std::vector<double>, 5>& deriv_tables() {
  static const std::array<std::vector<double>, 5> tables = [] {
    std::array<std::vector<double>, 5> out;
    for (int j = 0; j < 5; ++j)
      out[static_cast<std::size_t>(j)] =
          cheb_derivative(kRsChebTables[j], kRsChebCount);
    return out;
  }();
  return tables;
}

double rs_coefficient(int j, double p) {
  return cheb_eval(kRsChebTables[j], kRsChebCount, 2.0 * p - 1.0);
}

double rs_coefficient_prime(int j, double p) {
  const auto& d = deriv_tables()[static_cast<std::size_t>(j)];
  // chain rule: x = 2p - 1
  return 2.0 * cheb_eval(d.data(), static_cast<int>(d.size()), 2.0 * p - 1.0);
}

double psi_closed(double p) {
  for (int branch = 0; branch < 2; ++branch) {
    double center = branch == 0 ? 0.25 : 0.75;
    double sgn = branch == 0 ? -1.0 : 1.0;
    double e = p - center;
    if (std::fabs(e) < 0.05) {
      if (e == 0.0) return 0.5;
      return std::sin(kPi * e + sgn * kTwoPi * e * e) / std::sin(kTwoPi * e);
    }
  }
  return std::cos(kTwoPi * (p * p - p - 0.0625)) / std::cos(kTwoPi * p);
}

}  // namespace detail

double theta(double t) {
  if (!(t > kTwoPi)) throw std::domain_error("theta: requires t > 2*pi");
  return static_cast<double>(detail::theta_l(t));
}

double theta_prime(double t) {
  if (!(t > kTwoPi)) throw std::domain_error("theta_prime: requires t > 2*pi");
  return static_cast<double>(detail::theta_prime_l(t));
}

double theta1(double t) {
  if (!(t > 0.0)) throw std::domain_error("theta1: requires t > 0");
  return static_cast<double>(detail::theta1_l(t));
}

double theta1_prime(double t) {
  if (!(t > 0.0)) throw std::domain_error("theta1_prime: requires t > 0");
  return 0.5 * std::log(t / kTwoPi);
}

namespace {

struct Decomposition {
  long double t, a, P, p, theta;
  long long N;
};

Decomposition decompose(double t) {
  Decomposition d;
  d.t = t;
  d.a = d.t / kTwoPiL;
  d.P = sqrtl(d.a);
  d.N = static_cast<long long>(d.P);
  d.p = d.P - static_cast<long double>(d.N);
  d.theta = zcurve::detail::theta_l(d.t);
  return d;
}

void check_eval_domain(double t, const char* who) {
  if (!(t >= 100.0))
    throw std::domain_error(std::string(who) + ": requires t >= 100");
  if (!(t <= 1e12))
    throw std::domain_error(std::string(who) + ": above validity ceiling 1e12");
}

// correction sum and (optionally) its t-derivative
void correction_terms(const Decomposition& d, int order, double* corr,
                      double* dcorr) {
  if (corr) *corr = 0.0;
  if (dcorr) *dcorr = 0.0;
  if (order <= 0) return;
  double a = static_cast<double>(d.a);
  double p = static_cast<double>(d.p);
  double sgn = (d.N % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N-1)
  double dpdt = 1.0 / (4.0 * kPi * static_cast<double>(d.P));
  Kahan<double> c, dc;
  for (int j = 0; j < order; ++j) {
    double q = (1.0 + 2.0 * j) / 4.0;
    double fac = std::pow(a, -q);
    double cj = detail::rs_coefficient(j, p);
    if (corr) c.add(cj * fac);
    if (dcorr)
      dc.add(detail::rs_coefficient_prime(j, p) * dpdt * fac +
             cj * (-q) * fac / a / kTwoPi);
  }
  if (corr) *corr = sgn * c.value();
  if (dcorr) *dcorr = sgn * dc.value();
}

}  // namespace

double z(double t, const EvalOptions& opts) {
  opts.validate();
  check_eval_domain(t, "z");
  Decomposition d = decompose(t);
  auto logs = detail::log_table(d.N);
  Kahan<long double> acc;
  for (long long n = 1; n <= d.N; ++n) {
    long double ph = d.theta - d.t * (*logs)[static_cast<std::size_t>(n)];
    acc.add(cosl(ph) / sqrtl(static_cast<long double>(n)));
  }
  double val = static_cast<double>(2.0L * acc.value());
  double corr;
  correction_terms(d, opts.rs_correction_order, &corr, nullptr);
  return val + corr;
}

double z_prime(double t, const EvalOptions& opts) {
  opts.validate();
  check_eval_domain(t, "z_prime");
  switch (opts.derivative_mode) {
    case DerivativeMode::central_difference: {
      double h = opts.fd_step;
      return (z(t + h, opts) - z(t - h, opts)) / (2.0 * h);
    }
    case DerivativeMode::paper_sum: {
      Decomposition d = decompose(t);
      auto logs = detail::log_table(d.N);
      long double lnP = 0.5L * logl(d.a);
      Kahan<long double> acc;
      for (long long n = 1; n <= d.N; ++n) {
        if (n == d.N && d.p == 0.0L) break;  // strict n < P
        long double ln = (*logs)[static_cast<std::size_t>(n)];
        acc.add((lnP - ln) * sinl(d.theta - d.t * ln) /
                sqrtl(static_cast<long double>(n)));
      }
      return static_cast<double>(-2.0L * acc.value());
    }
    case DerivativeMode::analytic: {
      Decomposition d = decompose(t);
      auto logs = detail::log_table(d.N);
      long double thp = detail::theta_prime_l(d.t);
      Kahan<long double> acc;
      for (long long n = 1; n <= d.N; ++n) {
        long double ln = (*logs)[static_cast<std::size_t>(n)];
        acc.add((thp - ln) * sinl(d.theta - d.t * ln) /
                sqrtl(static_cast<long double>(n)));
      }
      double val = static_cast<double>(-2.0L * acc.value());
      double dcorr;
      correction_terms(d, opts.rs_correction_order, nullptr, &dcorr);
      return val + dcorr;
    }
  }
  throw std::logic_error("unreachable derivative mode");
}

std::vector<double> rs_transitions(double lo, double hi) {
  std::vector<double> out;
  if (!(lo < hi)) return out;
  long long m_lo =
      static_cast<long long>(std::ceil(std::sqrt(std::max(lo, 0.0) / kTwoPi)));
  long long m_hi = static_cast<long long>(std::floor(std::sqrt(hi / kTwoPi)));
  for (long long m = std::max<long long>(m_lo, 1); m <= m_hi; ++m) {
    double tm = kTwoPi * static_cast<double>(m) * static_cast<double>(m);
    if (tm > lo && tm < hi) out.push_back(tm);
  }
  return out;
}

void TrigSumParams::validate() const {
  if (a < 1) throw std::domain_error("trig_sum: requires a >= 1");
  if (!(a < b)) throw std::domain_error("trig_sum: requires a < b");
  if (b > 2 * a) throw std::domain_error("trig_sum: requires b <= 2a (dyadic)");
  if (t > kTwoPi && static_cast<double>(b) > std::sqrt(t / kTwoPi))
    throw std::domain_error("trig_sum: requires b <= sqrt(t/2pi)");
}

std::complex<double> trig_sum(const TrigSumParams& p) {
  p.validate();
  Kahan<long double> re, im;
  long double tl = p.t;
  for (long long n = p.a; n <= p.b; ++n) {
    long double ph = tl * logl(static_cast<long double>(n));
    re.add(cosl(ph));
    im.add(sinl(ph));
  }
  return {static_cast<double>(re.value()), static_cast<double>(im.value())};
}

TrigHypothesisReport check_trig_hypothesis(const Window& w, double delta) {
  w.validate();
  if (!(delta > 0.0 && delta <= 1.0 / 6.0))
    throw std::domain_error("check_trig_hypothesis: delta must lie in (0, 1/6]");
  TrigHypothesisReport rep;
  rep.delta = delta;
  double p_limit = std::sqrt(w.T / kTwoPi);
  std::vector<long long> as;
  for (long long a = 1; 2 * a <= static_cast<long long>(p_limit); a *= 2)
    as.push_back(a);
  if (as.empty()) {
    rep.degenerate = true;
    rep.flag = "no admissible pairs";
    return rep;
  }
  if (as.size() == 1) {
    rep.degenerate = true;
    rep.flag = "degenerate: only a=1 admissible";
  }
  const int kGrid = 16;
  for (long long a : as) {
    for (int k = 0; k < kGrid; ++k) {
      double t = std::exp(std::log(w.lo()) +
                          (std::log(w.hi()) - std::log(w.lo())) * k / (kGrid - 1));
      TrigSumParams p{a, 2 * a, t};
      double ratio = std::abs(trig_sum(p)) /
                     (std::sqrt(static_cast<double>(a)) *
                      std::pow(static_cast<double>(a), delta));
      rep.rows.push_back({a, t, ratio});
      rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
  }
  return rep;
}

}  // namespace zcurve
