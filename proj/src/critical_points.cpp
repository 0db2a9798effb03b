#include "zcurve/critical_points.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace zcurve {

// --- models -------------------------------------------------------------------

ZModel make_rs_model(const EvalOptions& opts) {
  opts.validate();
  ZModel m;
  m.z = [opts](double t) { return z(t, opts); };
  m.z_prime = [opts](double t) { return z_prime(t, opts); };
  m.transitions = [](double lo, double hi) { return rs_transitions(lo, hi); };
  m.scan_step = [](double t) { return kPi / (4.0 * theta1_prime(t)); };
  return m;
}

ZModel make_cosine_model(double amplitude, double omega, double phase) {
  if (!(omega > 0.0)) throw std::domain_error("cosine model: omega must be > 0");
  ZModel m;
  m.z = [=](double t) { return amplitude * std::cos(omega * t + phase); };
  m.z_prime = [=](double t) {
    return -amplitude * omega * std::sin(omega * t + phase);
  };
  m.transitions = [](double, double) { return std::vector<double>{}; };
  m.scan_step = [omega](double) { return kPi / (4.0 * omega); };
  return m;
}

ZModel make_constant_model(double value) {
  ZModel m;
  m.z = [value](double) { return value; };
  m.z_prime = [](double) { return 0.0; };
  m.transitions = [](double, double) { return std::vector<double>{}; };
  m.scan_step = [](double) { return 1.0; };
  return m;
}

// --- interval sets --------------------------------------------------------------

double IntervalSet::measure() const {
  Kahan<double> acc;
  for (const auto& iv : intervals) acc.add(iv.second - iv.first);
  return acc.value();
}

void IntervalSet::validate() const {
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    if (!std::isfinite(iv.first) || !std::isfinite(iv.second) ||
        !(iv.first < iv.second))
      throw std::domain_error("interval set: empty or non-finite interval");
    if (i > 0 && intervals[i - 1].second > iv.first)
      throw std::domain_error("interval set: intervals overlap or are unsorted");
  }
}

// --- root refinement -------------------------------------------------------------

namespace {

double width_floor(double lo, double hi, double requested) {
  double scale = std::max(std::fabs(lo), std::fabs(hi));
  return std::max(requested,
                  scale * 4.0 * std::numeric_limits<double>::epsilon());
}

// Bracketed bisection/secant hybrid; the bracket never escapes.
double refine_root(const std::function<double(double)>& f, double lo,
                   double hi, double flo, double fhi, double req_width,
                   double* f_at_root = nullptr) {
  if (flo == 0.0) {
    if (f_at_root) *f_at_root = 0.0;
    return lo;
  }
  if (fhi == 0.0) {
    if (f_at_root) *f_at_root = 0.0;
    return hi;
  }
  for (int it = 0; it < 200; ++it) {
    double width = hi - lo;
    if (width <= width_floor(lo, hi, req_width)) break;
    double mid;
    if (it % 2 == 0 && fhi != flo) {
      mid = lo - flo * width / (fhi - flo);
      double guard = 0.125 * width;
      if (!(mid > lo + guard && mid < hi - guard)) mid = lo + 0.5 * width;
    } else {
      mid = lo + 0.5 * width;
    }
    double fm = f(mid);
    if (fm == 0.0) {
      if (f_at_root) *f_at_root = 0.0;
      return mid;
    }
    if ((flo < 0.0) != (fm < 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  double root = 0.5 * (lo + hi);
  if (f_at_root) *f_at_root = f(root);
  return root;
}

struct Bracket {
  double lo, hi, flo, fhi;
};

std::vector<Bracket> sign_change_brackets(const std::vector<double>& ts,
                                          const std::vector<double>& vs) {
  std::vector<Bracket> out;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i)
    if (vs[i] == 0.0 || vs[i] * vs[i + 1] < 0.0)
      out.push_back({ts[i], ts[i + 1], vs[i], vs[i + 1]});
  return out;
}

constexpr double kZeroWidth = 1e-11;
constexpr double kExtremumWidth = 1e-10;

}  // namespace

// stationary points of z inside (lo, hi): sign changes of z' on a fine subgrid
std::vector<double> zprime_roots(const ZModel& m, double lo, double hi,
                                 double width_tol, int subdiv) {
  std::vector<double> ts(static_cast<std::size_t>(subdiv) + 1),
      vs(static_cast<std::size_t>(subdiv) + 1);
  for (int i = 0; i <= subdiv; ++i) {
    ts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / subdiv;
    vs[static_cast<std::size_t>(i)] = m.z_prime(ts[static_cast<std::size_t>(i)]);
  }
  std::vector<double> roots;
  for (const auto& b : sign_change_brackets(ts, vs))
    roots.push_back(
        refine_root(m.z_prime, b.lo, b.hi, b.flo, b.fhi, width_tol));
  return roots;
}

namespace {

// Rescue pass: between consecutive stationary points the function is
// monotone, so any sign flip of z across them pins down exactly one zero the
// grid scan stepped over.
std::vector<double> audit_gap(const ZModel& m, double lo, double hi) {
  std::vector<double> found;
  std::vector<double> t0 = zprime_roots(m, lo, hi, kExtremumWidth);
  if (t0.size() < 2) return found;
  std::vector<double> zv(t0.size());
  for (std::size_t i = 0; i < t0.size(); ++i) zv[i] = m.z(t0[i]);
  for (std::size_t i = 0; i + 1 < t0.size(); ++i)
    if (zv[i] * zv[i + 1] < 0.0)
      found.push_back(
          refine_root(m.z, t0[i], t0[i + 1], zv[i], zv[i + 1], kZeroWidth));
  return found;
}

}  // namespace

// --- zeros -----------------------------------------------------------------------

std::vector<ZeroPoint> find_zeros(const ZModel& m, double lo, double hi,
                                  std::vector<Finding>* findings,
                                  int parallelism) {
  if (!(lo < hi)) throw std::domain_error("find_zeros: requires lo < hi");
  double step = m.scan_step(lo);
  std::size_t n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  n = std::max<std::size_t>(n, 4);
  std::vector<double> ts(n + 1), vs(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    ts[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
  ts[n] = hi;
  parallel_for(n + 1, parallelism, [&](std::size_t i) { vs[i] = m.z(ts[i]); });

  auto brackets = sign_change_brackets(ts, vs);
  std::vector<double> roots(brackets.size());
  parallel_for(brackets.size(), parallelism, [&](std::size_t i) {
    roots[i] = refine_root(m.z, brackets[i].lo, brackets[i].hi, brackets[i].flo,
                           brackets[i].fhi, kZeroWidth);
  });

  // close-pair rescue over every gap, including the window-edge partials;
  // repeat once in case an insertion created a new unaudited gap
  std::vector<double> all(roots.begin(), roots.end());
  for (int round = 0; round < 3; ++round) {
    std::vector<double> knots;
    knots.push_back(lo);
    knots.insert(knots.end(), all.begin(), all.end());
    knots.push_back(hi);
    std::vector<std::vector<double>> extra(knots.size() - 1);
    parallel_for(knots.size() - 1, parallelism, [&](std::size_t i) {
      extra[i] = audit_gap(m, knots[i], knots[i + 1]);
    });
    std::size_t before = all.size();
    for (const auto& v : extra) all.insert(all.end(), v.begin(), v.end());
    if (all.size() == before) break;
    std::sort(all.begin(), all.end());
  }

  // half-step recount guard: a plain scan at twice the resolution must not
  // see more crossings than we finally report
  std::vector<double> mids(n), mvs(n);
  for (std::size_t i = 0; i < n; ++i) mids[i] = 0.5 * (ts[i] + ts[i + 1]);
  parallel_for(n, parallelism, [&](std::size_t i) { mvs[i] = m.z(mids[i]); });
  std::size_t recount = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (vs[i] * mvs[i] < 0.0) ++recount;
    if (mvs[i] * vs[i + 1] < 0.0) ++recount;
  }
  if (recount > all.size())
    throw std::runtime_error(
        "find_zeros: half-step recount found more sign changes than located "
        "zeros (grid insufficiency)");

  std::vector<ZeroPoint> out;
  out.reserve(all.size());
  for (double r : all) {
    double rv = std::fabs(m.z(r));
    out.push_back({r, static_cast<long long>(out.size()), rv});
  }
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    if (out[i + 1].t - out[i].t < 1e-6 && findings)
      findings->push_back({"suspect-pair",
                           "zeros closer than 1e-6; possible unresolved "
                           "structure between " +
                               fmt17(out[i].t) + " and " + fmt17(out[i + 1].t),
                           out[i].t});
  }
  return out;
}

std::vector<ZeroPoint> find_zeros(const Window& w, const EvalOptions& opts,
                                  std::vector<Finding>* findings,
                                  int parallelism) {
  w.validate();
  return find_zeros(make_rs_model(opts), w.lo(), w.hi(), findings, parallelism);
}

// --- extrema ----------------------------------------------------------------------

std::vector<ExtremumPoint> find_extrema(const ZModel& m,
                                        const std::vector<ZeroPoint>& zeros,
                                        std::vector<Finding>* findings,
                                        int parallelism) {
  for (std::size_t i = 0; i + 1 < zeros.size(); ++i)
    if (!(zeros[i].t < zeros[i + 1].t))
      throw std::domain_error("find_extrema: zeros must be strictly increasing");
  if (zeros.size() < 2) return {};

  std::size_t gaps = zeros.size() - 1;
  std::vector<ExtremumPoint> out(gaps);
  std::vector<std::vector<Finding>> local(gaps);
  parallel_for(gaps, parallelism, [&](std::size_t i) {
    double a = zeros[i].t, b = zeros[i + 1].t;
    std::vector<double> cand = zprime_roots(m, a, b, kExtremumWidth);
    ExtremumPoint e;
    e.left_zero = a;
    e.right_zero = b;
    if (cand.empty()) {
      local[i].push_back({"interlacing-violation",
                          "no stationary point resolved in gap (" + fmt17(a) +
                              ", " + fmt17(b) + ")",
                          a});
      e.t = 0.5 * (a + b);
      e.z_value = m.z(e.t);
      out[i] = e;
      return;
    }
    std::size_t pick = 0;
    if (cand.size() > 1) {
      bool zero_flip = false;
      double best = -1.0;
      for (std::size_t k = 0; k < cand.size(); ++k) {
        double zv = std::fabs(m.z(cand[k]));
        if (zv > best) {
          best = zv;
          pick = k;
        }
        if (k + 1 < cand.size() && m.z(cand[k]) * m.z(cand[k + 1]) < 0.0)
          zero_flip = true;
      }
      local[i].push_back(
          {"interlacing-violation",
           std::string(zero_flip ? "unresolved interior zeros in gap ("
                                 : "multiple stationary points in gap (") +
               fmt17(a) + ", " + fmt17(b) + ")",
           a});
    }
    e.t = cand[pick];
    e.z_value = m.z(e.t);
    // sign pattern: Z keeps the extremum's sign across the whole gap
    double s = e.z_value > 0.0 ? 1.0 : -1.0;
    if (s * m.z(0.5 * (a + e.t)) < 0.0 || s * m.z(0.5 * (e.t + b)) < 0.0)
      local[i].push_back({"sign-pattern",
                          "Z changes sign inside gap (" + fmt17(a) + ", " +
                              fmt17(b) + ") away from its endpoints",
                          e.t});
    out[i] = e;
  });
  if (findings)
    for (auto& v : local)
      findings->insert(findings->end(), v.begin(), v.end());
  return out;
}

std::vector<ExtremumPoint> find_extrema(const std::vector<ZeroPoint>& zeros,
                                        const EvalOptions& opts,
                                        std::vector<Finding>* findings,
                                        int parallelism) {
  return find_extrema(make_rs_model(opts), zeros, findings, parallelism);
}

// --- Gram-like points ---------------------------------------------------------------

GramLikePoint gram_like(long long nu, double tau) {
  if (!(tau >= -kPi && tau <= kPi))
    throw std::domain_error("gram_like: tau must lie in [-pi, pi]");
  long double target = kPiL * static_cast<long double>(nu) +
                       static_cast<long double>(tau) + kPiL / 2.0L;
  // theta1(2*pi*e) = -pi/8 is the inversion threshold (t > 2*pi*e required)
  if (!(target > -kPiL / 8.0L + 1e-9L))
    throw std::domain_error(
        "gram_like: target phase requires t <= 2*pi*e (outside the invertible "
        "branch)");

  // initial guess: rearranged fixed point t = (2R + pi/4) / (ln(t/2pi) - 1),
  // valid on the t > 2*pi*e branch where the denominator is positive
  long double t = 2.0L * target + kPiL / 4.0L + 20.0L;
  for (int i = 0; i < 2; ++i) {
    long double den = logl(t / kTwoPiL) - 1.0L;
    if (den > 0.1L) t = (2.0L * target + kPiL / 4.0L) / den;
    t = std::max(t, static_cast<long double>(kTwoPiL) * 2.72L);
  }
  // Newton on theta1 (convex increasing); converges from either side
  bool ok = false;
  for (int i = 0; i < 64; ++i) {
    long double r = detail::theta1_l(t) - target;
    long double dt = r / (0.5L * logl(t / kTwoPiL));
    t -= dt;
    t = std::max(t, static_cast<long double>(kTwoPiL) * 1.0001L);
    if (fabsl(r) < 1e-13L * std::max(1.0L, fabsl(target)) && fabsl(dt) < 1e-9L) {
      ok = true;
      break;
    }
  }
  if (!ok)
    throw std::runtime_error("gram_like: Newton failed to converge for nu=" +
                             std::to_string(nu) + " tau=" + fmt17(tau));
  return {nu, tau, static_cast<double>(t)};
}

GramCountReport count_gram_like(const Window& w, double tau) {
  w.validate();
  if (!(tau >= -kPi && tau <= kPi))
    throw std::domain_error("count_gram_like: tau must lie in [-pi, pi]");
  long double lo_idx =
      (detail::theta1_l(w.lo()) - static_cast<long double>(tau) - kPiL / 2.0L) /
      kPiL;
  long double hi_idx =
      (detail::theta1_l(w.hi()) - static_cast<long double>(tau) - kPiL / 2.0L) /
      kPiL;
  GramCountReport rep;
  rep.nu_first = static_cast<long long>(ceill(lo_idx));
  rep.nu_last = static_cast<long long>(floorl(hi_idx));
  rep.count = rep.nu_last >= rep.nu_first ? rep.nu_last - rep.nu_first + 1 : 0;
  double P = std::sqrt(w.T / kTwoPi);
  rep.predicted = w.H * std::log(P) / kPi;
  rep.deviation = static_cast<double>(rep.count) - rep.predicted;
  return rep;
}

// --- G sets -------------------------------------------------------------------------

std::pair<IntervalSet, IntervalSet> build_g_sets(const Window& w, double x,
                                                 double y) {
  w.validate();
  if (!(x > 0.0 && x <= kPi / 2.0))
    throw std::domain_error("build_g_sets: x must lie in (0, pi/2]");
  if (!(y > 0.0 && y <= kPi / 2.0))
    throw std::domain_error("build_g_sets: y must lie in (0, pi/2]");
  long long k_lo = static_cast<long long>(
      floorl((detail::theta1_l(w.lo()) - kPiL / 2.0L) / kPiL)) - 1;
  long long k_hi = static_cast<long long>(
      ceill((detail::theta1_l(w.hi()) - kPiL / 2.0L) / kPiL)) + 1;
  IntervalSet g1, g2;
  for (long long k = k_lo; k <= k_hi; ++k) {
    bool even = (k % 2) == 0;
    double half_width = even ? x : y;
    double a = gram_like(k, -half_width).t;
    double b = gram_like(k, half_width).t;
    double lo = std::max(a, w.lo());
    double hi = std::min(b, w.hi());
    if (lo < hi) (even ? g1 : g2).intervals.push_back({lo, hi});
  }
  g1.validate();
  g2.validate();
  return {g1, g2};
}

// --- sign split ---------------------------------------------------------------------

std::pair<IntervalSet, IntervalSet> split_by_sign(
    const ZModel& m, const IntervalSet& s, std::vector<Finding>* findings) {
  s.validate();
  IntervalSet plus, minus;
  for (const auto& iv : s.intervals) {
    double lo = iv.first, hi = iv.second;
    double step = 0.5 * m.scan_step(lo);
    int n = std::max(4, static_cast<int>(std::ceil((hi - lo) / step)));
    std::vector<double> t0 = zprime_roots(m, lo, hi, kExtremumWidth, n);
    std::vector<double> knots;
    knots.push_back(lo);
    for (double r : t0)
      if (r > lo && r < hi) knots.push_back(r);
    knots.push_back(hi);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      double mid = 0.5 * (knots[i] + knots[i + 1]);
      (m.z_prime(mid) > 0.0 ? plus : minus)
          .intervals.push_back({knots[i], knots[i + 1]});
    }
  }
  (void)findings;
  plus.validate();
  minus.validate();
  return {plus, minus};
}

std::pair<IntervalSet, IntervalSet> split_by_sign(
    const IntervalSet& s, const EvalOptions& opts,
    std::vector<Finding>* findings) {
  return split_by_sign(make_rs_model(opts), s, findings);
}

// --- cache ---------------------------------------------------------------------------

std::string cache_file_name(const CacheKey& k) {
  return "zcache_" + fmt17(k.T) + "_" + fmt17(k.H) + "_" + fmt_hex(k.opts_hash) +
         ".txt";
}

static std::mutex g_cache_writer_mutex;

void cache_store(const std::filesystem::path& dir, const CacheKey& k,
                 const std::vector<ZeroPoint>& zeros,
                 const std::vector<ExtremumPoint>& extrema) {
  std::lock_guard<std::mutex> lock(g_cache_writer_mutex);
  std::filesystem::create_directories(dir);
  std::filesystem::path target = dir / cache_file_name(k);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cache_store: cannot write " + tmp.string());
    out << "# zcache 1 T=" << fmt17(k.T) << " H=" << fmt17(k.H)
        << " opts=" << fmt_hex(k.opts_hash) << "\n";
    for (const auto& zp : zeros)
      out << "zero " << fmt17(zp.t) << " 0 " << fmt17(zp.residual) << "\n";
    for (const auto& e : extrema)
      out << "extremum " << fmt17(e.t) << " " << fmt17(e.z_value) << " 0\n";
  }
  std::filesystem::rename(tmp, target);
}

bool cache_load(const std::filesystem::path& dir, const CacheKey& k,
                std::vector<ZeroPoint>* zeros,
                std::vector<ExtremumPoint>* extrema) {
  std::ifstream in(dir / cache_file_name(k));
  if (!in) return false;
  std::string header;
  if (!std::getline(in, header)) return false;
  std::string expect = "# zcache 1 T=" + fmt17(k.T) + " H=" + fmt17(k.H) +
                       " opts=" + fmt_hex(k.opts_hash);
  if (header != expect) return false;
  std::vector<ZeroPoint> zs;
  std::vector<std::pair<double, double>> es;  // (t, value)
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string kind;
    double t, value, residual;
    if (!(ss >> kind >> t >> value >> residual)) return false;
    if (kind == "zero")
      zs.push_back({t, static_cast<long long>(zs.size()), residual});
    else if (kind == "extremum")
      es.push_back({t, value});
    else
      return false;
  }
  std::vector<ExtremumPoint> ex;
  for (const auto& [t, value] : es) {
    auto it = std::lower_bound(
        zs.begin(), zs.end(), t,
        [](const ZeroPoint& zp, double x) { return zp.t < x; });
    if (it == zs.begin() || it == zs.end()) return false;  // unbracketed
    ex.push_back({t, value, (it - 1)->t, it->t});
  }
  if (zeros) *zeros = std::move(zs);
  if (extrema) *extrema = std::move(ex);
  return true;
}

}  // namespace zcurve
