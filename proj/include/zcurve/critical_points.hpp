#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "zcurve/model.hpp"
#include "zcurve/window.hpp"

namespace zcurve {

struct ZeroPoint {
  double t = 0.0;            // refined ordinate
  long long index_hint = 0;  // ordinal within the window
  double residual = 0.0;     // |Z(t)| after refinement
};

struct ExtremumPoint {
  double t = 0.0;        // refined stationary point of Z
  double z_value = 0.0;  // Z(t)
  double left_zero = 0.0;
  double right_zero = 0.0;
};

struct GramLikePoint {
  long long nu = 0;
  double tau = 0.0;
  double t = 0.0;
};

// Ordered list of disjoint open intervals.
struct IntervalSet {
  std::vector<std::pair<double, double>> intervals;
  double measure() const;
  void validate() const;  // sorted, disjoint, finite
};

// --- zeros ---------------------------------------------------------------

// Sign-change scan with step pi/(4 theta1'(T)), bracketed bisection/secant
// refinement, a per-gap derivative audit that rescues close pairs the grid
// stepped over, and a half-step recount guard.
std::vector<ZeroPoint> find_zeros(const Window& w, const EvalOptions& opts = {},
                                  std::vector<Finding>* findings = nullptr,
                                  int parallelism = 1);
std::vector<ZeroPoint> find_zeros(const ZModel& m, double lo, double hi,
                                  std::vector<Finding>* findings = nullptr,
                                  int parallelism = 1);

// --- extrema ---------------------------------------------------------------

// One stationary point per adjacent zero pair; interlacing violations are
// reported as findings, never dropped.
std::vector<ExtremumPoint> find_extrema(const std::vector<ZeroPoint>& zeros,
                                        const EvalOptions& opts = {},
                                        std::vector<Finding>* findings = nullptr,
                                        int parallelism = 1);
std::vector<ExtremumPoint> find_extrema(const ZModel& m,
                                        const std::vector<ZeroPoint>& zeros,
                                        std::vector<Finding>* findings = nullptr,
                                        int parallelism = 1);

// Zeros of Z' inside (lo, hi), located on a subdiv-point scan and refined to
// |interval| <= width_tol.  Used for extrema, sign splits, and kink seeding.
std::vector<double> zprime_roots(const ZModel& m, double lo, double hi,
                                 double width_tol = 1e-10, int subdiv = 12);

// --- Gram-like points h_nu(tau):  theta1(h) = pi*nu + tau + pi/2 -----------

GramLikePoint gram_like(long long nu, double tau);

struct GramCountReport {
  long long count = 0;
  double predicted = 0.0;  // (1/pi) H ln P
  double deviation = 0.0;  // count - predicted
  long long nu_first = 0;  // smallest index inside (valid when count > 0)
  long long nu_last = -1;
};

GramCountReport count_gram_like(const Window& w, double tau = 0.0);

// --- interval machinery -----------------------------------------------------

// G1(x): union over even nu of (h_nu(-x), h_nu(x)), clipped to the window;
// G2(y): the same over odd nu.
std::pair<IntervalSet, IntervalSet> build_g_sets(const Window& w, double x,
                                                 double y);

// Partition the set at the zeros of Z' into {Z' > 0} and {Z' < 0} parts.
std::pair<IntervalSet, IntervalSet> split_by_sign(
    const IntervalSet& s, const EvalOptions& opts = {},
    std::vector<Finding>* findings = nullptr);
std::pair<IntervalSet, IntervalSet> split_by_sign(
    const ZModel& m, const IntervalSet& s,
    std::vector<Finding>* findings = nullptr);

// --- located-point cache -----------------------------------------------------

struct CacheKey {
  double T = 0.0;
  double H = 0.0;
  std::uint64_t opts_hash = 0;
};

std::string cache_file_name(const CacheKey& k);
void cache_store(const std::filesystem::path& dir, const CacheKey& k,
                 const std::vector<ZeroPoint>& zeros,
                 const std::vector<ExtremumPoint>& extrema);
bool cache_load(const std::filesystem::path& dir, const CacheKey& k,
                std::vector<ZeroPoint>* zeros,
                std::vector<ExtremumPoint>* extrema);

}  // namespace zcurve
