#pragma once

#include <functional>
#include <vector>

#include "zcurve/critical_points.hpp"
#include "zcurve/model.hpp"
#include "zcurve/window.hpp"

namespace zcurve {

using Integrand = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int subdivisions = 0;
  int kink_points_used = 0;
};

// Adaptive Gauss-Kronrod (G7/K15) with a global greedy refinement queue.
// Stops when the summed local error estimates drop below tol*max(1,|value|).
// tol must lie in [1e-12, 1e-4]; throws on max-subdivision exhaustion.
QuadratureResult integrate_smooth(const Integrand& f, double lo, double hi,
                                  double tol);

// Same kernel, with the initial partition split at the given interior points
// (either derivative kinks or just high-curvature markers).
QuadratureResult integrate_with_kinks(const Integrand& f, double lo, double hi,
                                      const std::vector<double>& kinks,
                                      double tol);

// Arc length of the Z-curve over the window: integral of sqrt(1 + Z'^2),
// with the initial partition seeded at every zero and extremum inside.
QuadratureResult arc_length(const Window& w, const EvalOptions& opts = {},
                            double tol = 1e-7, int parallelism = 1);
QuadratureResult arc_length(const ZModel& m, double lo, double hi,
                            double tol = 1e-7,
                            const std::vector<double>* seeds = nullptr,
                            int parallelism = 1);

// Integral of |Z'| with subdivision exactly at the supplied kinks (the zeros
// of Z', where |Z'| loses smoothness).  Emits a finding if a sign change of
// Z' is detected inside a supposedly smooth piece.
QuadratureResult integrate_abs_zprime(double lo, double hi,
                                      const std::vector<double>& kinks,
                                      const EvalOptions& opts = {},
                                      double tol = 1e-7,
                                      std::vector<Finding>* findings = nullptr);
QuadratureResult integrate_abs_zprime(const ZModel& m, double lo, double hi,
                                      const std::vector<double>& kinks,
                                      double tol = 1e-7,
                                      std::vector<Finding>* findings = nullptr);

// |integral_{left}^{right} |Z'| - 2|Z(t0)|| / max(1, 2|Z(t0)|): the exact
// pairwise identity.  Extrema with |Z(t0)| < 1e-10 are flagged as degenerate
// rather than divided through.
double pair_identity_check(const ExtremumPoint& e, const EvalOptions& opts = {},
                           double tol = 1e-9,
                           std::vector<Finding>* findings = nullptr);
double pair_identity_check(const ZModel& m, const ExtremumPoint& e,
                           double tol = 1e-9,
                           std::vector<Finding>* findings = nullptr);

// Sum of per-interval integrals over a disjoint interval set.
QuadratureResult integrate_over_set(const IntervalSet& s, const Integrand& f,
                                    double tol = 1e-7);

// integrate_over_set specialized to f = Z', cross-checked against the
// telescoped endpoint differences (fundamental theorem) to 1e-8.
QuadratureResult integrate_zprime_over_set(const ZModel& m,
                                           const IntervalSet& s,
                                           double tol = 1e-7,
                                           std::vector<Finding>* findings =
                                               nullptr);

struct ThetaResidual {
  double theta = 0.0;   // (arc - absint) / H, strictly in (0,1) for real Z
  double arc = 0.0;     // arc length over the window
  double absint = 0.0;  // integral of |Z'| over the window
};

// Computes the mean-value coefficient of the arc-length decomposition.
// theta outside (0,1) is emitted as a finding ("theta out of range"),
// theta == 1 additionally as a degeneracy flag.
ThetaResidual theta_residual(const Window& w, const EvalOptions& opts = {},
                             double tol = 1e-7,
                             std::vector<Finding>* findings = nullptr,
                             int parallelism = 1);
ThetaResidual theta_residual(const ZModel& m, double lo, double hi,
                             double tol = 1e-7,
                             std::vector<Finding>* findings = nullptr,
                             int parallelism = 1);

}  // namespace zcurve
