#pragma once

#include <cmath>
#include <stdexcept>

namespace zcurve {

// A verification window [T, T+H].  The basic validity envelope keeps the
// evaluator in its certified range; the quarter-power bound H <= T^{1/4} is
// the theorem's standing hypothesis and is enforced only by theorem-mode
// entry points (several counting/integration checks deliberately run on
// wider windows).
struct Window {
  double T = 0.0;
  double H = 0.0;

  double lo() const { return T; }
  double hi() const { return T + H; }

  void validate() const {
    if (!std::isfinite(T) || !std::isfinite(H))
      throw std::domain_error("window: T and H must be finite");
    if (T < 100.0) throw std::domain_error("window: requires T >= 100");
    if (H <= 0.0) throw std::domain_error("window: requires H > 0");
    if (T + H > 1e12)
      throw std::domain_error("window: T + H above double-precision ceiling 1e12");
  }

  // theorem-hypothesis predicate: H <= T^{1/4}
  bool within_quarter_power() const { return H <= std::pow(T, 0.25); }
};

}  // namespace zcurve
