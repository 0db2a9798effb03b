#pragma once

#include <functional>
#include <vector>

#include "zcurve/rs_eval.hpp"

namespace zcurve {

// Evaluator bundle used by point location and quadrature.  The production
// model wraps the Riemann-Siegel evaluator; synthetic models (pure cosine,
// constants) plug in for exactness tests.
struct ZModel {
  std::function<double(double)> z;
  std::function<double(double)> z_prime;
  // formula-transition ordinates inside (lo, hi); may be empty
  std::function<std::vector<double>(double, double)> transitions;
  // bracketing grid step near ordinate t (a quarter of the local mean zero gap)
  std::function<double(double)> scan_step;
};

ZModel make_rs_model(const EvalOptions& opts = {});

// z = amplitude * cos(omega * t + phase)
ZModel make_cosine_model(double amplitude, double omega, double phase);

// z = value (constant); z' = 0
ZModel make_constant_model(double value);

}  // namespace zcurve
