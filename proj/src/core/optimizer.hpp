#pragma once

#include "core/model.hpp"

namespace voa {

struct OptimalRate {
  double mu_star = 0.0;
  double utility_at_star = 0.0;
  // True when the unconstrained stationary point is nonpositive (K <= cost)
  // and the mu >= 0 constraint forces mu* = 0.
  bool clamped = false;
};

// Utility per time unit, mu * VoA - cost * mu, which reduces to
// lambda * (1 - (lambda/(lambda+mu))^K) - cost * mu. Defined for mu >= 0;
// U(0) = 0 by continuity.
double utility(const ModelParams& params);

// dU/dmu = K * (lambda/(lambda+mu))^{K+1} - cost. At mu = 0 the ratio is 1,
// so the gradient is K - cost.
double utility_gradient(const ModelParams& params);

// Closed-form maximizer mu* = lambda * ((K/cost)^{1/(K+1)} - 1), clamped to 0
// when K <= cost. Requires lambda > 0, cost > 0, integer k >= 1.
OptimalRate optimal_access_rate(double lambda, double k, double cost);

// Golden-section maximization of `utility` over [0, search_upper] to 1e-8
// absolute in mu. Independent of the closed form. Throws ConvergenceError if
// the maximizer sits on search_upper (interval too small).
double optimal_access_rate_numeric(double lambda, double k, double cost, double search_upper);

}  // namespace voa
