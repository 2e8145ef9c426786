#include "core/optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"

namespace voa {
namespace {

void require_domain(bool ok, const char* message) {
  if (!ok) throw std::domain_error(message);
}

// Utility relaxes the model-parameter contract to mu >= 0.
void validate_for_utility(const ModelParams& p) {
  require_domain(std::isfinite(p.lambda) && p.lambda >= 0.0, "lambda must be finite and >= 0");
  require_domain(std::isfinite(p.mu) && p.mu >= 0.0, "mu must be finite and >= 0");
  require_domain(std::isfinite(p.k) && p.k >= 0.0, "k must be finite and >= 0");
  require_domain(std::isfinite(p.cost) && p.cost >= 0.0, "cost must be finite and >= 0");
}

void validate_optimizer_inputs(double lambda, double k, double cost) {
  require_domain(std::isfinite(lambda) && lambda > 0.0, "lambda must be finite and > 0");
  require_domain(std::isfinite(cost) && cost > 0.0, "cost must be finite and > 0");
  require_domain(std::isfinite(k) && k >= 1.0 && std::floor(k) == k, "k must be an integer >= 1");
}

}  // namespace

double utility(const ModelParams& params) {
  validate_for_utility(params);
  if (params.mu == 0.0) return 0.0;
  if (params.lambda == 0.0) return -params.cost * params.mu;
  const double r = params.lambda / (params.lambda + params.mu);
  return params.lambda * -std::expm1(params.k * std::log(r)) - params.cost * params.mu;
}

double utility_gradient(const ModelParams& params) {
  validate_for_utility(params);
  if (params.lambda == 0.0) return -params.cost;
  if (params.mu == 0.0) return params.k - params.cost;
  const double r = params.lambda / (params.lambda + params.mu);
  return params.k * std::exp((params.k + 1.0) * std::log(r)) - params.cost;
}

OptimalRate optimal_access_rate(double lambda, double k, double cost) {
  validate_optimizer_inputs(lambda, k, cost);
  OptimalRate result;
  if (k <= cost) {
    // dU/dmu = K r^{K+1} - cost <= K - cost <= 0 on all of mu >= 0, so the
    // constrained optimum is the boundary.
    result.clamped = true;
    return result;
  }
  result.mu_star = lambda * std::expm1(std::log(k / cost) / (k + 1.0));
  result.utility_at_star = utility({lambda, result.mu_star, k, cost});
  return result;
}

double optimal_access_rate_numeric(double lambda, double k, double cost, double search_upper) {
  validate_optimizer_inputs(lambda, k, cost);
  require_domain(std::isfinite(search_upper) && search_upper > 0.0,
                 "search_upper must be finite and > 0");
  const auto objective = [&](double mu) { return utility({lambda, mu, k, cost}); };

  constexpr double kTol = 1e-8;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double inv_phi2 = 1.0 - inv_phi;
  double a = 0.0;
  double b = search_upper;
  double h = b - a;
  double c = a + inv_phi2 * h;
  double d = a + inv_phi * h;
  double fc = objective(c);
  double fd = objective(d);
  while (h > kTol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      h = b - a;
      c = a + inv_phi2 * h;
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      h = b - a;
      d = a + inv_phi * h;
      fd = objective(d);
    }
  }
  const double maximizer = (a + b) / 2.0;
  if (search_upper - maximizer <= 1e-6 * search_upper + 100.0 * kTol) {
    throw ConvergenceError("utility still increasing at search_upper; enlarge the interval");
  }
  return maximizer;
}

}  // namespace voa
