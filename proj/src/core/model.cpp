#include "core/model.hpp"

#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"

namespace voa {
namespace {

void require_domain(bool ok, const char* message) {
  if (!ok) throw std::domain_error(message);
}

bool nonneg_integer(double k) { return std::isfinite(k) && k >= 0.0 && std::floor(k) == k; }

// (lambda/(lambda+mu))^k; k = 0 gives 1 by continuity, including lambda = 0.
double fill_prob(double lambda, double mu, double k) {
  if (k == 0.0) return 1.0;
  if (lambda == 0.0) return 0.0;
  return std::exp(k * std::log(lambda / (lambda + mu)));
}

// E[min(A, K)] for A ~ Poisson(m), written as K - sum_{i=0}^{K} (K-i) P(A=i).
// The pmf terms come from the multiplicative recurrence kept in log space so
// the i = 0 term does not underflow the whole sum when m is large.
double expected_capped_poisson(double m, long long k) {
  if (k <= 0 || m <= 0.0) return 0.0;
  const double log_m = std::log(m);
  double log_p = -m;  // log P(A = 0)
  double deficit = static_cast<double>(k) * std::exp(log_p);
  for (long long i = 1; i <= k; ++i) {
    log_p += log_m - std::log(static_cast<double>(i));
    deficit += static_cast<double>(k - i) * std::exp(log_p);
  }
  return static_cast<double>(k) - deficit;
}

// Recursive adaptive Simpson; error estimate |S_half - S| / 15.
template <typename F>
double adaptive_simpson(const F& f, double a, double fa, double b, double fb, double m,
                        double fm, double whole, double eps, int depth) {
  const double lm = (a + m) / 2.0;
  const double rm = (m + b) / 2.0;
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  if (depth <= 0) throw ConvergenceError("quadrature did not reach the requested tolerance");
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, eps / 2.0, depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, eps / 2.0, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double eps) {
  const double m = (a + b) / 2.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, fa, b, fb, m, fm, whole, eps, 60);
}

}  // namespace

void ModelParams::validate() const {
  require_domain(std::isfinite(lambda) && lambda >= 0.0, "lambda must be finite and >= 0");
  require_domain(std::isfinite(mu) && mu > 0.0, "mu must be finite and > 0");
  require_domain(std::isfinite(k) && k >= 0.0, "k must be finite and >= 0");
  require_domain(std::isfinite(cost) && cost >= 0.0, "cost must be finite and >= 0");
}

VoaEstimate voa_exponential(const ModelParams& params) {
  params.validate();
  VoaEstimate estimate;
  estimate.variant = Variant::FixedK;
  estimate.fill_probability = fill_prob(params.lambda, params.mu, params.k);
  if (params.lambda == 0.0 || params.k == 0.0) return estimate;
  const double r = params.lambda / (params.lambda + params.mu);
  estimate.mean = params.rho() * -std::expm1(params.k * std::log(r));
  return estimate;
}

double voa_summation(const ModelParams& params) {
  params.validate();
  require_domain(nonneg_integer(params.k), "k must be a nonnegative integer for the summation form");
  require_domain(params.k <= 1e6, "k exceeds the summation-form limit of 1e6");
  const long long k = static_cast<long long>(params.k);
  const double r = params.lambda / (params.lambda + params.mu);
  double geometric = 0.0;
  double weighted = 0.0;
  double r_pow = 1.0;
  for (long long i = 0; i <= k; ++i) {
    geometric += r_pow;
    weighted += static_cast<double>(i) * r_pow;
    r_pow *= r;
  }
  return static_cast<double>(k) -
         params.mu / (params.lambda + params.mu) * (static_cast<double>(k) * geometric - weighted);
}

double voa_deterministic(double lambda, double tau_hours, double k) {
  require_domain(std::isfinite(lambda) && lambda >= 0.0, "lambda must be finite and >= 0");
  require_domain(std::isfinite(tau_hours) && tau_hours >= 0.0, "tau must be finite and >= 0");
  require_domain(nonneg_integer(k), "k must be a nonnegative integer");
  return expected_capped_poisson(lambda * tau_hours, static_cast<long long>(k));
}

double voa_poisson_k(double lambda, double mu, double alpha) {
  require_domain(std::isfinite(lambda) && lambda >= 0.0, "lambda must be finite and >= 0");
  require_domain(std::isfinite(mu) && mu > 0.0, "mu must be finite and > 0");
  require_domain(std::isfinite(alpha) && alpha >= 0.0, "alpha must be finite and >= 0");
  if (lambda == 0.0) return 0.0;
  return lambda / mu * -std::expm1(-alpha * mu / (lambda + mu));
}

double voa_average_k(double lambda, double mu, double alpha) {
  return voa_exponential({lambda, mu, alpha, 0.0}).mean;
}

double voa_quadrature(const ModelParams& params) {
  params.validate();
  require_domain(nonneg_integer(params.k), "k must be a nonnegative integer for quadrature");
  const long long k = static_cast<long long>(params.k);
  if (k == 0 || params.lambda == 0.0) return 0.0;
  // Substituting u = mu*tau leaves a unit-rate exponential weight; beyond
  // `upper` the remaining mass is bounded by K e^{-upper} = e^{-30}.
  const double rho = params.rho();
  const auto integrand = [&](double u) {
    return expected_capped_poisson(rho * u, k) * std::exp(-u);
  };
  const double upper = std::log(static_cast<double>(k)) + 30.0;
  return integrate(integrand, 0.0, upper, 1e-10);
}

}  // namespace voa
