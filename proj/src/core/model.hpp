#pragma once

#include <optional>

namespace voa {

// Parameters of the timeline model: sources publish at rate `lambda`, the
// user refreshes at rate `mu`, the timeline holds at most `k` posts and an
// access costs `cost` (same units as the value of an access).
struct ModelParams {
  double lambda = 0.0;  // posts per hour, >= 0
  double mu = 1.0;      // accesses per hour, > 0
  double k = 0.0;       // timeline capacity; real-valued so the average-K variant works
  double cost = 0.0;    // cost per access, >= 0

  double rho() const { return lambda / mu; }
  void validate() const;  // throws std::domain_error on violation
};

enum class Variant { FixedK, AverageK, PoissonK, DeterministicTau };

struct VoaEstimate {
  double mean = 0.0;
  Variant variant = Variant::FixedK;
  // Probability that at least K publications arrived between two accesses,
  // i.e. the timeline fills with novelties: (lambda/(lambda+mu))^K.
  // Only meaningful for the fixed-K closed form.
  std::optional<double> fill_probability;
};

// Expected novel impressions per access with exponential inter-access times:
// (lambda/mu) * (1 - (lambda/(lambda+mu))^K). `k` may be real; the power is
// evaluated as exp(k*log(r)) so large k stays stable.
VoaEstimate voa_exponential(const ModelParams& params);

// Same quantity through the explicit finite summation
// K - mu/(lambda+mu) * (K*sum_i r^i - sum_i i*r^i), integer k <= 1e6 only.
// Algebraically independent route kept as the oracle for voa_exponential.
double voa_summation(const ModelParams& params);

// Expected novel impressions when accesses are exactly `tau_hours` apart:
// E[min(A, K)] with A ~ Poisson(lambda * tau). Integer k.
double voa_deterministic(double lambda, double tau_hours, double k);

// Timeline size itself Poisson with mean `alpha`:
// (lambda/mu) * (1 - exp(-alpha*mu/(lambda+mu))).
double voa_poisson_k(double lambda, double mu, double alpha);

// Fixed-K closed form evaluated at real-valued K = alpha.
double voa_average_k(double lambda, double mu, double alpha);

// Integrates E(V | tau) against the exponential access density by adaptive
// quadrature, truncated where the remaining tail mass is below 1e-12.
// Independent numeric check of voa_exponential; integer k. Throws
// ConvergenceError if the 1e-8 tolerance cannot be reached.
double voa_quadrature(const ModelParams& params);

}  // namespace voa
