#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/model.hpp"

namespace voa {

// A source publication. `created_at` is UTC seconds; traces are kept sorted
// ascending by (created_at, id).
struct Post {
  std::string id;
  std::string publisher;
  std::int64_t created_at = 0;
};

enum class AccessSchedule {
  RandomReference,     // snapshots anchored on posts drawn uniformly from the trace
  ExponentialClock,    // access times with Exp(mu) gaps; window = K most recent posts
  DeterministicClock,  // access times every 1/mu hours
};

struct SimConfig {
  int k = 10;
  double sample_interval_hours = 1.0;  // 1/mu
  double period_hours = 336.0;
  int rounds = 30;
  std::uint64_t seed = 0;
  AccessSchedule schedule = AccessSchedule::RandomReference;

  // floor(period / interval); the snapshot count for RandomReference and
  // DeterministicClock rounds. ExponentialClock rounds instead take as many
  // accesses as the period admits.
  int snapshots_per_round() const;
  void validate() const;  // throws std::invalid_argument
};

// Mean and sample standard deviation of per-round mean VoA; stddev is 0 for a
// single round.
struct SimPoint {
  double mean = 0.0;
  double stddev = 0.0;
  int rounds = 0;
};

enum class AbscissaKind { InverseMu, K, Mu, Rho, Lambda };

std::string_view abscissa_label(AbscissaKind kind);

struct CurvePoint {
  double abscissa = 0.0;
  double model_voa = 0.0;
  double sim_mean = 0.0;
  double sim_std = 0.0;
  int rounds = 0;
};

struct VoaCurve {
  AbscissaKind kind = AbscissaKind::InverseMu;
  std::vector<CurvePoint> points;
};

// The reference post plus the k-1 immediately preceding ones, newest first;
// truncated near the start of the trace.
std::vector<Post> build_snapshot(std::span<const Post> posts_sorted,
                                 std::size_t reference_index, int k);

// Novelty of each snapshot in an access sequence: the window at anchor a is
// posts (a-k+1 .. a), and a post counts once per round, at its first
// appearance. Anchors are indices into the trace in chronological access
// order; -1 marks an access before the first post (empty window). Shared
// kernel of every schedule.
std::vector<int> snapshot_voas(std::size_t post_count,
                               std::span<const std::int64_t> anchor_indices, int k);

SimPoint simulate_trace_fifo(std::span<const Post> posts_sorted, const SimConfig& config);

// Pure arrival-counting realization of the model: per access, novel
// impressions = min(arrivals since last access, K). RandomReference has no
// meaning here; pass a clock schedule.
SimPoint simulate_synthetic(const ModelParams& params, std::int64_t accesses_per_round,
                            int rounds, std::uint64_t seed, AccessSchedule schedule);

// Trace-driven sweep over 1/mu; the model column is the fixed-K closed form
// evaluated at `model_lambda` (pass the trace's estimated rate, or the
// nominal rate a synthetic trace was built for).
VoaCurve sweep_inverse_mu(std::span<const Post> posts_sorted, const SimConfig& config,
                          std::span<const double> inverse_mu_values, double model_lambda);

// Synthetic sweep; accesses per round = floor(period / interval) per point.
// Timeline size and lambda come from `params`.
VoaCurve sweep_inverse_mu(const ModelParams& params, const SimConfig& config,
                          std::span<const double> inverse_mu_values);

// Poisson trace over [0, period_hours] starting at a fixed epoch, with ids
// p000001... and a small rotating pool of synthetic publishers.
std::vector<Post> generate_poisson_trace(double lambda, double period_hours,
                                         std::uint64_t seed);

}  // namespace voa
