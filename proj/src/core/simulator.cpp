#include "core/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace voa {
namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

bool trace_sorted(std::span<const Post> posts) {
  return std::is_sorted(posts.begin(), posts.end(), [](const Post& a, const Post& b) {
    return std::tie(a.created_at, a.id) < std::tie(b.created_at, b.id);
  });
}

std::vector<double> hours_since_start(std::span<const Post> posts) {
  const std::int64_t start = posts.front().created_at;
  std::vector<double> hours;
  hours.reserve(posts.size());
  for (const Post& post : posts) {
    hours.push_back(static_cast<double>(post.created_at - start) / 3600.0);
  }
  return hours;
}

// Index of the newest post at or before `t`, -1 when none exists yet.
std::int64_t anchor_at(const std::vector<double>& post_hours, double t) {
  const auto it = std::upper_bound(post_hours.begin(), post_hours.end(), t);
  return static_cast<std::int64_t>(it - post_hours.begin()) - 1;
}

std::vector<std::int64_t> draw_anchors(const SimConfig& config,
                                       const std::vector<double>& post_hours,
                                       std::mt19937_64& gen) {
  std::vector<std::int64_t> anchors;
  switch (config.schedule) {
    case AccessSchedule::RandomReference: {
      const std::size_t count = static_cast<std::size_t>(config.snapshots_per_round());
      const std::size_t trace_size = post_hours.size();
      anchors.reserve(count);
      if (count <= trace_size) {
        // Partial Fisher-Yates: first `count` slots become a uniform sample
        // without replacement.
        std::vector<std::uint32_t> indices(trace_size);
        std::iota(indices.begin(), indices.end(), 0);
        for (std::size_t i = 0; i < count; ++i) {
          const std::size_t j = i + uniform_below(gen, trace_size - i);
          std::swap(indices[i], indices[j]);
          anchors.push_back(indices[i]);
        }
      } else {
        for (std::size_t i = 0; i < count; ++i) {
          anchors.push_back(static_cast<std::int64_t>(uniform_below(gen, trace_size)));
        }
      }
      // Snapshots are taken in reference-post order.
      std::sort(anchors.begin(), anchors.end());
      break;
    }
    case AccessSchedule::ExponentialClock: {
      const double rate = 1.0 / config.sample_interval_hours;
      double t = exponential_draw(gen, rate);
      while (t <= config.period_hours) {
        anchors.push_back(anchor_at(post_hours, t));
        t += exponential_draw(gen, rate);
      }
      break;
    }
    case AccessSchedule::DeterministicClock: {
      const int count = config.snapshots_per_round();
      for (int j = 1; j <= count; ++j) {
        anchors.push_back(anchor_at(post_hours, j * config.sample_interval_hours));
      }
      break;
    }
  }
  return anchors;
}

SimPoint summarize_rounds(const std::vector<double>& round_means) {
  SimPoint point;
  point.rounds = static_cast<int>(round_means.size());
  point.mean = std::accumulate(round_means.begin(), round_means.end(), 0.0) /
               static_cast<double>(round_means.size());
  if (round_means.size() > 1) {
    double ss = 0.0;
    for (double m : round_means) ss += (m - point.mean) * (m - point.mean);
    point.stddev = std::sqrt(ss / static_cast<double>(round_means.size() - 1));
  }
  return point;
}

void check_strictly_increasing(std::span<const double> values) {
  require(!values.empty(), "abscissa list must not be empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(std::isfinite(values[i]) && values[i] > 0.0, "abscissae must be finite and > 0");
    require(i == 0 || values[i - 1] < values[i], "abscissae must be strictly increasing");
  }
}

}  // namespace

int SimConfig::snapshots_per_round() const {
  return static_cast<int>(std::floor(period_hours / sample_interval_hours));
}

void SimConfig::validate() const {
  require(k >= 1, "k must be >= 1");
  require(std::isfinite(sample_interval_hours) && sample_interval_hours > 0.0,
          "sample_interval_hours must be finite and > 0");
  require(std::isfinite(period_hours) && period_hours > 0.0,
          "period_hours must be finite and > 0");
  require(rounds >= 1, "rounds must be >= 1");
  require(snapshots_per_round() >= 1, "period must admit at least one snapshot");
}

std::string_view abscissa_label(AbscissaKind kind) {
  switch (kind) {
    case AbscissaKind::InverseMu: return "inverse_mu";
    case AbscissaKind::K: return "k";
    case AbscissaKind::Mu: return "mu";
    case AbscissaKind::Rho: return "rho";
    case AbscissaKind::Lambda: return "lambda";
  }
  return "abscissa";
}

std::vector<Post> build_snapshot(std::span<const Post> posts_sorted,
                                 std::size_t reference_index, int k) {
  require(trace_sorted(posts_sorted), "posts must be sorted by (created_at, id)");
  require(reference_index < posts_sorted.size(), "reference index out of range");
  require(k >= 0, "k must be >= 0");
  std::vector<Post> window;
  if (k == 0) return window;
  const std::size_t first =
      reference_index + 1 >= static_cast<std::size_t>(k) ? reference_index + 1 - k : 0;
  window.reserve(reference_index - first + 1);
  for (std::size_t i = reference_index + 1; i-- > first;) {
    window.push_back(posts_sorted[i]);
  }
  return window;
}

std::vector<int> snapshot_voas(std::size_t post_count,
                               std::span<const std::int64_t> anchor_indices, int k) {
  require(k >= 1, "k must be >= 1");
  std::vector<char> seen(post_count, 0);
  std::vector<int> voas;
  voas.reserve(anchor_indices.size());
  for (const std::int64_t anchor : anchor_indices) {
    require(anchor < static_cast<std::int64_t>(post_count), "anchor index out of range");
    if (anchor < 0) {
      voas.push_back(0);
      continue;
    }
    const std::int64_t first = std::max<std::int64_t>(0, anchor - k + 1);
    int novel = 0;
    for (std::int64_t i = first; i <= anchor; ++i) {
      if (!seen[static_cast<std::size_t>(i)]) {
        seen[static_cast<std::size_t>(i)] = 1;
        ++novel;
      }
    }
    voas.push_back(novel);
  }
  return voas;
}

SimPoint simulate_trace_fifo(std::span<const Post> posts_sorted, const SimConfig& config) {
  config.validate();
  require(!posts_sorted.empty(), "trace must contain at least one post");
  require(trace_sorted(posts_sorted), "posts must be sorted by (created_at, id)");
  const std::vector<double> post_hours = hours_since_start(posts_sorted);

  std::vector<double> round_means;
  round_means.reserve(static_cast<std::size_t>(config.rounds));
  for (int round = 0; round < config.rounds; ++round) {
    auto gen = rng_for_round(config.seed, static_cast<std::uint64_t>(round));
    const std::vector<std::int64_t> anchors = draw_anchors(config, post_hours, gen);
    if (anchors.empty()) {
      round_means.push_back(0.0);
      continue;
    }
    const std::vector<int> voas = snapshot_voas(posts_sorted.size(), anchors, config.k);
    const double total = std::accumulate(voas.begin(), voas.end(), 0.0);
    round_means.push_back(total / static_cast<double>(voas.size()));
  }
  return summarize_rounds(round_means);
}

SimPoint simulate_synthetic(const ModelParams& params, std::int64_t accesses_per_round,
                            int rounds, std::uint64_t seed, AccessSchedule schedule) {
  params.validate();
  require(std::floor(params.k) == params.k, "k must be an integer for simulation");
  require(accesses_per_round >= 1, "accesses_per_round must be >= 1");
  require(rounds >= 1, "rounds must be >= 1");
  require(schedule != AccessSchedule::RandomReference,
          "synthetic simulation needs a clock schedule");
  const std::int64_t k = static_cast<std::int64_t>(params.k);
  const double interval = 1.0 / params.mu;

  std::vector<double> round_means;
  round_means.reserve(static_cast<std::size_t>(rounds));
  for (int round = 0; round < rounds; ++round) {
    auto gen = rng_for_round(seed, static_cast<std::uint64_t>(round));
    double total = 0.0;
    for (std::int64_t access = 0; access < accesses_per_round; ++access) {
      const double gap = schedule == AccessSchedule::ExponentialClock
                             ? exponential_draw(gen, params.mu)
                             : interval;
      const std::int64_t arrivals = poisson_draw(gen, params.lambda * gap);
      total += static_cast<double>(std::min(arrivals, k));
    }
    round_means.push_back(total / static_cast<double>(accesses_per_round));
  }
  return summarize_rounds(round_means);
}

VoaCurve sweep_inverse_mu(std::span<const Post> posts_sorted, const SimConfig& config,
                          std::span<const double> inverse_mu_values, double model_lambda) {
  check_strictly_increasing(inverse_mu_values);
  require(std::isfinite(model_lambda) && model_lambda >= 0.0,
          "model_lambda must be finite and >= 0");
  VoaCurve curve;
  curve.kind = AbscissaKind::InverseMu;
  curve.points.reserve(inverse_mu_values.size());
  for (const double inverse_mu : inverse_mu_values) {
    SimConfig point_config = config;
    point_config.sample_interval_hours = inverse_mu;
    const SimPoint point = simulate_trace_fifo(posts_sorted, point_config);
    const double model =
        voa_exponential({model_lambda, 1.0 / inverse_mu, static_cast<double>(config.k), 0.0})
            .mean;
    curve.points.push_back({inverse_mu, model, point.mean, point.stddev, point.rounds});
  }
  return curve;
}

VoaCurve sweep_inverse_mu(const ModelParams& params, const SimConfig& config,
                          std::span<const double> inverse_mu_values) {
  check_strictly_increasing(inverse_mu_values);
  VoaCurve curve;
  curve.kind = AbscissaKind::InverseMu;
  curve.points.reserve(inverse_mu_values.size());
  for (const double inverse_mu : inverse_mu_values) {
    ModelParams point_params = params;
    point_params.mu = 1.0 / inverse_mu;
    const auto accesses =
        static_cast<std::int64_t>(std::floor(config.period_hours / inverse_mu));
    require(accesses >= 1, "period must admit at least one access per round");
    const SimPoint point = simulate_synthetic(point_params, accesses, config.rounds,
                                              config.seed, config.schedule);
    curve.points.push_back(
        {inverse_mu, voa_exponential(point_params).mean, point.mean, point.stddev, point.rounds});
  }
  return curve;
}

std::vector<Post> generate_poisson_trace(double lambda, double period_hours,
                                         std::uint64_t seed) {
  require(std::isfinite(lambda) && lambda >= 0.0, "lambda must be finite and >= 0");
  require(std::isfinite(period_hours) && period_hours > 0.0,
          "period_hours must be finite and > 0");
  // 2018-09-27T00:00:00Z; any fixed origin works, this one keeps synthetic
  // traces in the same calendar range as the measured ones.
  constexpr std::int64_t kEpoch = 1538006400;
  constexpr int kPublisherPool = 8;

  auto gen = rng_for_round(seed, 0x74726163ull);  // dedicated stream tag
  std::vector<Post> posts;
  if (lambda == 0.0) return posts;
  double t = exponential_draw(gen, lambda);
  std::size_t index = 0;
  char id_buffer[24];
  while (t <= period_hours) {
    ++index;
    std::snprintf(id_buffer, sizeof id_buffer, "p%06zu", index);
    Post post;
    post.id = id_buffer;
    post.publisher = "source-" + std::to_string(index % kPublisherPool + 1);
    post.created_at = kEpoch + static_cast<std::int64_t>(std::llround(t * 3600.0));
    posts.push_back(std::move(post));
    t += exponential_draw(gen, lambda);
  }
  // Second-resolution rounding can reorder ids within one second; restore the
  // canonical (created_at, id) order.
  std::sort(posts.begin(), posts.end(), [](const Post& a, const Post& b) {
    return std::tie(a.created_at, a.id) < std::tie(b.created_at, b.id);
  });
  return posts;
}

}  // namespace voa
