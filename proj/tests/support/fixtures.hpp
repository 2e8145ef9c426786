#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <tuple>
#include <vector>

#include "core/analytics.hpp"
#include "core/rng.hpp"
#include "core/simulator.hpp"

namespace voa::testing {

// Measured post-overlap contingency tables from the five-bot Facebook
// experiment: one high-sampling bot H against four regular bots R1..R4, and
// the six regular-bot pairs. Cells are (both, only_x, only_y, neither).
struct OverlapFixture {
  const char* user_x;
  const char* user_y;
  OverlapTable table;
};

inline OverlapTable make_table(std::int64_t both, std::int64_t only_x, std::int64_t only_y,
                               std::int64_t neither) {
  return {both, only_x, only_y, neither, both + only_x + only_y + neither};
}

inline const std::vector<OverlapFixture>& high_vs_regular_tables() {
  static const std::vector<OverlapFixture> tables = {
      {"H", "R1", make_table(8205, 2778, 651, 2679)},
      {"H", "R2", make_table(7242, 3751, 1767, 1563)},
      {"H", "R3", make_table(8381, 2602, 1128, 2202)},
      {"H", "R4", make_table(8111, 2872, 801, 2529)},
  };
  return tables;
}

inline const std::vector<OverlapFixture>& regular_pair_tables() {
  static const std::vector<OverlapFixture> tables = {
      {"R1", "R2", make_table(6776, 2080, 2223, 3224)},
      {"R1", "R3", make_table(6776, 2080, 1453, 4004)},
      {"R1", "R4", make_table(7850, 1006, 1062, 4395)},
      {"R2", "R3", make_table(6855, 2144, 2654, 2660)},
      {"R2", "R4", make_table(6641, 2358, 2271, 3043)},
      {"R3", "R4", make_table(7734, 1775, 1178, 3623)},
  };
  return tables;
}

// Poisson trace conditioned on its post count: `count` arrival times uniform
// over (0, period), with the first and last posts pinned to the interval ends
// so the observed span is exactly `period_hours`.
inline std::vector<Post> uniform_trace(std::size_t count, double period_hours,
                                       std::uint64_t seed) {
  auto gen = rng_for_round(seed, 0x66697874ull);
  std::vector<double> hours;
  hours.reserve(count);
  hours.push_back(0.0);
  for (std::size_t i = 2; i < count; ++i) {
    hours.push_back(uniform01(gen) * period_hours);
  }
  hours.push_back(period_hours);
  std::sort(hours.begin(), hours.end());

  constexpr std::int64_t kEpoch = 1538006400;  // 2018-09-27T00:00:00Z
  std::vector<Post> posts;
  posts.reserve(count);
  char id[24];
  for (std::size_t i = 0; i < hours.size(); ++i) {
    std::snprintf(id, sizeof id, "p%06zu", i + 1);
    posts.push_back(Post{id, "source-" + std::to_string(i % 5 + 1),
                         kEpoch + static_cast<std::int64_t>(std::llround(hours[i] * 3600.0))});
  }
  std::sort(posts.begin(), posts.end(), [](const Post& a, const Post& b) {
    return std::tie(a.created_at, a.id) < std::tie(b.created_at, b.id);
  });
  return posts;
}

inline Post make_post(std::string id, std::int64_t created_at,
                      std::string publisher = "pub") {
  return Post{std::move(id), std::move(publisher), created_at};
}

inline Impression make_impression(std::string post_id, int position,
                                  std::int64_t published_at = 0,
                                  std::int64_t impressed_at = 0) {
  return Impression{std::move(post_id), "pub", published_at, impressed_at, position};
}

// Snapshot of bare post ids at ascending positions.
inline Snapshot make_snapshot(std::string user, std::int64_t taken_at,
                              std::vector<std::string> post_ids) {
  Snapshot snapshot;
  snapshot.user = std::move(user);
  snapshot.taken_at = taken_at;
  int position = 0;
  for (std::string& id : post_ids) {
    snapshot.impressions.push_back(
        Impression{std::move(id), "pub", 0, taken_at, ++position});
  }
  return snapshot;
}

}  // namespace voa::testing
