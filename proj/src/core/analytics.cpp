#include "core/analytics.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string_view>
#include <tuple>
#include <unordered_map>

namespace voa {
namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

void check_table(const OverlapTable& table) {
  require(table.both >= 0 && table.only_x >= 0 && table.only_y >= 0 && table.neither >= 0,
          "overlap table cells must be nonnegative");
  require(table.both + table.only_x + table.only_y + table.neither == table.universe_size,
          "overlap table cells must sum to the universe size");
}

}  // namespace

NoveltySeries voa_from_snapshots(std::span<const Snapshot> snapshots,
                                 std::optional<int> k_truncate) {
  if (k_truncate) require(*k_truncate >= 1, "k_truncate must be >= 1");
  NoveltySeries series;
  if (snapshots.empty()) return series;
  for (std::size_t i = 1; i < snapshots.size(); ++i) {
    require(snapshots[i].user == snapshots.front().user,
            "snapshots must all belong to one user");
    require(snapshots[i - 1].taken_at <= snapshots[i].taken_at,
            "snapshots must be sorted ascending by taken_at");
  }

  std::unordered_set<std::string_view> seen;
  double total = 0.0;
  series.per_snapshot.reserve(snapshots.size());
  for (const Snapshot& snapshot : snapshots) {
    int novel = 0;
    for (const Impression& impression : snapshot.impressions) {
      if (k_truncate && impression.position > *k_truncate) continue;
      if (seen.insert(impression.post_id).second) ++novel;
    }
    series.per_snapshot.push_back({snapshot.taken_at, novel});
    total += novel;
  }
  series.mean = total / static_cast<double>(series.per_snapshot.size());
  return series;
}

Snapshot reorder_fifo(Snapshot snapshot) {
  std::sort(snapshot.impressions.begin(), snapshot.impressions.end(),
            [](const Impression& a, const Impression& b) {
              if (a.published_at != b.published_at) return a.published_at > b.published_at;
              return a.post_id < b.post_id;
            });
  int position = 0;
  for (Impression& impression : snapshot.impressions) impression.position = ++position;
  return snapshot;
}

OverlapTable overlap_table(const PostSet& x_posts, const PostSet& y_posts,
                           const PostSet& universe) {
  for (const std::string& post : x_posts) {
    require(universe.contains(post), "x_posts must be a subset of the universe");
  }
  for (const std::string& post : y_posts) {
    require(universe.contains(post), "y_posts must be a subset of the universe");
  }
  OverlapTable table;
  table.universe_size = static_cast<std::int64_t>(universe.size());
  for (const std::string& post : universe) {
    const bool in_x = x_posts.contains(post);
    const bool in_y = y_posts.contains(post);
    if (in_x && in_y) {
      ++table.both;
    } else if (in_x) {
      ++table.only_x;
    } else if (in_y) {
      ++table.only_y;
    } else {
      ++table.neither;
    }
  }
  return table;
}

double coverage_fraction(const OverlapTable& table) {
  check_table(table);
  const std::int64_t viewed_by_y = table.both + table.only_y;
  if (viewed_by_y == 0) throw std::domain_error("user Y viewed no posts");
  return static_cast<double>(table.both) / static_cast<double>(viewed_by_y);
}

double pairwise_overlap(const OverlapTable& table) {
  check_table(table);
  const std::int64_t viewed_by_x = table.both + table.only_x;
  const std::int64_t viewed_by_y = table.both + table.only_y;
  if (viewed_by_x == 0 && viewed_by_y == 0) {
    throw std::domain_error("both users viewed no posts");
  }
  double best = 0.0;
  if (viewed_by_y > 0) {
    best = std::max(best, static_cast<double>(table.both) / static_cast<double>(viewed_by_y));
  }
  if (viewed_by_x > 0) {
    best = std::max(best, static_cast<double>(table.both) / static_cast<double>(viewed_by_x));
  }
  return best;
}

double pairwise_overlap(const PostSet& x_posts, const PostSet& y_posts,
                        const PostSet& universe) {
  return pairwise_overlap(overlap_table(x_posts, y_posts, universe));
}

ViewerEcdf viewer_ecdf(std::span<const PostSet> post_sets) {
  std::unordered_map<std::string_view, int> viewers;
  for (const PostSet& posts : post_sets) {
    for (const std::string& post : posts) ++viewers[post];
  }
  if (viewers.empty()) throw std::domain_error("all post sets are empty");

  std::map<int, std::int64_t> histogram;
  for (const auto& [post, count] : viewers) ++histogram[count];

  ViewerEcdf ecdf;
  ecdf.points.reserve(histogram.size());
  std::int64_t cumulative = 0;
  const auto total = static_cast<double>(viewers.size());
  for (const auto& [count, posts] : histogram) {
    cumulative += posts;
    ecdf.points.push_back({count, static_cast<double>(cumulative) / total});
  }
  return ecdf;
}

}  // namespace voa
