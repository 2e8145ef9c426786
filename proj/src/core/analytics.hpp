#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace voa {

// One post shown in one snapshot. impressed_at >= published_at is NOT
// enforced; measured logs carry clock skew.
struct Impression {
  std::string post_id;
  std::string publisher;
  std::int64_t published_at = 0;
  std::int64_t impressed_at = 0;
  int position = 1;  // 1-based order within the snapshot
};

// The recorded contents of one timeline view by one user. Impressions are
// ordered by position with no duplicate post_id.
struct Snapshot {
  std::string user;
  std::int64_t taken_at = 0;
  std::vector<Impression> impressions;
};

struct SnapshotNovelty {
  std::int64_t taken_at = 0;
  int novel = 0;
};

struct NoveltySeries {
  std::vector<SnapshotNovelty> per_snapshot;
  double mean = 0.0;
};

// Per-snapshot count of post ids never seen in an earlier snapshot of the
// same user. Snapshots must all belong to one user and be sorted ascending by
// taken_at. When k_truncate is set, impressions at positions greater than it
// are ignored before the novelty check.
NoveltySeries voa_from_snapshots(std::span<const Snapshot> snapshots,
                                 std::optional<int> k_truncate = std::nullopt);

// Reverse-chronological ordering by published_at (ties by post_id),
// positions renumbered 1..n. Idempotent.
Snapshot reorder_fifo(Snapshot snapshot);

using PostSet = std::unordered_set<std::string>;

// 2x2 partition of a shared post universe between two users.
struct OverlapTable {
  std::int64_t both = 0;
  std::int64_t only_x = 0;
  std::int64_t only_y = 0;
  std::int64_t neither = 0;
  std::int64_t universe_size = 0;
};

OverlapTable overlap_table(const PostSet& x_posts, const PostSet& y_posts,
                           const PostSet& universe);

// Fraction of Y's posts also viewed by X: both / (both + only_y).
double coverage_fraction(const OverlapTable& table);

// Larger of the two directional coverage fractions.
double pairwise_overlap(const OverlapTable& table);
double pairwise_overlap(const PostSet& x_posts, const PostSet& y_posts,
                        const PostSet& universe);

// Distribution of "how many users viewed this post" over the union of the
// given per-user post sets.
struct ViewerEcdf {
  struct Point {
    int viewer_count = 0;
    double cumulative_fraction = 0.0;
  };
  std::vector<Point> points;  // viewer_count ascending; last fraction is 1
};

ViewerEcdf viewer_ecdf(std::span<const PostSet> post_sets);

}  // namespace voa
