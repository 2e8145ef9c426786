#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/analytics.hpp"
#include "core/simulator.hpp"

namespace voa {

enum class Format { JsonLines, Csv };

// Posts sorted ascending by (created_at, id); duplicate ids rejected with the
// offending line number.
std::vector<Post> parse_posts(std::istream& input, Format format);

struct ImpressionLog {
  std::vector<Snapshot> snapshots;      // sorted by (user, taken_at, input order)
  std::int64_t duplicates_dropped = 0;  // repeated post ids removed within snapshots
};

// Records sharing (user, impressed_at) form one snapshot; impressions ordered
// by position, duplicates keep the lowest position.
ImpressionLog parse_impressions(std::istream& input, Format format);

void write_posts(std::ostream& out, std::span<const Post> posts, Format format);
void write_impressions(std::ostream& out, std::span<const Snapshot> snapshots, Format format);

struct TraceMeta {
  std::int64_t post_count = 0;
  std::int64_t publisher_count = 0;
  double time_span_hours = 0.0;
  double estimated_lambda = 0.0;  // post_count / time_span_hours
  std::vector<std::pair<std::int64_t, std::int64_t>> daily_counts;  // (UTC day start, posts)
};

TraceMeta trace_meta(std::span<const Post> posts);

// Strict ISO-8601 UTC ("2018-09-27T14:03:00Z"); fractional seconds are
// truncated. Throws std::invalid_argument on malformed input.
std::int64_t parse_utc(std::string_view text);
std::string format_utc(std::int64_t epoch_seconds);
std::string format_utc_date(std::int64_t epoch_seconds);

// CSV plumbing shared by every emitted report: '.' decimal separator, LF line
// endings, mandatory header row.
std::string csv_field(std::string_view raw);
std::string format_double(double value);

// Canonical CSV emission of the result types.
void write_curve_csv(std::ostream& out, const VoaCurve& curve);
void write_ecdf_csv(std::ostream& out, const ViewerEcdf& ecdf);
void write_daily_counts_csv(std::ostream& out, const TraceMeta& meta);
void write_novelty_csv(std::ostream& out,
                       std::span<const std::pair<std::string, NoveltySeries>> per_user);

struct OverlapReportRow {
  std::string user_x;
  std::string user_y;
  OverlapTable table;
  double coverage_x_over_y = 0.0;
  double pairwise = 0.0;
};

void write_overlap_csv(std::ostream& out, std::span<const OverlapReportRow> rows);

}  // namespace voa
