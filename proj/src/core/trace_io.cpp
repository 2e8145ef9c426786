#include "core/trace_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include <json.hpp>

#include "core/errors.hpp"

namespace voa {
namespace {

using nlohmann::json;

// ---- calendar arithmetic (proleptic Gregorian, no time zones) ----

std::int64_t days_from_civil(std::int64_t year, unsigned month, unsigned day) {
  year -= month <= 2;
  const std::int64_t era = (year >= 0 ? year : year - 399) / 400;
  const auto yoe = static_cast<unsigned>(year - era * 400);
  const unsigned doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t days, std::int64_t& year, unsigned& month, unsigned& day) {
  days += 719468;
  const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
  const auto doe = static_cast<unsigned>(days - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  day = doy - (153 * mp + 2) / 5 + 1;
  month = mp < 10 ? mp + 3 : mp - 9;
  year = y + (month <= 2);
}

unsigned days_in_month(std::int64_t year, unsigned month) {
  static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2) {
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return kDays[month - 1];
}

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (const char c : text) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

unsigned parse_digits(std::string_view text) {
  unsigned value = 0;
  for (const char c : text) value = value * 10 + static_cast<unsigned>(c - '0');
  return value;
}

// ---- csv reading ----

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

// RFC-4180-style split; quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_csv(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      if (!current.empty()) throw ParseError(line_no, "unexpected quote inside unquoted field");
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quoted field");
  fields.push_back(std::move(current));
  return fields;
}

int parse_position(const std::string& text, std::size_t line_no) {
  if (!all_digits(text) || text.size() > 9) {
    throw ParseError(line_no, "position must be a positive integer, got '" + text + "'");
  }
  const int position = static_cast<int>(parse_digits(text));
  if (position < 1) throw ParseError(line_no, "position must be >= 1");
  return position;
}

std::int64_t parse_timestamp_field(const std::string& text, std::size_t line_no,
                                   const char* field) {
  try {
    return parse_utc(text);
  } catch (const std::invalid_argument& error) {
    throw ParseError(line_no, std::string(field) + ": " + error.what());
  }
}

struct RawImpression {
  std::string user;
  Impression impression;
  std::size_t line_no = 0;
};

void sort_posts(std::vector<Post>& posts) {
  std::sort(posts.begin(), posts.end(), [](const Post& a, const Post& b) {
    return std::tie(a.created_at, a.id) < std::tie(b.created_at, b.id);
  });
}

constexpr std::string_view kPostCsvHeader = "id,publisher,created_at";
constexpr std::string_view kImpressionCsvHeader =
    "user,post_id,publisher,published_at,impressed_at,position";

json parse_json_line(const std::string& line, std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& error) {
    throw ParseError(line_no, error.what());
  }
}

std::string get_string(const json& object, const char* key, std::size_t line_no) {
  const auto it = object.find(key);
  if (it == object.end() || !it->is_string()) {
    throw ParseError(line_no, std::string("missing or non-string field '") + key + "'");
  }
  return it->get<std::string>();
}

}  // namespace

std::int64_t parse_utc(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SS[.fraction]Z
  const auto fail = [&text]() {
    throw std::invalid_argument("invalid ISO-8601 UTC timestamp '" + std::string(text) + "'");
  };
  if (text.size() < 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
      text[13] != ':' || text[16] != ':' || text.back() != 'Z') {
    fail();
  }
  const std::string_view year_s = text.substr(0, 4);
  const std::string_view month_s = text.substr(5, 2);
  const std::string_view day_s = text.substr(8, 2);
  const std::string_view hour_s = text.substr(11, 2);
  const std::string_view minute_s = text.substr(14, 2);
  const std::string_view second_s = text.substr(17, 2);
  if (!all_digits(year_s) || !all_digits(month_s) || !all_digits(day_s) ||
      !all_digits(hour_s) || !all_digits(minute_s) || !all_digits(second_s)) {
    fail();
  }
  if (text.size() > 20) {
    // Sub-second precision is accepted and truncated.
    const std::string_view fraction = text.substr(19, text.size() - 20);
    if (fraction.size() < 2 || fraction[0] != '.' || !all_digits(fraction.substr(1))) fail();
  }
  const std::int64_t year = parse_digits(year_s);
  const unsigned month = parse_digits(month_s);
  const unsigned day = parse_digits(day_s);
  const unsigned hour = parse_digits(hour_s);
  const unsigned minute = parse_digits(minute_s);
  const unsigned second = parse_digits(second_s);
  if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month) || hour > 23 ||
      minute > 59 || second > 59) {
    fail();
  }
  return days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second;
}

std::string format_utc(std::int64_t epoch_seconds) {
  std::int64_t days = epoch_seconds / 86400;
  std::int64_t rem = epoch_seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  std::int64_t year;
  unsigned month, day;
  civil_from_days(days, year, month, day);
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%04lld-%02u-%02uT%02u:%02u:%02uZ",
                static_cast<long long>(year), month, day,
                static_cast<unsigned>(rem / 3600), static_cast<unsigned>(rem / 60 % 60),
                static_cast<unsigned>(rem % 60));
  return buffer;
}

std::string format_utc_date(std::int64_t epoch_seconds) {
  return format_utc(epoch_seconds).substr(0, 10);
}

std::vector<Post> parse_posts(std::istream& input, Format format) {
  std::vector<Post> posts;
  std::vector<std::size_t> lines;
  std::string line;
  std::size_t line_no = 0;

  if (format == Format::Csv) {
    if (!std::getline(input, line) || strip_cr(line) != kPostCsvHeader) {
      throw ParseError(1, "expected post CSV header '" + std::string(kPostCsvHeader) + "'");
    }
    line_no = 1;
  }
  while (std::getline(input, line)) {
    ++line_no;
    line = strip_cr(line);
    if (blank(line)) continue;
    Post post;
    if (format == Format::JsonLines) {
      const json record = parse_json_line(line, line_no);
      post.id = get_string(record, "id", line_no);
      post.publisher = get_string(record, "publisher", line_no);
      post.created_at = parse_timestamp_field(get_string(record, "created_at", line_no),
                                              line_no, "created_at");
    } else {
      const std::vector<std::string> fields = split_csv(line, line_no);
      if (fields.size() != 3) throw ParseError(line_no, "expected 3 fields");
      post.id = fields[0];
      post.publisher = fields[1];
      post.created_at = parse_timestamp_field(fields[2], line_no, "created_at");
    }
    if (post.id.empty()) throw ParseError(line_no, "post id must not be empty");
    posts.push_back(std::move(post));
    lines.push_back(line_no);
  }

  std::unordered_map<std::string_view, std::size_t> first_line;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    const auto [it, inserted] = first_line.emplace(posts[i].id, lines[i]);
    if (!inserted) {
      throw ParseError(lines[i], "duplicate post id '" + posts[i].id + "'");
    }
  }
  sort_posts(posts);
  return posts;
}

ImpressionLog parse_impressions(std::istream& input, Format format) {
  std::vector<RawImpression> records;
  std::string line;
  std::size_t line_no = 0;

  if (format == Format::Csv) {
    if (!std::getline(input, line) || strip_cr(line) != kImpressionCsvHeader) {
      throw ParseError(
          1, "expected impression CSV header '" + std::string(kImpressionCsvHeader) + "'");
    }
    line_no = 1;
  }
  while (std::getline(input, line)) {
    ++line_no;
    line = strip_cr(line);
    if (blank(line)) continue;
    RawImpression record;
    record.line_no = line_no;
    if (format == Format::JsonLines) {
      const json object = parse_json_line(line, line_no);
      record.user = get_string(object, "user", line_no);
      record.impression.post_id = get_string(object, "post_id", line_no);
      record.impression.publisher = get_string(object, "publisher", line_no);
      record.impression.published_at = parse_timestamp_field(
          get_string(object, "published_at", line_no), line_no, "published_at");
      record.impression.impressed_at = parse_timestamp_field(
          get_string(object, "impressed_at", line_no), line_no, "impressed_at");
      const auto it = object.find("position");
      if (it == object.end() || !it->is_number_integer()) {
        throw ParseError(line_no, "missing or non-integer field 'position'");
      }
      const auto position = it->get<std::int64_t>();
      if (position < 1) throw ParseError(line_no, "position must be >= 1");
      record.impression.position = static_cast<int>(position);
    } else {
      const std::vector<std::string> fields = split_csv(line, line_no);
      if (fields.size() != 6) throw ParseError(line_no, "expected 6 fields");
      record.user = fields[0];
      record.impression.post_id = fields[1];
      record.impression.publisher = fields[2];
      record.impression.published_at = parse_timestamp_field(fields[3], line_no, "published_at");
      record.impression.impressed_at = parse_timestamp_field(fields[4], line_no, "impressed_at");
      record.impression.position = parse_position(fields[5], line_no);
    }
    if (record.user.empty()) throw ParseError(line_no, "user must not be empty");
    if (record.impression.post_id.empty()) throw ParseError(line_no, "post_id must not be empty");
    records.push_back(std::move(record));
  }

  // Group by (user, impressed_at) preserving first-encounter order.
  ImpressionLog log;
  std::map<std::pair<std::string, std::int64_t>, std::size_t> group_index;
  for (RawImpression& record : records) {
    const auto key = std::make_pair(record.user, record.impression.impressed_at);
    auto it = group_index.find(key);
    if (it == group_index.end()) {
      Snapshot snapshot;
      snapshot.user = record.user;
      snapshot.taken_at = record.impression.impressed_at;
      log.snapshots.push_back(std::move(snapshot));
      it = group_index.emplace(key, log.snapshots.size() - 1).first;
    }
    log.snapshots[it->second].impressions.push_back(std::move(record.impression));
  }

  for (Snapshot& snapshot : log.snapshots) {
    std::stable_sort(snapshot.impressions.begin(), snapshot.impressions.end(),
                     [](const Impression& a, const Impression& b) {
                       return a.position < b.position;
                     });
    // Duplicate post ids keep the lowest position. Keys must own their
    // storage: the winning impressions are moved out below.
    std::unordered_set<std::string> kept;
    std::vector<Impression> unique;
    unique.reserve(snapshot.impressions.size());
    for (Impression& impression : snapshot.impressions) {
      if (kept.insert(impression.post_id).second) {
        unique.push_back(std::move(impression));
      } else {
        ++log.duplicates_dropped;
      }
    }
    snapshot.impressions = std::move(unique);
    for (std::size_t i = 1; i < snapshot.impressions.size(); ++i) {
      if (snapshot.impressions[i - 1].position == snapshot.impressions[i].position) {
        throw ParseError(0, "duplicate position " +
                                std::to_string(snapshot.impressions[i].position) +
                                " in snapshot (user '" + snapshot.user + "', " +
                                format_utc(snapshot.taken_at) + ")");
      }
    }
  }

  // Snapshots with equal taken_at keep input order (stable sort).
  std::stable_sort(log.snapshots.begin(), log.snapshots.end(),
                   [](const Snapshot& a, const Snapshot& b) {
                     if (a.user != b.user) return a.user < b.user;
                     return a.taken_at < b.taken_at;
                   });
  return log;
}

void write_posts(std::ostream& out, std::span<const Post> posts, Format format) {
  if (format == Format::JsonLines) {
    for (const Post& post : posts) {
      const json record = {
          {"id", post.id},
          {"publisher", post.publisher},
          {"created_at", format_utc(post.created_at)},
      };
      out << record.dump() << '\n';
    }
    return;
  }
  out << kPostCsvHeader << '\n';
  for (const Post& post : posts) {
    out << csv_field(post.id) << ',' << csv_field(post.publisher) << ','
        << format_utc(post.created_at) << '\n';
  }
}

void write_impressions(std::ostream& out, std::span<const Snapshot> snapshots, Format format) {
  if (format == Format::Csv) out << kImpressionCsvHeader << '\n';
  for (const Snapshot& snapshot : snapshots) {
    for (const Impression& impression : snapshot.impressions) {
      if (format == Format::JsonLines) {
        const json record = {
            {"user", snapshot.user},
            {"post_id", impression.post_id},
            {"publisher", impression.publisher},
            {"published_at", format_utc(impression.published_at)},
            {"impressed_at", format_utc(impression.impressed_at)},
            {"position", impression.position},
        };
        out << record.dump() << '\n';
      } else {
        out << csv_field(snapshot.user) << ',' << csv_field(impression.post_id) << ','
            << csv_field(impression.publisher) << ',' << format_utc(impression.published_at)
            << ',' << format_utc(impression.impressed_at) << ',' << impression.position << '\n';
      }
    }
  }
}

TraceMeta trace_meta(std::span<const Post> posts) {
  if (posts.empty()) throw std::domain_error("trace is empty");
  TraceMeta meta;
  meta.post_count = static_cast<std::int64_t>(posts.size());

  std::unordered_set<std::string_view> publishers;
  std::int64_t min_time = posts.front().created_at;
  std::int64_t max_time = posts.front().created_at;
  std::map<std::int64_t, std::int64_t> daily;
  for (const Post& post : posts) {
    publishers.insert(post.publisher);
    min_time = std::min(min_time, post.created_at);
    max_time = std::max(max_time, post.created_at);
    std::int64_t day = post.created_at / 86400;
    if (post.created_at % 86400 < 0) --day;
    ++daily[day * 86400];
  }
  meta.publisher_count = static_cast<std::int64_t>(publishers.size());
  meta.time_span_hours = static_cast<double>(max_time - min_time) / 3600.0;
  if (meta.time_span_hours <= 0.0) {
    throw std::domain_error("trace spans zero time; cannot estimate lambda");
  }
  meta.estimated_lambda = static_cast<double>(meta.post_count) / meta.time_span_hours;
  meta.daily_counts.assign(daily.begin(), daily.end());
  return meta;
}

std::string csv_field(std::string_view raw) {
  if (raw.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(raw);
  std::string quoted = "\"";
  for (const char c : raw) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

void write_curve_csv(std::ostream& out, const VoaCurve& curve) {
  out << abscissa_label(curve.kind) << ",model_voa,sim_mean,sim_std,rounds\n";
  for (const CurvePoint& point : curve.points) {
    out << format_double(point.abscissa) << ',' << format_double(point.model_voa) << ','
        << format_double(point.sim_mean) << ',' << format_double(point.sim_std) << ','
        << point.rounds << '\n';
  }
}

void write_ecdf_csv(std::ostream& out, const ViewerEcdf& ecdf) {
  out << "viewer_count,cumulative_fraction\n";
  for (const ViewerEcdf::Point& point : ecdf.points) {
    out << point.viewer_count << ',' << format_double(point.cumulative_fraction) << '\n';
  }
}

void write_daily_counts_csv(std::ostream& out, const TraceMeta& meta) {
  out << "day,posts\n";
  for (const auto& [day_start, posts] : meta.daily_counts) {
    out << format_utc_date(day_start) << ',' << posts << '\n';
  }
}

void write_novelty_csv(std::ostream& out,
                       std::span<const std::pair<std::string, NoveltySeries>> per_user) {
  out << "user,snapshot,taken_at,novel_impressions\n";
  for (const auto& [user, series] : per_user) {
    std::size_t index = 0;
    for (const SnapshotNovelty& point : series.per_snapshot) {
      out << csv_field(user) << ',' << index++ << ',' << format_utc(point.taken_at) << ','
          << point.novel << '\n';
    }
  }
}

void write_overlap_csv(std::ostream& out, std::span<const OverlapReportRow> rows) {
  out << "user_x,user_y,both,only_x,only_y,neither,universe_size,"
         "coverage_x_over_y,pairwise_overlap\n";
  for (const OverlapReportRow& row : rows) {
    out << csv_field(row.user_x) << ',' << csv_field(row.user_y) << ',' << row.table.both << ','
        << row.table.only_x << ',' << row.table.only_y << ',' << row.table.neither << ','
        << row.table.universe_size << ',' << format_double(row.coverage_x_over_y) << ','
        << format_double(row.pairwise) << '\n';
  }
}

}  // namespace voa
