#include "voa/voa.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core/analytics.hpp"
#include "core/errors.hpp"
#include "core/model.hpp"
#include "core/optimizer.hpp"
#include "core/simulator.hpp"
#include "core/trace_io.hpp"

namespace {

thread_local std::string g_last_error;

voa_status fail(voa_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
voa_status guarded(F&& body) noexcept {
  try {
    return body();
  } catch (const voa::ParseError& e) {
    return fail(VOA_ERR_PARSE, e.what());
  } catch (const voa::ConvergenceError& e) {
    return fail(VOA_ERR_NO_CONVERGENCE, e.what());
  } catch (const voa::NotFoundError& e) {
    return fail(VOA_ERR_NOT_FOUND, e.what());
  } catch (const voa::IoError& e) {
    return fail(VOA_ERR_IO, e.what());
  } catch (const std::domain_error& e) {
    return fail(VOA_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(VOA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(VOA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(VOA_ERR_INTERNAL, "unknown error");
  }
}

voa_status require_out(const void* pointer, const char* name) {
  if (pointer != nullptr) return VOA_OK;
  return fail(VOA_ERR_INVALID_ARGUMENT, std::string(name) + " must not be null");
}

voa::Format to_format(voa_format format) {
  switch (format) {
    case VOA_FORMAT_JSONL: return voa::Format::JsonLines;
    case VOA_FORMAT_CSV: return voa::Format::Csv;
  }
  throw std::invalid_argument("unknown format");
}

voa::AccessSchedule to_schedule(voa_schedule schedule) {
  switch (schedule) {
    case VOA_SCHEDULE_RANDOM_REFERENCE: return voa::AccessSchedule::RandomReference;
    case VOA_SCHEDULE_EXPONENTIAL_CLOCK: return voa::AccessSchedule::ExponentialClock;
    case VOA_SCHEDULE_DETERMINISTIC_CLOCK: return voa::AccessSchedule::DeterministicClock;
  }
  throw std::invalid_argument("unknown schedule");
}

std::ifstream open_input(const char* path) {
  std::ifstream input(path);
  if (!input) throw voa::IoError("cannot open '" + std::string(path) + "' for reading");
  return input;
}

// Result CSVs go to a file or to stdout; emission happens in one shot so a
// failed open never produces a partial artifact on stdout.
template <typename F>
void emit_csv(const char* path_or_null, const F& writer) {
  std::ostringstream buffer;
  writer(buffer);
  if (path_or_null == nullptr) {
    std::cout << buffer.str();
    std::cout.flush();
    return;
  }
  std::ofstream output(path_or_null, std::ios::binary);
  if (!output) throw voa::IoError("cannot open '" + std::string(path_or_null) + "' for writing");
  output << buffer.str();
  if (!output) throw voa::IoError("failed writing '" + std::string(path_or_null) + "'");
}

}  // namespace

struct voa_trace {
  std::vector<voa::Post> posts;
  // Absent for traces whose metadata is undefined (empty, or zero time span).
  std::optional<voa::TraceMeta> meta;

  const voa::TraceMeta& require_meta() const {
    if (!meta) throw std::domain_error("trace has no metadata (empty or zero time span)");
    return *meta;
  }
};

struct voa_curve {
  voa::VoaCurve curve;
};

struct voa_series {
  voa::NoveltySeries series;
};

struct voa_ecdf {
  voa::ViewerEcdf ecdf;
};

struct voa_snapshot_log {
  voa::ImpressionLog log;
  std::vector<std::string> users;  // sorted, unique
  // Contiguous [begin, end) ranges into log.snapshots, keyed by user.
  std::map<std::string, std::pair<std::size_t, std::size_t>> ranges;
  std::map<std::string, voa::PostSet> post_sets;
  voa::PostSet all_posts;
};

extern "C" {

const char* voa_status_name(voa_status status) {
  switch (status) {
    case VOA_OK: return "ok";
    case VOA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case VOA_ERR_DOMAIN: return "domain error";
    case VOA_ERR_PARSE: return "parse error";
    case VOA_ERR_IO: return "io error";
    case VOA_ERR_NO_CONVERGENCE: return "no convergence";
    case VOA_ERR_NOT_FOUND: return "not found";
    case VOA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* voa_last_error(void) { return g_last_error.c_str(); }

/* ---------- closed-form evaluators ---------- */

voa_status voa_value_exponential(double lambda, double mu, double k, double* mean,
                                 double* fill_probability) {
  if (voa_status s = require_out(mean, "mean")) return s;
  return guarded([&] {
    const voa::VoaEstimate estimate = voa::voa_exponential({lambda, mu, k, 0.0});
    *mean = estimate.mean;
    if (fill_probability != nullptr) *fill_probability = *estimate.fill_probability;
    return VOA_OK;
  });
}

voa_status voa_value_summation(double lambda, double mu, double k, double* mean) {
  if (voa_status s = require_out(mean, "mean")) return s;
  return guarded([&] {
    *mean = voa::voa_summation({lambda, mu, k, 0.0});
    return VOA_OK;
  });
}

voa_status voa_value_quadrature(double lambda, double mu, double k, double* mean) {
  if (voa_status s = require_out(mean, "mean")) return s;
  return guarded([&] {
    *mean = voa::voa_quadrature({lambda, mu, k, 0.0});
    return VOA_OK;
  });
}

voa_status voa_value_deterministic(double lambda, double tau_hours, double k, double* mean) {
  if (voa_status s = require_out(mean, "mean")) return s;
  return guarded([&] {
    *mean = voa::voa_deterministic(lambda, tau_hours, k);
    return VOA_OK;
  });
}

voa_status voa_value_poisson_k(double lambda, double mu, double alpha, double* mean) {
  if (voa_status s = require_out(mean, "mean")) return s;
  return guarded([&] {
    *mean = voa::voa_poisson_k(lambda, mu, alpha);
    return VOA_OK;
  });
}

voa_status voa_value_average_k(double lambda, double mu, double alpha, double* mean) {
  if (voa_status s = require_out(mean, "mean")) return s;
  return guarded([&] {
    *mean = voa::voa_average_k(lambda, mu, alpha);
    return VOA_OK;
  });
}

/* ---------- utility and optimal access rate ---------- */

voa_status voa_utility(double lambda, double mu, double k, double cost, double* utility) {
  if (voa_status s = require_out(utility, "utility")) return s;
  return guarded([&] {
    *utility = voa::utility({lambda, mu, k, cost});
    return VOA_OK;
  });
}

voa_status voa_utility_gradient(double lambda, double mu, double k, double cost,
                                double* gradient) {
  if (voa_status s = require_out(gradient, "gradient")) return s;
  return guarded([&] {
    *gradient = voa::utility_gradient({lambda, mu, k, cost});
    return VOA_OK;
  });
}

voa_status voa_optimal_access_rate(double lambda, double k, double cost, double* mu_star,
                                   double* utility_at_star, int* clamped) {
  if (voa_status s = require_out(mu_star, "mu_star")) return s;
  return guarded([&] {
    const voa::OptimalRate result = voa::optimal_access_rate(lambda, k, cost);
    *mu_star = result.mu_star;
    if (utility_at_star != nullptr) *utility_at_star = result.utility_at_star;
    if (clamped != nullptr) *clamped = result.clamped ? 1 : 0;
    return VOA_OK;
  });
}

voa_status voa_optimal_access_rate_numeric(double lambda, double k, double cost,
                                           double search_upper, double* mu_star) {
  if (voa_status s = require_out(mu_star, "mu_star")) return s;
  return guarded([&] {
    *mu_star = voa::optimal_access_rate_numeric(lambda, k, cost, search_upper);
    return VOA_OK;
  });
}

/* ---------- traces ---------- */

voa_status voa_trace_load(const char* path, voa_format format, voa_trace** out) {
  if (voa_status s = require_out(path, "path")) return s;
  if (voa_status s = require_out(out, "out")) return s;
  return guarded([&] {
    std::ifstream input = open_input(path);
    auto trace = std::make_unique<voa_trace>();
    trace->posts = voa::parse_posts(input, to_format(format));
    if (!trace->posts.empty()) {
      try {
        trace->meta = voa::trace_meta(trace->posts);
      } catch (const std::domain_error&) {
        // Zero-span traces stay loadable for simulation; metadata queries
        // report the domain error instead.
      }
    }
    *out = trace.release();
    return VOA_OK;
  });
}

void voa_trace_free(voa_trace* trace) { delete trace; }

int64_t voa_trace_post_count(const voa_trace* trace) {
  return trace == nullptr ? 0 : static_cast<int64_t>(trace->posts.size());
}

voa_status voa_trace_summarize(const voa_trace* trace, voa_trace_summary* out) {
  if (voa_status s = require_out(trace, "trace")) return s;
  if (voa_status s = require_out(out, "out")) return s;
  return guarded([&] {
    const voa::TraceMeta& meta = trace->require_meta();
    out->post_count = meta.post_count;
    out->publisher_count = meta.publisher_count;
    out->time_span_hours = meta.time_span_hours;
    out->estimated_lambda = meta.estimated_lambda;
    return VOA_OK;
  });
}

size_t voa_trace_day_count(const voa_trace* trace) {
  return trace == nullptr || !trace->meta ? 0 : trace->meta->daily_counts.size();
}

voa_status voa_trace_day_at(const voa_trace* trace, size_t index, char* date,
                            size_t date_size, int64_t* posts) {
  if (voa_status s = require_out(trace, "trace")) return s;
  return guarded([&] {
    const voa::TraceMeta& meta = trace->require_meta();
    if (index >= meta.daily_counts.size()) {
      throw std::invalid_argument("day index out of range");
    }
    const auto& [day_start, count] = meta.daily_counts[index];
    if (date != nullptr) {
      const std::string text = voa::format_utc_date(day_start);
      if (date_size <= text.size()) throw std::invalid_argument("date buffer too small");
      std::memcpy(date, text.c_str(), text.size() + 1);
    }
    if (posts != nullptr) *posts = count;
    return VOA_OK;
  });
}

voa_status voa_trace_daily_csv(const voa_trace* trace, const char* path_or_null_stdout) {
  if (voa_status s = require_out(trace, "trace")) return s;
  return guarded([&] {
    emit_csv(path_or_null_stdout, [&](std::ostream& out) {
      voa::write_daily_counts_csv(out, trace->require_meta());
    });
    return VOA_OK;
  });
}

/* ---------- simulation ---------- */

voa_status voa_simulate_trace(const voa_trace* trace, int32_t k, double sample_interval_hours,
                              double period_hours, int32_t rounds, uint64_t seed,
                              voa_schedule schedule, voa_sim_result* out) {
  if (voa_status s = require_out(trace, "trace")) return s;
  if (voa_status s = require_out(out, "out")) return s;
  return guarded([&] {
    voa::SimConfig config;
    config.k = k;
    config.sample_interval_hours = sample_interval_hours;
    config.period_hours = period_hours;
    config.rounds = rounds;
    config.seed = seed;
    config.schedule = to_schedule(schedule);
    const voa::SimPoint point = voa::simulate_trace_fifo(trace->posts, config);
    *out = {point.mean, point.stddev, point.rounds};
    return VOA_OK;
  });
}

voa_status voa_simulate_synthetic(double lambda, double mu, int32_t k,
                                  int64_t accesses_per_round, int32_t rounds, uint64_t seed,
                                  voa_schedule schedule, voa_sim_result* out) {
  if (voa_status s = require_out(out, "out")) return s;
  return guarded([&] {
    const voa::SimPoint point =
        voa::simulate_synthetic({lambda, mu, static_cast<double>(k), 0.0}, accesses_per_round,
                                rounds, seed, to_schedule(schedule));
    *out = {point.mean, point.stddev, point.rounds};
    return VOA_OK;
  });
}

voa_status voa_sweep_trace(const voa_trace* trace, int32_t k, const double* inverse_mu,
                           size_t count, double model_lambda, double period_hours,
                           int32_t rounds, uint64_t seed, voa_schedule schedule,
                           voa_curve** out) {
  if (voa_status s = require_out(trace, "trace")) return s;
  if (voa_status s = require_out(inverse_mu, "inverse_mu")) return s;
  if (voa_status s = require_out(out, "out")) return s;
  return guarded([&] {
    voa::SimConfig config;
    config.k = k;
    config.period_hours = period_hours;
    config.rounds = rounds;
    config.seed = seed;
    config.schedule = to_schedule(schedule);
    const double lambda =
        model_lambda > 0.0 ? model_lambda : trace->require_meta().estimated_lambda;
    auto curve = std::make_unique<voa_curve>();
    curve->curve = voa::sweep_inverse_mu(trace->posts, config, {inverse_mu, count}, lambda);
    *out = curve.release();
    return VOA_OK;
  });
}

voa_status voa_sweep_synthetic(double lambda, int32_t k, const double* inverse_mu,
                               size_t count, double period_hours, int32_t rounds,
                               uint64_t seed, voa_schedule schedule, voa_curve** out) {
  if (voa_status s = require_out(inverse_mu, "inverse_mu")) return s;
  if (voa_status s = require_out(out, "out")) return s;
  return guarded([&] {
    voa::SimConfig config;
    config.k = k;
    config.period_hours = period_hours;
    config.rounds = rounds;
    config.seed = seed;
    config.schedule = to_schedule(schedule);
    auto curve = std::make_unique<voa_curve>();
    curve->curve = voa::sweep_inverse_mu(
        voa::ModelParams{lambda, 1.0, static_cast<double>(k), 0.0}, config,
        {inverse_mu, count});
    *out = curve.release();
    return VOA_OK;
  });
}

size_t voa_curve_size(const voa_curve* curve) {
  return curve == nullptr ? 0 : curve->curve.points.size();
}

voa_status voa_curve_row(const voa_curve* curve, size_t index, double* abscissa,
                         double* model_voa, double* sim_mean, double* sim_std,
                         int32_t* rounds) {
  if (voa_status s = require_out(curve, "curve")) return s;
  return guarded([&] {
    if (index >= curve->curve.points.size()) {
      throw std::invalid_argument("curve row index out of range");
    }
    const voa::CurvePoint& point = curve->curve.points[index];
    if (abscissa != nullptr) *abscissa = point.abscissa;
    if (model_voa != nullptr) *model_voa = point.model_voa;
    if (sim_mean != nullptr) *sim_mean = point.sim_mean;
    if (sim_std != nullptr) *sim_std = point.sim_std;
    if (rounds != nullptr) *rounds = point.rounds;
    return VOA_OK;
  });
}

voa_status voa_curve_write_csv(const voa_curve* curve, const char* path_or_null_stdout) {
  if (voa_status s = require_out(curve, "curve")) return s;
  return guarded([&] {
    emit_csv(path_or_null_stdout,
             [&](std::ostream& out) { voa::write_curve_csv(out, curve->curve); });
    return VOA_OK;
  });
}

void voa_curve_free(voa_curve* curve) { delete curve; }

/* ---------- snapshot logs ---------- */

voa_status voa_snapshot_log_load(const char* path, voa_format format, voa_snapshot_log** out) {
  if (voa_status s = require_out(path, "path")) return s;
  if (voa_status s = require_out(out, "out")) return s;
  return guarded([&] {
    std::ifstream input = open_input(path);
    auto log = std::make_unique<voa_snapshot_log>();
    log->log = voa::parse_impressions(input, to_format(format));
    const auto& snapshots = log->log.snapshots;
    for (std::size_t i = 0; i < snapshots.size();) {
      std::size_t j = i;
      while (j < snapshots.size() && snapshots[j].user == snapshots[i].user) ++j;
      log->users.push_back(snapshots[i].user);
      log->ranges.emplace(snapshots[i].user, std::make_pair(i, j));
      voa::PostSet& posts = log->post_sets[snapshots[i].user];
      for (std::size_t s = i; s < j; ++s) {
        for (const voa::Impression& impression : snapshots[s].impressions) {
          posts.insert(impression.post_id);
          log->all_posts.insert(impression.post_id);
        }
      }
      i = j;
    }
    *out = log.release();
    return VOA_OK;
  });
}

void voa_snapshot_log_free(voa_snapshot_log* log) { delete log; }

size_t voa_snapshot_log_user_count(const voa_snapshot_log* log) {
  return log == nullptr ? 0 : log->users.size();
}

const char* voa_snapshot_log_user(const voa_snapshot_log* log, size_t index) {
  if (log == nullptr || index >= log->users.size()) return nullptr;
  return log->users[index].c_str();
}

int64_t voa_snapshot_log_duplicates_dropped(const voa_snapshot_log* log) {
  return log == nullptr ? 0 : log->log.duplicates_dropped;
}

namespace {

std::pair<std::size_t, std::size_t> user_range(const voa_snapshot_log* log,
                                               const char* user) {
  const auto it = log->ranges.find(user);
  if (it == log->ranges.end()) {
    throw voa::NotFoundError("unknown user '" + std::string(user) + "'");
  }
  return it->second;
}

voa::NoveltySeries novelty_for_user(const voa_snapshot_log* log, const char* user,
                                    int32_t k_truncate, int fifo_reorder) {
  const auto [begin, end] = user_range(log, user);
  const std::optional<int> truncate =
      k_truncate > 0 ? std::optional<int>(k_truncate) : std::nullopt;
  const std::span<const voa::Snapshot> snapshots(log->log.snapshots.data() + begin,
                                                 end - begin);
  if (!fifo_reorder) return voa::voa_from_snapshots(snapshots, truncate);
  std::vector<voa::Snapshot> reordered;
  reordered.reserve(snapshots.size());
  for (const voa::Snapshot& snapshot : snapshots) {
    reordered.push_back(voa::reorder_fifo(snapshot));
  }
  return voa::voa_from_snapshots(reordered, truncate);
}

voa::OverlapTable overlap_for_users(const voa_snapshot_log* log, const char* user_x,
                                    const char* user_y, int universe_all) {
  const auto x = log->post_sets.find(user_x);
  if (x == log->post_sets.end()) {
    throw voa::NotFoundError("unknown user '" + std::string(user_x) + "'");
  }
  const auto y = log->post_sets.find(user_y);
  if (y == log->post_sets.end()) {
    throw voa::NotFoundError("unknown user '" + std::string(user_y) + "'");
  }
  if (universe_all) return voa::overlap_table(x->second, y->second, log->all_posts);
  voa::PostSet pair_universe = x->second;
  pair_universe.insert(y->second.begin(), y->second.end());
  return voa::overlap_table(x->second, y->second, pair_universe);
}

}  // namespace

voa_status voa_log_novelty_series(const voa_snapshot_log* log, const char* user,
                                  int32_t k_truncate, int fifo_reorder, voa_series** out) {
  if (voa_status s = require_out(log, "log")) return s;
  if (voa_status s = require_out(user, "user")) return s;
  if (voa_status s = require_out(out, "out")) return s;
  return guarded([&] {
    auto series = std::make_unique<voa_series>();
    series->series = novelty_for_user(log, user, k_truncate, fifo_reorder);
    *out = series.release();
    return VOA_OK;
  });
}

size_t voa_series_size(const voa_series* series) {
  return series == nullptr ? 0 : series->series.per_snapshot.size();
}

voa_status voa_series_at(const voa_series* series, size_t index, int64_t* taken_at,
                         int32_t* novel) {
  if (voa_status s = require_out(series, "series")) return s;
  return guarded([&] {
    if (index >= series->series.per_snapshot.size()) {
      throw std::invalid_argument("series index out of range");
    }
    const voa::SnapshotNovelty& point = series->series.per_snapshot[index];
    if (taken_at != nullptr) *taken_at = point.taken_at;
    if (novel != nullptr) *novel = point.novel;
    return VOA_OK;
  });
}

double voa_series_mean(const voa_series* series) {
  return series == nullptr ? 0.0 : series->series.mean;
}

void voa_series_free(voa_series* series) { delete series; }

voa_status voa_log_novelty_csv(const voa_snapshot_log* log, const char* user_or_null,
                               int32_t k_truncate, int fifo_reorder,
                               const char* path_or_null_stdout) {
  if (voa_status s = require_out(log, "log")) return s;
  return guarded([&] {
    std::vector<std::pair<std::string, voa::NoveltySeries>> per_user;
    if (user_or_null != nullptr) {
      per_user.emplace_back(user_or_null,
                            novelty_for_user(log, user_or_null, k_truncate, fifo_reorder));
    } else {
      for (const std::string& user : log->users) {
        per_user.emplace_back(user,
                              novelty_for_user(log, user.c_str(), k_truncate, fifo_reorder));
      }
    }
    emit_csv(path_or_null_stdout,
             [&](std::ostream& out) { voa::write_novelty_csv(out, per_user); });
    return VOA_OK;
  });
}

voa_status voa_log_overlap(const voa_snapshot_log* log, const char* user_x,
                           const char* user_y, int universe_all, voa_overlap* out) {
  if (voa_status s = require_out(log, "log")) return s;
  if (voa_status s = require_out(user_x, "user_x")) return s;
  if (voa_status s = require_out(user_y, "user_y")) return s;
  if (voa_status s = require_out(out, "out")) return s;
  return guarded([&] {
    const voa::OverlapTable table = overlap_for_users(log, user_x, user_y, universe_all);
    *out = {table.both, table.only_x, table.only_y, table.neither, table.universe_size};
    return VOA_OK;
  });
}

voa_status voa_overlap_coverage(const voa_overlap* table, double* fraction) {
  if (voa_status s = require_out(table, "table")) return s;
  if (voa_status s = require_out(fraction, "fraction")) return s;
  return guarded([&] {
    *fraction = voa::coverage_fraction(
        {table->both, table->only_x, table->only_y, table->neither, table->universe_size});
    return VOA_OK;
  });
}

voa_status voa_overlap_pairwise(const voa_overlap* table, double* overlap) {
  if (voa_status s = require_out(table, "table")) return s;
  if (voa_status s = require_out(overlap, "overlap")) return s;
  return guarded([&] {
    *overlap = voa::pairwise_overlap(voa::OverlapTable{
        table->both, table->only_x, table->only_y, table->neither, table->universe_size});
    return VOA_OK;
  });
}

voa_status voa_log_overlap_csv(const voa_snapshot_log* log, int universe_all,
                               const char* path_or_null_stdout) {
  if (voa_status s = require_out(log, "log")) return s;
  return guarded([&] {
    std::vector<voa::OverlapReportRow> rows;
    for (std::size_t i = 0; i < log->users.size(); ++i) {
      for (std::size_t j = i + 1; j < log->users.size(); ++j) {
        voa::OverlapReportRow row;
        row.user_x = log->users[i];
        row.user_y = log->users[j];
        row.table = overlap_for_users(log, row.user_x.c_str(), row.user_y.c_str(),
                                      universe_all);
        row.coverage_x_over_y = voa::coverage_fraction(row.table);
        row.pairwise = voa::pairwise_overlap(row.table);
        rows.push_back(std::move(row));
      }
    }
    emit_csv(path_or_null_stdout,
             [&](std::ostream& out) { voa::write_overlap_csv(out, rows); });
    return VOA_OK;
  });
}

voa_status voa_log_viewer_ecdf(const voa_snapshot_log* log, voa_ecdf** out) {
  if (voa_status s = require_out(log, "log")) return s;
  if (voa_status s = require_out(out, "out")) return s;
  return guarded([&] {
    std::vector<voa::PostSet> sets;
    sets.reserve(log->users.size());
    for (const std::string& user : log->users) sets.push_back(log->post_sets.at(user));
    auto ecdf = std::make_unique<voa_ecdf>();
    ecdf->ecdf = voa::viewer_ecdf(sets);
    *out = ecdf.release();
    return VOA_OK;
  });
}

size_t voa_ecdf_size(const voa_ecdf* ecdf) {
  return ecdf == nullptr ? 0 : ecdf->ecdf.points.size();
}

voa_status voa_ecdf_at(const voa_ecdf* ecdf, size_t index, int32_t* viewer_count,
                       double* cumulative_fraction) {
  if (voa_status s = require_out(ecdf, "ecdf")) return s;
  return guarded([&] {
    if (index >= ecdf->ecdf.points.size()) {
      throw std::invalid_argument("ecdf index out of range");
    }
    const voa::ViewerEcdf::Point& point = ecdf->ecdf.points[index];
    if (viewer_count != nullptr) *viewer_count = point.viewer_count;
    if (cumulative_fraction != nullptr) *cumulative_fraction = point.cumulative_fraction;
    return VOA_OK;
  });
}

voa_status voa_ecdf_write_csv(const voa_ecdf* ecdf, const char* path_or_null_stdout) {
  if (voa_status s = require_out(ecdf, "ecdf")) return s;
  return guarded([&] {
    emit_csv(path_or_null_stdout,
             [&](std::ostream& out) { voa::write_ecdf_csv(out, ecdf->ecdf); });
    return VOA_OK;
  });
}

void voa_ecdf_free(voa_ecdf* ecdf) { delete ecdf; }

/* ---------- misc ---------- */

voa_status voa_format_utc(int64_t epoch_seconds, char* buffer, size_t buffer_size) {
  if (voa_status s = require_out(buffer, "buffer")) return s;
  return guarded([&] {
    const std::string text = voa::format_utc(epoch_seconds);
    if (buffer_size <= text.size()) throw std::invalid_argument("buffer too small");
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    return VOA_OK;
  });
}

voa_status voa_parse_utc(const char* text, int64_t* epoch_seconds) {
  if (voa_status s = require_out(text, "text")) return s;
  if (voa_status s = require_out(epoch_seconds, "epoch_seconds")) return s;
  return guarded([&] {
    *epoch_seconds = voa::parse_utc(text);
    return VOA_OK;
  });
}

}  /* extern "C" */
