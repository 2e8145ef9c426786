// voa - command-line front end for the value-of-access library.
//
// Scalar results come out as JSON objects, vector results as CSV; --format
// overrides the default per subcommand. Everything stochastic requires an
// explicit --seed and reproduces byte-identically.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "voa/voa.h"

namespace {

using nlohmann::json;

struct Failure {
  int exit_code;
  std::string message;
};

int status_exit_code(voa_status status) {
  switch (status) {
    case VOA_OK: return 0;
    case VOA_ERR_INVALID_ARGUMENT: return 2;
    case VOA_ERR_DOMAIN: return 3;
    case VOA_ERR_PARSE: return 4;
    case VOA_ERR_IO: return 5;
    case VOA_ERR_NO_CONVERGENCE: return 6;
    case VOA_ERR_NOT_FOUND: return 7;
    case VOA_ERR_INTERNAL: return 70;
  }
  return 70;
}

void check(voa_status status) {
  if (status != VOA_OK) throw Failure{status_exit_code(status), voa_last_error()};
}

[[noreturn]] void usage_error(const std::string& message) { throw Failure{2, message}; }

std::string fmt(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::string iso_utc(std::int64_t epoch_seconds) {
  char buffer[24];
  check(voa_format_utc(epoch_seconds, buffer, sizeof buffer));
  return buffer;
}

// ---- output plumbing ----

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw Failure{5, "cannot open '" + out_path + "' for writing"};
  file << text;
  if (!file) throw Failure{5, "failed writing '" + out_path + "'"};
}

void emit_json(const json& value, const std::string& out_path) {
  emit_text(value.dump(2) + "\n", out_path);
}

std::string csv_escape(const std::string& raw) {
  if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
  std::string quoted = "\"";
  for (const char c : raw) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  return quoted + "\"";
}

// Single-row CSV rendering of a scalar result.
void emit_scalar(const std::vector<std::pair<std::string, json>>& fields,
                 const std::string& format, const std::string& out_path) {
  if (format == "json") {
    json object;
    for (const auto& [key, value] : fields) object[key] = value;
    emit_json(object, out_path);
    return;
  }
  std::string header;
  std::string row;
  for (const auto& [key, value] : fields) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += key;
    if (value.is_number_float()) {
      row += fmt(value.get<double>());
    } else if (value.is_boolean()) {
      row += value.get<bool>() ? "1" : "0";
    } else if (value.is_string()) {
      row += csv_escape(value.get<std::string>());
    } else {
      row += value.dump();
    }
  }
  emit_text(header + "\n" + row + "\n", out_path);
}

// ---- input plumbing ----

voa_format detect_format(const std::string& path, const std::string& requested) {
  if (requested == "jsonl") return VOA_FORMAT_JSONL;
  if (requested == "csv") return VOA_FORMAT_CSV;
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return VOA_FORMAT_CSV;
  if (path.size() >= 6 && path.substr(path.size() - 6) == ".jsonl") return VOA_FORMAT_JSONL;
  std::ifstream probe(path);
  char first = 0;
  while (probe.get(first) && (first == ' ' || first == '\t' || first == '\n' || first == '\r')) {
  }
  return first == '{' ? VOA_FORMAT_JSONL : VOA_FORMAT_CSV;
}

voa_schedule parse_schedule(const std::string& name) {
  if (name == "random-ref") return VOA_SCHEDULE_RANDOM_REFERENCE;
  if (name == "exp") return VOA_SCHEDULE_EXPONENTIAL_CLOCK;
  if (name == "det") return VOA_SCHEDULE_DETERMINISTIC_CLOCK;
  usage_error("unknown --schedule '" + name + "' (expected random-ref, exp or det)");
}

// RAII for the C handles.
using TracePtr = std::unique_ptr<voa_trace, decltype(&voa_trace_free)>;
using LogPtr = std::unique_ptr<voa_snapshot_log, decltype(&voa_snapshot_log_free)>;
using CurvePtr = std::unique_ptr<voa_curve, decltype(&voa_curve_free)>;
using SeriesPtr = std::unique_ptr<voa_series, decltype(&voa_series_free)>;
using EcdfPtr = std::unique_ptr<voa_ecdf, decltype(&voa_ecdf_free)>;

TracePtr load_trace(const std::string& path, const std::string& input_format) {
  voa_trace* trace = nullptr;
  check(voa_trace_load(path.c_str(), detect_format(path, input_format), &trace));
  return {trace, &voa_trace_free};
}

LogPtr load_log(const std::string& path, const std::string& input_format) {
  voa_snapshot_log* log = nullptr;
  check(voa_snapshot_log_load(path.c_str(), detect_format(path, input_format), &log));
  return {log, &voa_snapshot_log_free};
}

// ---- sweep grids ----

// "start:stop:step" becomes an inclusive grid; a plain number is a scalar.
bool is_range(const std::string& text) { return text.find(':') != std::string::npos; }

double parse_number(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    usage_error("expected a number for " + flag + ", got '" + text + "'");
  }
}

std::vector<double> parse_range(const std::string& text, const std::string& flag) {
  const std::size_t first = text.find(':');
  const std::size_t second = text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    usage_error("expected start:stop:step for " + flag + ", got '" + text + "'");
  }
  const double start = parse_number(text.substr(0, first), flag);
  const double stop = parse_number(text.substr(first + 1, second - first - 1), flag);
  const double step = parse_number(text.substr(second + 1), flag);
  if (step <= 0.0 || stop < start) {
    usage_error("range for " + flag + " needs stop >= start and step > 0");
  }
  std::vector<double> values;
  const auto count = static_cast<std::size_t>((stop - start) / step + 1e-9) + 1;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) values.push_back(start + static_cast<double>(i) * step);
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"value-of-access modeling for social-network timelines"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format;
  std::string input_format = "auto";
  app.add_option("--out", out_path, "Write the result to this path instead of stdout")
      ->capture_default_str();
  app.add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json", ""}));
  app.add_option("--input-format", input_format, "Force input format: jsonl or csv")
      ->check(CLI::IsMember({"auto", "jsonl", "csv"}));

  // ---- eval ----
  auto* eval = app.add_subcommand("eval", "Evaluate one closed-form value of access");
  eval->fallthrough();
  std::string eval_variant = "fixed";
  double eval_lambda = 0.0, eval_mu = 0.0, eval_k = 0.0, eval_alpha = 0.0, eval_tau = 0.0;
  bool eval_has_mu = false, eval_has_k = false, eval_has_alpha = false, eval_has_tau = false;
  eval->add_option("--variant", eval_variant, "fixed, average, poisson or deterministic")
      ->check(CLI::IsMember({"fixed", "average", "poisson", "deterministic"}));
  eval->add_option("--lambda", eval_lambda, "Post creation rate, posts/hour")->required();
  eval->add_option("--mu", eval_mu, "Access rate, accesses/hour")
      ->each([&](const std::string&) { eval_has_mu = true; });
  eval->add_option("--k", eval_k, "Timeline capacity")
      ->each([&](const std::string&) { eval_has_k = true; });
  eval->add_option("--alpha", eval_alpha, "Mean timeline size (average/poisson variants)")
      ->each([&](const std::string&) { eval_has_alpha = true; });
  eval->add_option("--interval-hours", eval_tau, "Inter-access time (deterministic variant)")
      ->each([&](const std::string&) { eval_has_tau = true; });
  eval->callback([&] {
    std::vector<std::pair<std::string, json>> fields;
    fields.emplace_back("variant", eval_variant);
    fields.emplace_back("lambda", eval_lambda);
    double mean = 0.0;
    if (eval_variant == "fixed") {
      if (!eval_has_mu || !eval_has_k) usage_error("eval --variant fixed needs --mu and --k");
      double fill = 0.0;
      check(voa_value_exponential(eval_lambda, eval_mu, eval_k, &mean, &fill));
      fields.emplace_back("mu", eval_mu);
      fields.emplace_back("k", eval_k);
      fields.emplace_back("voa", mean);
      fields.emplace_back("fill_probability", fill);
    } else if (eval_variant == "average") {
      if (!eval_has_mu || !eval_has_alpha) {
        usage_error("eval --variant average needs --mu and --alpha");
      }
      check(voa_value_average_k(eval_lambda, eval_mu, eval_alpha, &mean));
      fields.emplace_back("mu", eval_mu);
      fields.emplace_back("alpha", eval_alpha);
      fields.emplace_back("voa", mean);
    } else if (eval_variant == "poisson") {
      if (!eval_has_mu || !eval_has_alpha) {
        usage_error("eval --variant poisson needs --mu and --alpha");
      }
      check(voa_value_poisson_k(eval_lambda, eval_mu, eval_alpha, &mean));
      fields.emplace_back("mu", eval_mu);
      fields.emplace_back("alpha", eval_alpha);
      fields.emplace_back("voa", mean);
    } else {
      if (!eval_has_tau || !eval_has_k) {
        usage_error("eval --variant deterministic needs --interval-hours and --k");
      }
      check(voa_value_deterministic(eval_lambda, eval_tau, eval_k, &mean));
      fields.emplace_back("interval_hours", eval_tau);
      fields.emplace_back("k", eval_k);
      fields.emplace_back("voa", mean);
    }
    emit_scalar(fields, format.empty() ? "json" : format, out_path);
  });

  // ---- optimize ----
  auto* optimize = app.add_subcommand("optimize", "Closed-form optimal access rate");
  optimize->fallthrough();
  double opt_lambda = 0.0, opt_k = 0.0, opt_cost = 0.0;
  optimize->add_option("--lambda", opt_lambda, "Post creation rate, posts/hour")->required();
  optimize->add_option("--k", opt_k, "Timeline capacity (integer >= 1)")->required();
  optimize->add_option("--cost", opt_cost, "Cost per access")->required();
  optimize->callback([&] {
    double mu_star = 0.0, utility_at_star = 0.0;
    int clamped = 0;
    check(voa_optimal_access_rate(opt_lambda, opt_k, opt_cost, &mu_star, &utility_at_star,
                                  &clamped));
    emit_scalar({{"lambda", opt_lambda},
                 {"k", opt_k},
                 {"cost", opt_cost},
                 {"mu_star", mu_star},
                 {"utility_at_star", utility_at_star},
                 {"clamped", clamped != 0}},
                format.empty() ? "json" : format, out_path);
  });

  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the value of access");
  simulate->fallthrough();
  std::string sim_posts, sim_schedule;
  double sim_lambda = 0.0, sim_mu = 0.0, sim_interval = 0.0, sim_period = 0.0;
  std::int64_t sim_accesses = 0;
  int sim_k = 0, sim_rounds = 0;
  std::uint64_t sim_seed = 0;
  bool sim_has_mu = false, sim_has_interval = false;
  simulate->add_option("--posts", sim_posts, "Post trace file: trace-driven mode");
  simulate->add_option("--lambda", sim_lambda, "Post creation rate (synthetic mode)");
  simulate->add_option("--mu", sim_mu, "Access rate, accesses/hour")
      ->each([&](const std::string&) { sim_has_mu = true; });
  simulate->add_option("--interval-hours", sim_interval, "Sample interval 1/mu")
      ->each([&](const std::string&) { sim_has_interval = true; });
  simulate->add_option("--k", sim_k, "Timeline capacity")->required();
  simulate->add_option("--accesses", sim_accesses, "Accesses per round (synthetic mode)");
  simulate->add_option("--period-hours", sim_period, "Observation period (trace mode)");
  simulate->add_option("--rounds", sim_rounds, "Independent simulation rounds")->required();
  simulate->add_option("--seed", sim_seed, "RNG seed")->required();
  simulate->add_option("--schedule", sim_schedule,
                       "random-ref, exp or det (trace default random-ref, synthetic exp)");
  simulate->callback([&] {
    if (sim_has_mu == sim_has_interval) {
      usage_error("simulate needs exactly one of --mu or --interval-hours");
    }
    const double mu = sim_has_mu ? sim_mu : 1.0 / sim_interval;
    voa_sim_result result{};
    if (!sim_posts.empty()) {
      if (sim_period <= 0.0) usage_error("trace simulation needs --period-hours > 0");
      const TracePtr trace = load_trace(sim_posts, input_format);
      const voa_schedule schedule =
          parse_schedule(sim_schedule.empty() ? "random-ref" : sim_schedule);
      check(voa_simulate_trace(trace.get(), sim_k, 1.0 / mu, sim_period, sim_rounds, sim_seed,
                               schedule, &result));
    } else {
      if (sim_accesses <= 0) usage_error("synthetic simulation needs --accesses > 0");
      const voa_schedule schedule = parse_schedule(sim_schedule.empty() ? "exp" : sim_schedule);
      check(voa_simulate_synthetic(sim_lambda, mu, sim_k, sim_accesses, sim_rounds, sim_seed,
                                   schedule, &result));
    }
    emit_scalar({{"mean", result.mean}, {"stddev", result.stddev}, {"rounds", result.rounds}},
                format.empty() ? "json" : format, out_path);
  });

  // ---- sweep ----
  auto* sweep = app.add_subcommand(
      "sweep", "Grid sweep; exactly one axis flag takes range syntax start:stop:step");
  sweep->fallthrough();
  std::string sweep_metric = "voa";
  std::string sweep_k, sweep_mu, sweep_inverse_mu, sweep_lambda, sweep_rho, sweep_posts,
      sweep_schedule;
  double sweep_cost = 0.0, sweep_period = 0.0;
  int sweep_rounds = 0;
  std::uint64_t sweep_seed = 0;
  bool sweep_has_cost = false, sweep_has_rounds = false, sweep_has_seed = false;
  sweep->add_option("--metric", sweep_metric, "voa, utility or mu-star")
      ->check(CLI::IsMember({"voa", "utility", "mu-star"}));
  sweep->add_option("--k", sweep_k, "Timeline capacity (value or range)");
  sweep->add_option("--mu", sweep_mu, "Access rate (value or range)");
  sweep->add_option("--inverse-mu", sweep_inverse_mu, "Sample interval 1/mu (value or range)");
  sweep->add_option("--lambda", sweep_lambda, "Post creation rate (value or range)");
  sweep->add_option("--rho", sweep_rho, "lambda/mu (value or range)");
  sweep->add_option("--cost", sweep_cost, "Cost per access (utility and mu-star metrics)")
      ->each([&](const std::string&) { sweep_has_cost = true; });
  sweep->add_option("--posts", sweep_posts, "Post trace file: trace-driven simulation columns");
  sweep->add_option("--period-hours", sweep_period, "Observation period for simulation");
  sweep->add_option("--rounds", sweep_rounds, "Simulation rounds; enables simulation columns")
      ->each([&](const std::string&) { sweep_has_rounds = true; });
  sweep->add_option("--seed", sweep_seed, "RNG seed (required with --rounds)")
      ->each([&](const std::string&) { sweep_has_seed = true; });
  sweep->add_option("--schedule", sweep_schedule,
                    "random-ref, exp or det (trace default random-ref, synthetic exp)");
  sweep->callback([&] {
    struct AxisFlag {
      const char* name;
      const std::string* text;
    };
    const AxisFlag axes[] = {{"k", &sweep_k},
                             {"mu", &sweep_mu},
                             {"inverse_mu", &sweep_inverse_mu},
                             {"lambda", &sweep_lambda},
                             {"rho", &sweep_rho}};
    const AxisFlag* axis = nullptr;
    for (const AxisFlag& flag : axes) {
      if (!flag.text->empty() && is_range(*flag.text)) {
        if (axis != nullptr) usage_error("only one axis flag may carry a range");
        axis = &flag;
      }
    }
    if (axis == nullptr) usage_error("sweep needs one axis flag with range syntax start:stop:step");
    const std::vector<double> grid =
        parse_range(*axis->text, std::string("--") + axis->name);
    const std::string axis_name = axis->name;

    const auto scalar = [&](const std::string& text, const char* flag,
                            std::optional<double> fallback) -> double {
      if (text.empty()) {
        if (!fallback) usage_error(std::string("sweep needs ") + flag);
        return *fallback;
      }
      if (is_range(text)) usage_error(std::string(flag) + " already carries the range");
      return parse_number(text, flag);
    };

    if (sweep_has_rounds || sweep_has_seed || !sweep_posts.empty()) {
      // Simulated sweep: model column plus Monte Carlo columns.
      if (!(sweep_has_rounds && sweep_has_seed)) {
        usage_error("simulation sweeps need both --rounds and --seed");
      }
      if (axis_name != "inverse_mu") usage_error("simulation sweeps support only --inverse-mu");
      if (sweep_period <= 0.0) usage_error("simulation sweeps need --period-hours > 0");
      if (sweep_metric != "voa") usage_error("simulation sweeps support only --metric voa");
      const double k = scalar(sweep_k, "--k", std::nullopt);
      CurvePtr curve{nullptr, &voa_curve_free};
      if (!sweep_posts.empty()) {
        const TracePtr trace = load_trace(sweep_posts, input_format);
        const voa_schedule schedule =
            parse_schedule(sweep_schedule.empty() ? "random-ref" : sweep_schedule);
        // --lambda overrides the model column; default is the trace estimate.
        const double model_lambda =
            sweep_lambda.empty() ? -1.0 : parse_number(sweep_lambda, "--lambda");
        voa_curve* raw = nullptr;
        check(voa_sweep_trace(trace.get(), static_cast<int>(k), grid.data(), grid.size(),
                              model_lambda, sweep_period, sweep_rounds, sweep_seed, schedule,
                              &raw));
        curve.reset(raw);
      } else {
        const double lambda = scalar(sweep_lambda, "--lambda", std::nullopt);
        const voa_schedule schedule =
            parse_schedule(sweep_schedule.empty() ? "exp" : sweep_schedule);
        voa_curve* raw = nullptr;
        check(voa_sweep_synthetic(lambda, static_cast<int>(k), grid.data(), grid.size(),
                                  sweep_period, sweep_rounds, sweep_seed, schedule, &raw));
        curve.reset(raw);
      }
      if (format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < voa_curve_size(curve.get()); ++i) {
          double abscissa = 0.0, model = 0.0, mean = 0.0, std_dev = 0.0;
          std::int32_t rounds = 0;
          check(voa_curve_row(curve.get(), i, &abscissa, &model, &mean, &std_dev, &rounds));
          rows.push_back({{"inverse_mu", abscissa},
                          {"model_voa", model},
                          {"sim_mean", mean},
                          {"sim_std", std_dev},
                          {"rounds", rounds}});
        }
        emit_json(rows, out_path);
      } else {
        check(voa_curve_write_csv(curve.get(), out_path.empty() ? nullptr : out_path.c_str()));
      }
      return;
    }

    // Analytic sweep.
    std::string header;
    std::vector<std::vector<double>> rows;
    const double mu_default = 1.0;
    for (const double x : grid) {
      double k = 0.0, mu = 0.0, lambda = 0.0;
      if (axis_name == "k") k = x; else k = scalar(sweep_k, "--k", std::nullopt);
      if (axis_name == "mu") {
        mu = x;
      } else if (axis_name == "inverse_mu") {
        mu = 1.0 / x;
      } else if (sweep_metric != "mu-star") {
        mu = scalar(sweep_mu, "--mu",
                    sweep_rho.empty() && axis_name != "rho" ? std::nullopt
                                                            : std::optional<double>(mu_default));
      }
      if (axis_name == "lambda") {
        lambda = x;
      } else if (axis_name == "rho") {
        lambda = x * mu;
      } else if (!sweep_rho.empty()) {
        lambda = parse_number(sweep_rho, "--rho") * mu;
      } else {
        lambda = scalar(sweep_lambda, "--lambda", std::nullopt);
      }

      if (sweep_metric == "voa") {
        double mean = 0.0;
        check(voa_value_exponential(lambda, mu, k, &mean, nullptr));
        rows.push_back({x, mean});
        header = axis_name + ",model_voa";
      } else if (sweep_metric == "utility") {
        if (!sweep_has_cost) usage_error("--metric utility needs --cost");
        double value = 0.0;
        check(voa_utility(lambda, mu, k, sweep_cost, &value));
        rows.push_back({x, value});
        header = axis_name + ",utility";
      } else {
        if (!sweep_has_cost) usage_error("--metric mu-star needs --cost");
        if (axis_name != "k" && axis_name != "lambda") {
          usage_error("--metric mu-star sweeps over --k or --lambda");
        }
        double mu_star = 0.0, at_star = 0.0;
        int clamped = 0;
        check(voa_optimal_access_rate(lambda, k, sweep_cost, &mu_star, &at_star, &clamped));
        rows.push_back({x, mu_star, at_star, static_cast<double>(clamped)});
        header = axis_name + ",mu_star,utility_at_star,clamped";
      }
    }
    if (format == "json") {
      json out_rows = json::array();
      std::vector<std::string> columns;
      std::string column;
      for (std::stringstream names(header); std::getline(names, column, ',');) {
        columns.push_back(column);
      }
      for (const std::vector<double>& row : rows) {
        json object;
        for (std::size_t c = 0; c < row.size(); ++c) object[columns[c]] = row[c];
        out_rows.push_back(object);
      }
      emit_json(out_rows, out_path);
    } else {
      std::string text = header + "\n";
      for (const std::vector<double>& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          if (c != 0) text += ',';
          text += fmt(row[c]);
        }
        text += '\n';
      }
      emit_text(text, out_path);
    }
  });

  // ---- snapshot-voa ----
  auto* snapshot_voa =
      app.add_subcommand("snapshot-voa", "Per-snapshot novelty from measured impression logs");
  snapshot_voa->fallthrough();
  std::string sv_impressions, sv_user;
  int sv_truncate = 0;
  bool sv_fifo = false;
  snapshot_voa->add_option("--impressions", sv_impressions, "Impression log file")->required();
  snapshot_voa->add_option("--user", sv_user, "Restrict to one user");
  snapshot_voa->add_option("--truncate-k", sv_truncate, "Ignore positions greater than this");
  snapshot_voa->add_flag("--fifo-reorder", sv_fifo,
                         "Re-sort snapshots reverse-chronologically first");
  snapshot_voa->callback([&] {
    const LogPtr log = load_log(sv_impressions, input_format);
    if (format == "json") {
      json users = json::array();
      const auto emit_user = [&](const char* user) {
        voa_series* raw = nullptr;
        check(voa_log_novelty_series(log.get(), user, sv_truncate, sv_fifo ? 1 : 0, &raw));
        const SeriesPtr series(raw, &voa_series_free);
        json per_snapshot = json::array();
        for (std::size_t i = 0; i < voa_series_size(series.get()); ++i) {
          std::int64_t taken_at = 0;
          std::int32_t novel = 0;
          check(voa_series_at(series.get(), i, &taken_at, &novel));
          per_snapshot.push_back({{"taken_at", iso_utc(taken_at)}, {"novel", novel}});
        }
        users.push_back({{"user", user},
                         {"mean", voa_series_mean(series.get())},
                         {"per_snapshot", per_snapshot}});
      };
      if (!sv_user.empty()) {
        emit_user(sv_user.c_str());
      } else {
        for (std::size_t i = 0; i < voa_snapshot_log_user_count(log.get()); ++i) {
          emit_user(voa_snapshot_log_user(log.get(), i));
        }
      }
      emit_json(users, out_path);
    } else {
      check(voa_log_novelty_csv(log.get(), sv_user.empty() ? nullptr : sv_user.c_str(),
                                sv_truncate, sv_fifo ? 1 : 0,
                                out_path.empty() ? nullptr : out_path.c_str()));
    }
  });

  // ---- overlap ----
  auto* overlap = app.add_subcommand("overlap", "Post overlap between users");
  overlap->fallthrough();
  std::string ov_impressions, ov_user_x, ov_user_y, ov_universe = "all";
  overlap->add_option("--impressions", ov_impressions, "Impression log file")->required();
  overlap->add_option("--user-x", ov_user_x, "First user");
  overlap->add_option("--user-y", ov_user_y, "Second user");
  overlap->add_option("--universe", ov_universe,
                      "Universe for the 'neither' cell: all users or the pair")
      ->check(CLI::IsMember({"all", "pair"}));
  overlap->callback([&] {
    const LogPtr log = load_log(ov_impressions, input_format);
    const int universe_all = ov_universe == "all" ? 1 : 0;
    if (ov_user_x.empty() != ov_user_y.empty()) {
      usage_error("overlap needs both --user-x and --user-y, or neither");
    }
    if (!ov_user_x.empty()) {
      voa_overlap table{};
      check(voa_log_overlap(log.get(), ov_user_x.c_str(), ov_user_y.c_str(), universe_all,
                            &table));
      double coverage = 0.0, pairwise = 0.0, coverage_reverse = 0.0;
      check(voa_overlap_coverage(&table, &coverage));
      check(voa_overlap_pairwise(&table, &pairwise));
      const voa_overlap swapped{table.both, table.only_y, table.only_x, table.neither,
                                table.universe_size};
      check(voa_overlap_coverage(&swapped, &coverage_reverse));
      emit_scalar({{"user_x", ov_user_x},
                   {"user_y", ov_user_y},
                   {"both", table.both},
                   {"only_x", table.only_x},
                   {"only_y", table.only_y},
                   {"neither", table.neither},
                   {"universe_size", table.universe_size},
                   {"coverage_x_over_y", coverage},
                   {"coverage_y_over_x", coverage_reverse},
                   {"pairwise_overlap", pairwise}},
                  format.empty() ? "json" : format, out_path);
      return;
    }
    if (format == "json") {
      json rows = json::array();
      const std::size_t users = voa_snapshot_log_user_count(log.get());
      for (std::size_t i = 0; i < users; ++i) {
        for (std::size_t j = i + 1; j < users; ++j) {
          const char* user_x = voa_snapshot_log_user(log.get(), i);
          const char* user_y = voa_snapshot_log_user(log.get(), j);
          voa_overlap table{};
          check(voa_log_overlap(log.get(), user_x, user_y, universe_all, &table));
          double coverage = 0.0, pairwise = 0.0;
          check(voa_overlap_coverage(&table, &coverage));
          check(voa_overlap_pairwise(&table, &pairwise));
          rows.push_back({{"user_x", user_x},
                          {"user_y", user_y},
                          {"both", table.both},
                          {"only_x", table.only_x},
                          {"only_y", table.only_y},
                          {"neither", table.neither},
                          {"universe_size", table.universe_size},
                          {"coverage_x_over_y", coverage},
                          {"pairwise_overlap", pairwise}});
        }
      }
      emit_json(rows, out_path);
    } else {
      check(voa_log_overlap_csv(log.get(), universe_all,
                                out_path.empty() ? nullptr : out_path.c_str()));
    }
  });

  // ---- ecdf ----
  auto* ecdf = app.add_subcommand("ecdf", "ECDF of posts by number of viewing users");
  ecdf->fallthrough();
  std::string ecdf_impressions;
  ecdf->add_option("--impressions", ecdf_impressions, "Impression log file")->required();
  ecdf->callback([&] {
    const LogPtr log = load_log(ecdf_impressions, input_format);
    voa_ecdf* raw = nullptr;
    check(voa_log_viewer_ecdf(log.get(), &raw));
    const EcdfPtr curve(raw, &voa_ecdf_free);
    if (format == "json") {
      json points = json::array();
      for (std::size_t i = 0; i < voa_ecdf_size(curve.get()); ++i) {
        std::int32_t viewers = 0;
        double fraction = 0.0;
        check(voa_ecdf_at(curve.get(), i, &viewers, &fraction));
        points.push_back({{"viewer_count", viewers}, {"cumulative_fraction", fraction}});
      }
      emit_json(points, out_path);
    } else {
      check(voa_ecdf_write_csv(curve.get(), out_path.empty() ? nullptr : out_path.c_str()));
    }
  });

  // ---- trace-info ----
  auto* trace_info = app.add_subcommand("trace-info", "Summary statistics of a post trace");
  trace_info->fallthrough();
  std::string ti_posts;
  trace_info->add_option("--posts", ti_posts, "Post trace file")->required();
  trace_info->callback([&] {
    const TracePtr trace = load_trace(ti_posts, input_format);
    if (format == "csv") {
      check(voa_trace_daily_csv(trace.get(), out_path.empty() ? nullptr : out_path.c_str()));
      return;
    }
    voa_trace_summary summary{};
    check(voa_trace_summarize(trace.get(), &summary));
    emit_scalar({{"post_count", summary.post_count},
                 {"publisher_count", summary.publisher_count},
                 {"time_span_hours", summary.time_span_hours},
                 {"estimated_lambda", summary.estimated_lambda}},
                "json", out_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "voa: " << e.what() << "\n";
    return 2;
  } catch (const Failure& failure) {
    std::cerr << "voa: " << failure.message << "\n";
    return failure.exit_code;
  }
  return 0;
}
