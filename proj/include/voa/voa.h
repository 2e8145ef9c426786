/*
 * voa - value-of-access modeling for social-network timelines.
 *
 * C API of the shared library. All functions return a voa_status; results go
 * through out-pointers. Variable-size results are owned by opaque handles
 * with explicit *_free functions. On any failing call, voa_last_error()
 * returns a thread-local human-readable detail message.
 */
#ifndef VOA_H
#define VOA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum voa_status {
  VOA_OK = 0,
  VOA_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad enum, structural misuse */
  VOA_ERR_DOMAIN = 2,           /* parameter outside the mathematical domain */
  VOA_ERR_PARSE = 3,            /* malformed trace or impression record */
  VOA_ERR_IO = 4,               /* file could not be opened/read/written */
  VOA_ERR_NO_CONVERGENCE = 5,   /* quadrature/search missed its tolerance */
  VOA_ERR_NOT_FOUND = 6,        /* named user absent from loaded data */
  VOA_ERR_INTERNAL = 7
} voa_status;

const char *voa_status_name(voa_status status);
const char *voa_last_error(void);

/* ---------- closed-form evaluators ---------- */

/* Expected novel impressions per access, exponential inter-access times:
 * (lambda/mu)(1 - (lambda/(lambda+mu))^k). k may be real.
 * fill_probability (optional, may be NULL) receives (lambda/(lambda+mu))^k. */
voa_status voa_value_exponential(double lambda, double mu, double k,
                                 double *mean, double *fill_probability);

/* Finite-summation form of the same quantity; integer k <= 1e6. */
voa_status voa_value_summation(double lambda, double mu, double k, double *mean);

/* Adaptive-quadrature evaluation of the total-probability integral. */
voa_status voa_value_quadrature(double lambda, double mu, double k, double *mean);

/* Deterministic inter-access time tau: E[min(A, k)], A ~ Poisson(lambda*tau). */
voa_status voa_value_deterministic(double lambda, double tau_hours, double k, double *mean);

/* Timeline size Poisson with mean alpha. */
voa_status voa_value_poisson_k(double lambda, double mu, double alpha, double *mean);

/* Fixed-k closed form at real-valued k = alpha. */
voa_status voa_value_average_k(double lambda, double mu, double alpha, double *mean);

/* ---------- utility and optimal access rate ---------- */

voa_status voa_utility(double lambda, double mu, double k, double cost, double *utility);
voa_status voa_utility_gradient(double lambda, double mu, double k, double cost,
                                double *gradient);

/* mu* = lambda((k/cost)^{1/(k+1)} - 1), clamped to 0 when k <= cost
 * (clamped set to 1). utility_at_star and clamped may be NULL. */
voa_status voa_optimal_access_rate(double lambda, double k, double cost, double *mu_star,
                                   double *utility_at_star, int *clamped);

/* Golden-section maximization over [0, search_upper]; independent of the
 * closed form. Fails with VOA_ERR_NO_CONVERGENCE when the maximizer sits on
 * search_upper. */
voa_status voa_optimal_access_rate_numeric(double lambda, double k, double cost,
                                           double search_upper, double *mu_star);

/* ---------- traces of posts ---------- */

typedef struct voa_trace voa_trace;

typedef enum voa_format { VOA_FORMAT_JSONL = 0, VOA_FORMAT_CSV = 1 } voa_format;

voa_status voa_trace_load(const char *path, voa_format format, voa_trace **out);
void voa_trace_free(voa_trace *trace);
int64_t voa_trace_post_count(const voa_trace *trace);

typedef struct voa_trace_summary {
  int64_t post_count;
  int64_t publisher_count;
  double time_span_hours;
  double estimated_lambda; /* posts per hour over the observed span */
} voa_trace_summary;

voa_status voa_trace_summarize(const voa_trace *trace, voa_trace_summary *out);

size_t voa_trace_day_count(const voa_trace *trace);
/* date receives "YYYY-MM-DD" (date_size >= 11). */
voa_status voa_trace_day_at(const voa_trace *trace, size_t index, char *date,
                            size_t date_size, int64_t *posts);
voa_status voa_trace_daily_csv(const voa_trace *trace, const char *path_or_null_stdout);

/* ---------- simulation ---------- */

typedef enum voa_schedule {
  VOA_SCHEDULE_RANDOM_REFERENCE = 0, /* snapshots anchored on uniformly drawn posts */
  VOA_SCHEDULE_EXPONENTIAL_CLOCK = 1,
  VOA_SCHEDULE_DETERMINISTIC_CLOCK = 2
} voa_schedule;

typedef struct voa_sim_result {
  double mean;   /* mean of per-round mean VoA */
  double stddev; /* sample stddev across rounds; 0 for one round */
  int32_t rounds;
} voa_sim_result;

voa_status voa_simulate_trace(const voa_trace *trace, int32_t k,
                              double sample_interval_hours, double period_hours,
                              int32_t rounds, uint64_t seed, voa_schedule schedule,
                              voa_sim_result *out);

voa_status voa_simulate_synthetic(double lambda, double mu, int32_t k,
                                  int64_t accesses_per_round, int32_t rounds, uint64_t seed,
                                  voa_schedule schedule, voa_sim_result *out);

/* Sweep over 1/mu. Rows carry abscissa, closed-form column and simulation
 * statistics. model_lambda <= 0 uses the trace's estimated rate. */
typedef struct voa_curve voa_curve;

voa_status voa_sweep_trace(const voa_trace *trace, int32_t k, const double *inverse_mu,
                           size_t count, double model_lambda, double period_hours,
                           int32_t rounds, uint64_t seed, voa_schedule schedule,
                           voa_curve **out);

voa_status voa_sweep_synthetic(double lambda, int32_t k, const double *inverse_mu,
                               size_t count, double period_hours, int32_t rounds,
                               uint64_t seed, voa_schedule schedule, voa_curve **out);

size_t voa_curve_size(const voa_curve *curve);
voa_status voa_curve_row(const voa_curve *curve, size_t index, double *abscissa,
                         double *model_voa, double *sim_mean, double *sim_std,
                         int32_t *rounds);
voa_status voa_curve_write_csv(const voa_curve *curve, const char *path_or_null_stdout);
void voa_curve_free(voa_curve *curve);

/* ---------- measured snapshot logs ---------- */

typedef struct voa_snapshot_log voa_snapshot_log;

voa_status voa_snapshot_log_load(const char *path, voa_format format,
                                 voa_snapshot_log **out);
void voa_snapshot_log_free(voa_snapshot_log *log);
size_t voa_snapshot_log_user_count(const voa_snapshot_log *log);
const char *voa_snapshot_log_user(const voa_snapshot_log *log, size_t index);
int64_t voa_snapshot_log_duplicates_dropped(const voa_snapshot_log *log);

/* Per-snapshot novelty for one user. k_truncate <= 0 disables truncation;
 * fifo_reorder != 0 re-sorts each snapshot reverse-chronologically first. */
typedef struct voa_series voa_series;

voa_status voa_log_novelty_series(const voa_snapshot_log *log, const char *user,
                                  int32_t k_truncate, int fifo_reorder, voa_series **out);
size_t voa_series_size(const voa_series *series);
voa_status voa_series_at(const voa_series *series, size_t index, int64_t *taken_at,
                         int32_t *novel);
double voa_series_mean(const voa_series *series);
void voa_series_free(voa_series *series);

/* One CSV for all users (or a single user when user != NULL). */
voa_status voa_log_novelty_csv(const voa_snapshot_log *log, const char *user_or_null,
                               int32_t k_truncate, int fifo_reorder,
                               const char *path_or_null_stdout);

typedef struct voa_overlap {
  int64_t both;
  int64_t only_x;
  int64_t only_y;
  int64_t neither;
  int64_t universe_size;
} voa_overlap;

/* universe_all != 0: universe is the union over every user in the log;
 * otherwise the union of the two users. */
voa_status voa_log_overlap(const voa_snapshot_log *log, const char *user_x,
                           const char *user_y, int universe_all, voa_overlap *out);

/* Fraction of Y's posts also viewed by X: both / (both + only_y). */
voa_status voa_overlap_coverage(const voa_overlap *table, double *fraction);
/* Larger of the two directional coverage fractions. */
voa_status voa_overlap_pairwise(const voa_overlap *table, double *overlap);

/* All unordered user pairs, one row each. */
voa_status voa_log_overlap_csv(const voa_snapshot_log *log, int universe_all,
                               const char *path_or_null_stdout);

/* ECDF of "viewed by how many users" over the union of all users' posts. */
typedef struct voa_ecdf voa_ecdf;

voa_status voa_log_viewer_ecdf(const voa_snapshot_log *log, voa_ecdf **out);
size_t voa_ecdf_size(const voa_ecdf *ecdf);
voa_status voa_ecdf_at(const voa_ecdf *ecdf, size_t index, int32_t *viewer_count,
                       double *cumulative_fraction);
voa_status voa_ecdf_write_csv(const voa_ecdf *ecdf, const char *path_or_null_stdout);
void voa_ecdf_free(voa_ecdf *ecdf);

/* ---------- misc ---------- */

/* "YYYY-MM-DDTHH:MM:SSZ" (buffer_size >= 21). */
voa_status voa_format_utc(int64_t epoch_seconds, char *buffer, size_t buffer_size);
/* Strict ISO-8601 UTC parse; fractional seconds truncated. */
voa_status voa_parse_utc(const char *text, int64_t *epoch_seconds);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VOA_H */
