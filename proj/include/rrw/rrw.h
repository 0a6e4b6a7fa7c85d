/*
 * rrw - reinforced random walk estimation toolkit, C API.
 *
 * A two-parameter reinforced random walk draws one of two colors at each
 * step with probability (c+i)^alpha / ((c+i)^alpha + (c+j)^alpha), where i
 * and j count previous draws of each color. This library simulates such
 * walks, estimates (alpha, c) from repeated finite paths by maximum
 * likelihood or weighted least squares, computes exact asymptotic
 * covariances, and produces bootstrap / Monte-Carlo confidence intervals.
 *
 * All functions return RRW_OK (0) on success or a nonzero error code;
 * rrw_last_error() gives a human-readable message for the calling thread.
 * Handles returned through out-parameters must be released with the
 * matching *_free function.
 */
#ifndef RRW_H
#define RRW_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define RRW_API __declspec(dllexport)
#else
#define RRW_API __attribute__((visibility("default")))
#endif

enum {
  RRW_OK = 0,
  RRW_ERR_INVALID_ARGUMENT = 1,
  RRW_ERR_EMPTY_DATA = 2,
  RRW_ERR_MALFORMED_INPUT = 3,
  RRW_ERR_DEGENERATE_WEIGHTS = 4,
  RRW_ERR_SINGULAR = 5,
  RRW_ERR_TOO_FEW_REPLICATES = 6,
  RRW_ERR_NONFINITE = 7,
  RRW_ERR_IO = 8,
  RRW_ERR_INTERNAL = 99
};

/* Weight sequences for the least-squares contrast. */
enum {
  RRW_WEIGHT_OCCUPANCY = 0, /* w = a_N               */
  RRW_WEIGHT_EFFICIENT = 1, /* w = a_N / (p_N q_N)   */
  RRW_WEIGHT_UNIT = 2
};

/* Opaque set of N binary paths of common length n. */
typedef struct rrw_paths rrw_paths;

typedef struct rrw_box {
  double alpha_lo, alpha_hi;
  double c_lo, c_hi;
} rrw_box;

/* Optimizer settings; any field set to zero picks the built-in default
 * (5x5 log-spaced multi-start grid, 200 iterations, gradient tol 1e-8). */
typedef struct rrw_opt_cfg {
  int starts_alpha, starts_c;
  int max_iter;
  double grad_tol;
  /* warm start used in addition to the grid when both are > 0 */
  double start_alpha, start_c;
} rrw_opt_cfg;

typedef struct rrw_fit_result {
  double alpha, c;
  double objective;
  int converged;
  int at_boundary;
  int n_restarts;
  int skipped_cells;
} rrw_fit_result;

typedef struct rrw_interval {
  double alpha_lo, alpha_hi;
  double c_lo, c_hi;
  double level;
  long replicates;   /* replicate fits actually used */
  int clipped;       /* 1 if a pivotal endpoint was clipped at 0 */
  int boundary_hits; /* replicate fits that ended on the box boundary */
} rrw_interval;

RRW_API const char *rrw_version(void);
RRW_API const char *rrw_last_error(void);

/* ---- paths -------------------------------------------------------- */

RRW_API int rrw_paths_simulate(double alpha, double c, int64_t n_paths,
                               int64_t length, uint64_t seed,
                               rrw_paths **out);
RRW_API int rrw_paths_read_csv(const char *file, rrw_paths **out);
RRW_API int rrw_paths_write_csv(const rrw_paths *paths, const char *file);
RRW_API int64_t rrw_paths_count(const rrw_paths *paths);
RRW_API int64_t rrw_paths_length(const rrw_paths *paths);
/* Q_n = min(Z_n, n - Z_n) for one path. */
RRW_API int rrw_paths_discarded_count(const rrw_paths *paths,
                                      int64_t path_index, int64_t *out);
RRW_API void rrw_paths_free(rrw_paths *paths);

/* ---- estimation ---------------------------------------------------- */

/* method: "mle", "wlse" (occupancy weights) or "wlse-eff".
 * symmetrized applies the folded objective (wlse only).
 * fix_c > 0 profiles alpha with c frozen at that value.
 * box/cfg may be NULL for defaults. */
RRW_API int rrw_fit(const rrw_paths *paths, const char *method,
                    int symmetrized, double fix_c, const rrw_box *box,
                    const rrw_opt_cfg *cfg, rrw_fit_result *out);

/* ---- asymptotics ---------------------------------------------------
 * 2x2 matrices are row-major [aa, ac, ca, cc]. */

RRW_API int rrw_fisher_info(double alpha, double c, int64_t length,
                            double info[4], double inverse[4]);
RRW_API int rrw_wlse_covariance(double alpha, double c, int64_t length,
                                int weight_mode, double cov[4]);
RRW_API int rrw_polya_fisher(double c, int64_t length, double *out);

/* ---- confidence intervals ------------------------------------------ */

RRW_API int rrw_bootstrap_ci(const rrw_paths *paths, const char *method,
                             int symmetrized, int64_t n_resamples,
                             double level, uint64_t seed, const rrw_box *box,
                             const rrw_opt_cfg *cfg, rrw_fit_result *fit_out,
                             rrw_interval *ci_out,
                             const char *replicates_csv_or_null);
RRW_API int rrw_monte_carlo_ci(double alpha, double c, int64_t n_paths,
                               int64_t length, int64_t reps,
                               const char *method, int symmetrized,
                               double level, uint64_t seed,
                               const rrw_box *box, const rrw_opt_cfg *cfg,
                               rrw_interval *out);

/* ---- batch studies --------------------------------------------------
 * kind: "std", "mse" or "phase". config_file is a JSON study description;
 * reports are written to out_dir as CSV and JSON. */
RRW_API int rrw_study_run(const char *kind, const char *config_file,
                          const char *out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RRW_H */
