// Batch studies: the theoretical standard-deviation table, Monte-Carlo
// root-MSE and decile tables, and the three-phase behavior summary of
// the walk (convergence to 1/2, Beta limit, selection).
#pragma once

#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "bootstrap.hpp"

namespace rrw {

struct StudyConfig {
  std::vector<ModelParams> thetas;
  std::int64_t n_paths = 50;
  std::int64_t length = 100;
  std::int64_t reps = 500;
  std::int64_t bootstrap_b = 500;
  Seed seed = 1;
  double level = 0.95;
  std::vector<EstimatorSpec> estimators;  // defaults to MLE + WLSE(Occupancy)
  ParamBox box;
  OptimConfig cfg;

  void validate() const;
};

// One record per (theta, estimator).
struct StudyRow {
  double alpha0 = 0.0, c0 = 0.0;
  std::string estimator;  // "mle", "wlse", "wlse-eff"
  bool failed = false;
  std::string failure;
  // std_table fields: theoretical sigma / sqrt(N)
  double sd_alpha = 0.0, sd_c = 0.0;
  // mse_study fields
  double rmse_alpha = 0.0, rmse_c = 0.0;
  double d1_alpha = 0.0, d9_alpha = 0.0;
  double d1_c = 0.0, d9_c = 0.0;
  std::int64_t converged_reps = 0;
  std::int64_t boundary_hits = 0;
};

struct StudyReport {
  std::string kind;  // "std", "mse", "phase"
  std::vector<StudyRow> rows;
};

// Exact per-theta sigma/sqrt(N) from the Fisher inverse (mle) and the
// occupancy-weighted sandwich covariance (wlse). Deterministic.
StudyReport std_table(const StudyConfig &cfg);

// Monte-Carlo root mean squared error and first/ninth deciles of the fitted
// coordinates over cfg.reps independent experiments per theta.
StudyReport mse_study(const StudyConfig &cfg);

struct PhaseSummary {
  double alpha = 0.0, c = 0.0;
  std::int64_t n = 0, reps = 0;
  double mean_fraction = 0.0;  // mean of Z_n / n
  double sd_fraction = 0.0;    // sd of Z_n / n
  double ks_beta = 0.0;        // KS distance of Z_n/n to Beta(c,c)
  double selection_freq = 0.0; // fraction with min(Z_n, n-Z_n) <= threshold
  std::int64_t selection_threshold = 10;
};

PhaseSummary phase_check(const ModelParams &params, std::int64_t reps,
                         std::int64_t n, Seed seed,
                         std::int64_t selection_threshold = 10);

std::string estimator_name(const EstimatorSpec &spec);

}  // namespace rrw
