// Pivotal bootstrap confidence intervals (resampling whole paths with
// replacement) and Monte-Carlo reference intervals built from repeated
// independent experiments.
#pragma once

#include <cstdint>
#include <vector>

#include "estimate.hpp"
#include "simulate.hpp"

namespace rrw {

struct IntervalPair {
  double alpha_lo = 0.0, alpha_hi = 0.0;
  double c_lo = 0.0, c_hi = 0.0;
  double level = 0.0;
  std::int64_t replicates = 0;  // converged replicate fits used
  bool clipped = false;         // a pivotal endpoint was clipped to (0, inf)
  std::int64_t boundary_hits = 0;
};

// Replicate estimates, exposed for scatter output and tests.
struct Replicates {
  std::vector<double> alpha;
  std::vector<double> c;
  std::int64_t boundary_hits = 0;
};

// Empirical quantile with the order-statistic index ceil(q * B) (type 1).
double quantile_type1(std::vector<double> sorted, double q);

// Selector shared by both interval constructors.
struct EstimatorSpec {
  Method method = Method::Mle;
  WeightMode weights = WeightMode::Occupancy;
  bool symmetrized = false;
};

EstimateResult fit_with(const PathSet &paths, const EstimatorSpec &spec,
                        const ParamBox &box, const OptimConfig &cfg);

// Pivotal interval (2 theta_hat - q*_{1-g/2}, 2 theta_hat - q*_{g/2}) from B
// path-level resamples, clipped to (0, inf). Deterministic given seed;
// replicate r uses an independent substream. Throws TooFewReplicates if
// fewer than 0.8 B replicate fits converge.
IntervalPair pivotal_ci(const PathSet &paths, const EstimatorSpec &spec,
                        std::int64_t B, double level, Seed seed,
                        const ParamBox &box = {}, const OptimConfig &cfg = {},
                        Replicates *out_replicates = nullptr);

// Quantile interval of the fitted coordinates over `reps` independent
// simulated experiments from `truth`.
IntervalPair monte_carlo_ci(const ModelParams &truth, std::int64_t n_paths,
                            std::int64_t length, std::int64_t reps,
                            const EstimatorSpec &spec, double level, Seed seed,
                            const ParamBox &box = {},
                            const OptimConfig &cfg = {},
                            Replicates *out_replicates = nullptr);

}  // namespace rrw
