// Minimum-contrast estimation of theta = (alpha, c). A contrast is a sum
// over cells of w * G(p_cell, f(theta, i, j)); the Kullback divergence with
// occupancy weights reproduces the (negated, scaled) log-likelihood and the
// squared divergence gives the weighted least squares estimators.
//
// Optimization runs in (log alpha, log c) over a compact box: a fixed
// log-spaced multi-start grid followed by projected BFGS descent with
// analytic gradients. Results are deterministic; ties are broken by lowest
// objective, then lexicographically smallest (alpha, c).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "empirical.hpp"
#include "model.hpp"

namespace rrw {

struct ParamBox {
  double alpha_lo = 0.05;
  double alpha_hi = 20.0;
  double c_lo = 0.05;
  double c_hi = 500.0;

  void validate() const;
};

enum class WeightMode { Occupancy, Efficient, Unit };
enum class ContrastKind { Kullback, Squared };

struct OptimConfig {
  int starts_alpha = 5;
  int starts_c = 5;
  int max_iter = 200;
  double grad_tol = 1e-8;
  // extra start appended to the grid (e.g. a previous fit)
  std::optional<ModelParams> warm_start;
};

enum class Method { Mle, Wlse };

struct EstimateResult {
  double alpha = 0.0;
  double c = 0.0;
  Method method = Method::Mle;
  WeightMode weights = WeightMode::Occupancy;
  bool symmetrized = false;
  double objective = 0.0;
  bool converged = false;
  int n_restarts_used = 0;
  bool at_boundary = false;
  int skipped_cells = 0;

  ModelParams params() const { return ModelParams(alpha, c); }
};

// One aggregated cell of the contrast sum.
struct FitCell {
  std::int32_t i;  // past draws of color 1
  std::int32_t j;  // past draws of color 0
  double weight;
  double target;  // p_N or ptilde_N
};

// Cells with positive weight, in deterministic (k, i) order. Cells with
// a_N = 0 are dropped; Efficient weights additionally drop cells with
// p_N in {0, 1}. skipped counts the dropped cells with a_N > 0.
std::vector<FitCell> build_cells(const CellStats &stats, WeightMode weights,
                                 bool symmetrized, int *skipped);

// Core solver over an explicit cell list.
EstimateResult minimize_cells(const std::vector<FitCell> &cells,
                              ContrastKind contrast, const ParamBox &box,
                              const OptimConfig &cfg,
                              std::optional<double> fix_c = std::nullopt);

// Contrast objective and its theta-gradient at one point (exposed for
// tests and diagnostics).
double contrast_value(const std::vector<FitCell> &cells, ContrastKind kind,
                      const ModelParams &p);
Grad2 contrast_gradient(const std::vector<FitCell> &cells, ContrastKind kind,
                        const ModelParams &p);

// Generic minimum-contrast estimator on empirical cell statistics.
EstimateResult minimize_contrast(const CellStats &stats, ContrastKind contrast,
                                 WeightMode weights, const ParamBox &box,
                                 const OptimConfig &cfg);

EstimateResult fit_mle(const PathSet &paths, const ParamBox &box = {},
                       const OptimConfig &cfg = {});
EstimateResult fit_wlse(const PathSet &paths, WeightMode weights,
                        bool symmetrized, const ParamBox &box = {},
                        const OptimConfig &cfg = {});

// One-dimensional fit of alpha with c frozen.
EstimateResult profile_alpha(const PathSet &paths, double c_fixed,
                             Method method, const ParamBox &box = {},
                             const OptimConfig &cfg = {});

}  // namespace rrw
