#include "bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "rng.hpp"

namespace rrw {

namespace {

constexpr std::uint64_t kResampleTag = 0x626f6f74ULL;  // "boot"
constexpr std::uint64_t kMonteCarloTag = 0x6d635f63ULL;

struct RepFit {
  double alpha = 0.0;
  double c = 0.0;
  bool ok = false;
  bool at_boundary = false;
};

Replicates collect(const std::vector<RepFit> &fits) {
  Replicates reps;
  for (const RepFit &f : fits) {
    if (!f.ok) continue;
    reps.alpha.push_back(f.alpha);
    reps.c.push_back(f.c);
    if (f.at_boundary) ++reps.boundary_hits;
  }
  return reps;
}

}  // namespace

double quantile_type1(std::vector<double> sorted, double q) {
  if (sorted.empty())
    throw Error(ErrorCode::EmptyData, "quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "quantile order must be in [0,1]");
  std::sort(sorted.begin(), sorted.end());
  const std::size_t b = sorted.size();
  std::size_t idx = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(b)));
  if (idx == 0) idx = 1;
  if (idx > b) idx = b;
  return sorted[idx - 1];
}

EstimateResult fit_with(const PathSet &paths, const EstimatorSpec &spec,
                        const ParamBox &box, const OptimConfig &cfg) {
  if (spec.method == Method::Mle)
    return fit_mle(paths, box, cfg);
  return fit_wlse(paths, spec.weights, spec.symmetrized, box, cfg);
}

IntervalPair pivotal_ci(const PathSet &paths, const EstimatorSpec &spec,
                        std::int64_t B, double level, Seed seed,
                        const ParamBox &box, const OptimConfig &cfg,
                        Replicates *out_replicates) {
  if (paths.n_paths < 1 || paths.length < 1)
    throw Error(ErrorCode::EmptyData, "pivotal_ci needs a non-empty path set");
  if (B < 50)
    throw Error(ErrorCode::InvalidArgument, "pivotal_ci requires B >= 50");
  if (!(level > 0.0 && level < 1.0))
    throw Error(ErrorCode::InvalidArgument, "level must be in (0,1)");

  const EstimateResult point = fit_with(paths, spec, box, cfg);

  // replicate fits warm-start from the point estimate: with a single extra
  // start plus a tight grid this keeps B refits affordable
  OptimConfig rep_cfg = cfg;
  rep_cfg.warm_start = ModelParams(point.alpha, point.c);
  rep_cfg.starts_alpha = 2;
  rep_cfg.starts_c = 2;

  const std::int64_t npaths = paths.n_paths;
  const std::int64_t length = paths.length;
  std::vector<RepFit> fits(static_cast<std::size_t>(B));
  parallel_for(B, [&](std::int64_t r) {
    CounterRng rng(derive_seed(seed, kResampleTag, static_cast<std::uint64_t>(r)),
                   0);
    PathSet resampled;
    resampled.n_paths = npaths;
    resampled.length = length;
    resampled.choices.resize(static_cast<std::size_t>(npaths * length));
    for (std::int64_t j = 0; j < npaths; ++j) {
      const std::int64_t src = static_cast<std::int64_t>(
          rng.next_below(static_cast<std::uint64_t>(npaths)));
      std::copy_n(paths.choices.data() + src * length, length,
                  resampled.choices.data() + j * length);
    }
    RepFit &slot = fits[static_cast<std::size_t>(r)];
    try {
      const EstimateResult fit = fit_with(resampled, spec, box, rep_cfg);
      slot = {fit.alpha, fit.c, fit.converged, fit.at_boundary};
    } catch (const Error &) {
      slot.ok = false;
    }
  });

  const Replicates reps = collect(fits);
  if (out_replicates) *out_replicates = reps;
  const std::int64_t good = static_cast<std::int64_t>(reps.alpha.size());
  if (static_cast<double>(good) < 0.8 * static_cast<double>(B))
    throw Error(ErrorCode::TooFewReplicates,
                "fewer than 80% of bootstrap replicate fits converged");

  const double gamma = 1.0 - level;
  IntervalPair out;
  out.level = level;
  out.replicates = good;
  out.boundary_hits = reps.boundary_hits;
  auto pivot = [&](const std::vector<double> &sample, double hat, double *lo,
                   double *hi) {
    const double qlo = quantile_type1(sample, gamma / 2.0);
    const double qhi = quantile_type1(sample, 1.0 - gamma / 2.0);
    *lo = 2.0 * hat - qhi;
    *hi = 2.0 * hat - qlo;
    if (*lo <= 0.0) {
      *lo = 0.0;
      out.clipped = true;
    }
    if (*hi <= 0.0) {
      *hi = 0.0;
      out.clipped = true;
    }
  };
  pivot(reps.alpha, point.alpha, &out.alpha_lo, &out.alpha_hi);
  pivot(reps.c, point.c, &out.c_lo, &out.c_hi);
  return out;
}

IntervalPair monte_carlo_ci(const ModelParams &truth, std::int64_t n_paths,
                            std::int64_t length, std::int64_t reps,
                            const EstimatorSpec &spec, double level, Seed seed,
                            const ParamBox &box, const OptimConfig &cfg,
                            Replicates *out_replicates) {
  if (reps < 100)
    throw Error(ErrorCode::TooFewReplicates,
                "monte_carlo_ci requires reps >= 100");
  if (!(level > 0.0 && level < 1.0))
    throw Error(ErrorCode::InvalidArgument, "level must be in (0,1)");

  OptimConfig rep_cfg = cfg;
  rep_cfg.warm_start = truth;
  rep_cfg.starts_alpha = 2;
  rep_cfg.starts_c = 2;

  std::vector<RepFit> fits(static_cast<std::size_t>(reps));
  parallel_for(reps, [&](std::int64_t r) {
    const Seed sub = derive_seed(seed, kMonteCarloTag,
                                 static_cast<std::uint64_t>(r));
    RepFit &slot = fits[static_cast<std::size_t>(r)];
    try {
      const PathSet paths = simulate_paths(truth, n_paths, length, sub);
      const EstimateResult fit = fit_with(paths, spec, box, rep_cfg);
      slot = {fit.alpha, fit.c, fit.converged, fit.at_boundary};
    } catch (const Error &) {
      slot.ok = false;
    }
  });

  const Replicates done = collect(fits);
  if (out_replicates) *out_replicates = done;
  const std::int64_t good = static_cast<std::int64_t>(done.alpha.size());
  if (static_cast<double>(good) < 0.8 * static_cast<double>(reps))
    throw Error(ErrorCode::TooFewReplicates,
                "fewer than 80% of Monte-Carlo replicate fits converged");

  const double gamma = 1.0 - level;
  IntervalPair out;
  out.level = level;
  out.replicates = good;
  out.boundary_hits = done.boundary_hits;
  out.alpha_lo = quantile_type1(done.alpha, gamma / 2.0);
  out.alpha_hi = quantile_type1(done.alpha, 1.0 - gamma / 2.0);
  out.c_lo = quantile_type1(done.c, gamma / 2.0);
  out.c_hi = quantile_type1(done.c, 1.0 - gamma / 2.0);
  return out;
}

}  // namespace rrw
