#include "experiments.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "rng.hpp"
#include "special.hpp"

namespace rrw {

namespace {

constexpr std::uint64_t kMseTag = 0x6d7365ULL;
constexpr std::uint64_t kPhaseTag = 0x7068617365ULL;

std::vector<EstimatorSpec> default_estimators() {
  return {{Method::Mle, WeightMode::Occupancy, false},
          {Method::Wlse, WeightMode::Occupancy, false}};
}

}  // namespace

std::string estimator_name(const EstimatorSpec &spec) {
  if (spec.method == Method::Mle) return "mle";
  if (spec.weights == WeightMode::Efficient) return "wlse-eff";
  return spec.symmetrized ? "wlse-sym" : "wlse";
}

void StudyConfig::validate() const {
  if (thetas.empty())
    throw Error(ErrorCode::InvalidArgument, "study needs at least one theta");
  if (n_paths < 1 || length < 1 || reps < 1 || bootstrap_b < 1)
    throw Error(ErrorCode::InvalidArgument, "study counts must be positive");
  if (!(level > 0.0 && level < 1.0))
    throw Error(ErrorCode::InvalidArgument, "level must be in (0,1)");
  box.validate();
}

StudyReport std_table(const StudyConfig &cfg) {
  cfg.validate();
  if (cfg.length < 3)
    throw Error(ErrorCode::InvalidArgument, "std_table requires n >= 3");
  StudyReport report;
  report.kind = "std";
  const double sqn = std::sqrt(static_cast<double>(cfg.n_paths));
  for (const ModelParams &theta : cfg.thetas) {
    StudyRow mle_row;
    mle_row.alpha0 = theta.alpha;
    mle_row.c0 = theta.c;
    mle_row.estimator = "mle";
    StudyRow wlse_row = mle_row;
    wlse_row.estimator = "wlse";
    try {
      const CellMatrix2 inv = invert2x2(fisher_info(theta, cfg.length)).inv;
      mle_row.sd_alpha = std::sqrt(inv.aa) / sqn;
      mle_row.sd_c = std::sqrt(inv.cc) / sqn;
    } catch (const Error &e) {
      mle_row.failed = true;
      mle_row.failure = e.what();
    }
    try {
      const CellMatrix2 cov =
          wlse_covariance(theta, cfg.length, WeightMode::Occupancy);
      wlse_row.sd_alpha = std::sqrt(cov.aa) / sqn;
      wlse_row.sd_c = std::sqrt(cov.cc) / sqn;
    } catch (const Error &e) {
      wlse_row.failed = true;
      wlse_row.failure = e.what();
    }
    report.rows.push_back(mle_row);
    report.rows.push_back(wlse_row);
  }
  return report;
}

StudyReport mse_study(const StudyConfig &cfg) {
  cfg.validate();
  if (cfg.reps < 100)
    throw Error(ErrorCode::TooFewReplicates, "mse_study requires reps >= 100");
  const std::vector<EstimatorSpec> specs =
      cfg.estimators.empty() ? default_estimators() : cfg.estimators;

  StudyReport report;
  report.kind = "mse";
  std::uint64_t theta_idx = 0;
  for (const ModelParams &theta : cfg.thetas) {
    ++theta_idx;
    // simulate once per replicate, reuse the paths for every estimator
    struct RepOut {
      std::vector<double> alpha, c;
      std::vector<bool> ok, boundary;
    };
    std::vector<RepOut> per_spec(specs.size());
    for (RepOut &o : per_spec) {
      o.alpha.assign(static_cast<std::size_t>(cfg.reps), 0.0);
      o.c.assign(static_cast<std::size_t>(cfg.reps), 0.0);
      o.ok.assign(static_cast<std::size_t>(cfg.reps), false);
      o.boundary.assign(static_cast<std::size_t>(cfg.reps), false);
    }
    OptimConfig rep_cfg = cfg.cfg;
    rep_cfg.warm_start = theta;
    rep_cfg.starts_alpha = 2;
    rep_cfg.starts_c = 2;
    parallel_for(cfg.reps, [&](std::int64_t r) {
      const Seed sub = derive_seed(cfg.seed, kMseTag,
                                   theta_idx * 1000003ULL +
                                       static_cast<std::uint64_t>(r));
      PathSet paths;
      try {
        paths = simulate_paths(theta, cfg.n_paths, cfg.length, sub);
      } catch (const Error &) {
        return;
      }
      for (std::size_t s = 0; s < specs.size(); ++s) {
        try {
          const EstimateResult fit = fit_with(paths, specs[s], cfg.box,
                                              rep_cfg);
          per_spec[s].alpha[static_cast<std::size_t>(r)] = fit.alpha;
          per_spec[s].c[static_cast<std::size_t>(r)] = fit.c;
          per_spec[s].ok[static_cast<std::size_t>(r)] = true;
          per_spec[s].boundary[static_cast<std::size_t>(r)] = fit.at_boundary;
        } catch (const Error &) {
        }
      }
    });
    for (std::size_t s = 0; s < specs.size(); ++s) {
      StudyRow row;
      row.alpha0 = theta.alpha;
      row.c0 = theta.c;
      row.estimator = estimator_name(specs[s]);
      std::vector<double> a_hat, c_hat;
      for (std::int64_t r = 0; r < cfg.reps; ++r) {
        if (!per_spec[s].ok[static_cast<std::size_t>(r)]) continue;
        a_hat.push_back(per_spec[s].alpha[static_cast<std::size_t>(r)]);
        c_hat.push_back(per_spec[s].c[static_cast<std::size_t>(r)]);
        if (per_spec[s].boundary[static_cast<std::size_t>(r)])
          ++row.boundary_hits;
      }
      row.converged_reps = static_cast<std::int64_t>(a_hat.size());
      if (a_hat.empty()) {
        row.failed = true;
        row.failure = "no replicate fit converged";
      } else {
        double sa = 0.0, sc = 0.0;
        for (std::size_t r = 0; r < a_hat.size(); ++r) {
          sa += (a_hat[r] - theta.alpha) * (a_hat[r] - theta.alpha);
          sc += (c_hat[r] - theta.c) * (c_hat[r] - theta.c);
        }
        row.rmse_alpha = std::sqrt(sa / static_cast<double>(a_hat.size()));
        row.rmse_c = std::sqrt(sc / static_cast<double>(c_hat.size()));
        row.d1_alpha = quantile_type1(a_hat, 0.1);
        row.d9_alpha = quantile_type1(a_hat, 0.9);
        row.d1_c = quantile_type1(c_hat, 0.1);
        row.d9_c = quantile_type1(c_hat, 0.9);
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

PhaseSummary phase_check(const ModelParams &params, std::int64_t reps,
                         std::int64_t n, Seed seed,
                         std::int64_t selection_threshold) {
  if (reps < 1000)
    throw Error(ErrorCode::InvalidArgument,
                "phase_check requires reps >= 1000");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "phase_check needs n >= 1");

  std::vector<double> fractions(static_cast<std::size_t>(reps), 0.0);
  std::vector<std::int64_t> minority(static_cast<std::size_t>(reps), 0);
  // simulate paths one at a time to keep memory flat at large n
  std::vector<double> logc(static_cast<std::size_t>(n) + 1);
  for (std::int64_t m = 0; m <= n; ++m)
    logc[static_cast<std::size_t>(m)] =
        std::log(params.c + static_cast<double>(m));
  const double alpha = params.alpha;
  parallel_for(reps, [&](std::int64_t r) {
    CounterRng rng(derive_seed(seed, kPhaseTag, static_cast<std::uint64_t>(r)),
                   0);
    std::int64_t z = 0;
    for (std::int64_t k = 0; k < n; ++k) {
      const double delta = alpha * (logc[static_cast<std::size_t>(k - z)] -
                                    logc[static_cast<std::size_t>(z)]);
      const double f =
          delta > 700.0 ? std::exp(-delta) : 1.0 / (1.0 + std::exp(delta));
      if (rng.next_bernoulli(f)) ++z;
    }
    fractions[static_cast<std::size_t>(r)] =
        static_cast<double>(z) / static_cast<double>(n);
    minority[static_cast<std::size_t>(r)] = std::min(z, n - z);
  });

  PhaseSummary out;
  out.alpha = params.alpha;
  out.c = params.c;
  out.n = n;
  out.reps = reps;
  out.selection_threshold = selection_threshold;

  double mean = 0.0;
  for (double x : fractions) mean += x;
  mean /= static_cast<double>(reps);
  double var = 0.0;
  for (double x : fractions) var += (x - mean) * (x - mean);
  out.mean_fraction = mean;
  out.sd_fraction = std::sqrt(var / static_cast<double>(reps));

  std::int64_t selected = 0;
  for (std::int64_t q : minority)
    if (q <= selection_threshold) ++selected;
  out.selection_freq = static_cast<double>(selected) /
                       static_cast<double>(reps);

  // one-sample KS distance against Beta(c, c)
  std::vector<double> sorted = fractions;
  std::sort(sorted.begin(), sorted.end());
  double ks = 0.0;
  for (std::size_t r = 0; r < sorted.size(); ++r) {
    const double cdf = beta_cdf(sorted[r], params.c, params.c);
    const double lo = static_cast<double>(r) / static_cast<double>(reps);
    const double hi = static_cast<double>(r + 1) / static_cast<double>(reps);
    ks = std::max({ks, std::fabs(cdf - lo), std::fabs(cdf - hi)});
  }
  out.ks_beta = ks;
  return out;
}

}  // namespace rrw
