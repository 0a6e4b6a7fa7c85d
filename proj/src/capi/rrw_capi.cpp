#include "rrw/rrw.h"

#include <cstring>
#include <exception>
#include <string>

#include "../core/asymptotics.hpp"
#include "../core/bootstrap.hpp"
#include "../core/io.hpp"
#include "../core/rng.hpp"

namespace {

thread_local std::string g_last_error;

int code_of(const rrw::Error &e) {
  switch (e.code()) {
    case rrw::ErrorCode::InvalidArgument: return RRW_ERR_INVALID_ARGUMENT;
    case rrw::ErrorCode::EmptyData: return RRW_ERR_EMPTY_DATA;
    case rrw::ErrorCode::MalformedInput: return RRW_ERR_MALFORMED_INPUT;
    case rrw::ErrorCode::DegenerateWeights: return RRW_ERR_DEGENERATE_WEIGHTS;
    case rrw::ErrorCode::Singular: return RRW_ERR_SINGULAR;
    case rrw::ErrorCode::TooFewReplicates: return RRW_ERR_TOO_FEW_REPLICATES;
    case rrw::ErrorCode::NonFinite: return RRW_ERR_NONFINITE;
    case rrw::ErrorCode::Io: return RRW_ERR_IO;
  }
  return RRW_ERR_INTERNAL;
}

template <typename Fn>
int guarded(Fn &&fn) {
  try {
    fn();
    g_last_error.clear();
    return RRW_OK;
  } catch (const rrw::Error &e) {
    g_last_error = e.what();
    return code_of(e);
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return RRW_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RRW_ERR_INTERNAL;
  }
}

rrw::EstimatorSpec parse_method(const char *method, int symmetrized) {
  if (!method)
    throw rrw::Error(rrw::ErrorCode::InvalidArgument, "method is null");
  const std::string m(method);
  rrw::EstimatorSpec spec;
  spec.symmetrized = symmetrized != 0;
  if (m == "mle") {
    spec.method = rrw::Method::Mle;
    if (spec.symmetrized)
      throw rrw::Error(rrw::ErrorCode::InvalidArgument,
                       "symmetrization applies to wlse only");
  } else if (m == "wlse") {
    spec.method = rrw::Method::Wlse;
    spec.weights = rrw::WeightMode::Occupancy;
  } else if (m == "wlse-eff") {
    spec.method = rrw::Method::Wlse;
    spec.weights = rrw::WeightMode::Efficient;
  } else {
    throw rrw::Error(rrw::ErrorCode::InvalidArgument,
                     "method must be mle, wlse or wlse-eff");
  }
  return spec;
}

rrw::ParamBox parse_box(const rrw_box *box) {
  if (!box) return {};
  rrw::ParamBox b{box->alpha_lo, box->alpha_hi, box->c_lo, box->c_hi};
  b.validate();
  return b;
}

rrw::OptimConfig parse_cfg(const rrw_opt_cfg *cfg) {
  rrw::OptimConfig c;
  if (!cfg) return c;
  if (cfg->starts_alpha > 0) c.starts_alpha = cfg->starts_alpha;
  if (cfg->starts_c > 0) c.starts_c = cfg->starts_c;
  if (cfg->max_iter > 0) c.max_iter = cfg->max_iter;
  if (cfg->grad_tol > 0.0) c.grad_tol = cfg->grad_tol;
  if (cfg->start_alpha > 0.0 && cfg->start_c > 0.0)
    c.warm_start = rrw::ModelParams(cfg->start_alpha, cfg->start_c);
  return c;
}

void fill_fit(const rrw::EstimateResult &res, rrw_fit_result *out) {
  out->alpha = res.alpha;
  out->c = res.c;
  out->objective = res.objective;
  out->converged = res.converged ? 1 : 0;
  out->at_boundary = res.at_boundary ? 1 : 0;
  out->n_restarts = res.n_restarts_used;
  out->skipped_cells = res.skipped_cells;
}

void fill_interval(const rrw::IntervalPair &ci, rrw_interval *out) {
  out->alpha_lo = ci.alpha_lo;
  out->alpha_hi = ci.alpha_hi;
  out->c_lo = ci.c_lo;
  out->c_hi = ci.c_hi;
  out->level = ci.level;
  out->replicates = static_cast<long>(ci.replicates);
  out->clipped = ci.clipped ? 1 : 0;
  out->boundary_hits = static_cast<int>(ci.boundary_hits);
}

const rrw::PathSet &deref(const rrw_paths *paths) {
  if (!paths)
    throw rrw::Error(rrw::ErrorCode::InvalidArgument, "paths handle is null");
  return *reinterpret_cast<const rrw::PathSet *>(paths);
}

}  // namespace

extern "C" {

struct rrw_paths {};  // handle body lives in rrw::PathSet

const char *rrw_version(void) { return rrw::version(); }

const char *rrw_last_error(void) { return g_last_error.c_str(); }

int rrw_paths_simulate(double alpha, double c, int64_t n_paths,
                       int64_t length, uint64_t seed, rrw_paths **out) {
  return guarded([&] {
    if (!out)
      throw rrw::Error(rrw::ErrorCode::InvalidArgument, "out is null");
    auto *p = new rrw::PathSet(
        rrw::simulate_paths(rrw::ModelParams(alpha, c), n_paths, length,
                            seed));
    *out = reinterpret_cast<rrw_paths *>(p);
  });
}

int rrw_paths_read_csv(const char *file, rrw_paths **out) {
  return guarded([&] {
    if (!file || !out)
      throw rrw::Error(rrw::ErrorCode::InvalidArgument,
                       "file and out must be non-null");
    auto *p = new rrw::PathSet(rrw::read_paths(file));
    *out = reinterpret_cast<rrw_paths *>(p);
  });
}

int rrw_paths_write_csv(const rrw_paths *paths, const char *file) {
  return guarded([&] {
    if (!file)
      throw rrw::Error(rrw::ErrorCode::InvalidArgument, "file is null");
    rrw::write_paths(deref(paths), file);
  });
}

int64_t rrw_paths_count(const rrw_paths *paths) {
  return paths ? reinterpret_cast<const rrw::PathSet *>(paths)->n_paths : 0;
}

int64_t rrw_paths_length(const rrw_paths *paths) {
  return paths ? reinterpret_cast<const rrw::PathSet *>(paths)->length : 0;
}

int rrw_paths_discarded_count(const rrw_paths *paths, int64_t path_index,
                              int64_t *out) {
  return guarded([&] {
    if (!out) throw rrw::Error(rrw::ErrorCode::InvalidArgument, "out is null");
    *out = rrw::discarded_count(deref(paths), path_index);
  });
}

void rrw_paths_free(rrw_paths *paths) {
  delete reinterpret_cast<rrw::PathSet *>(paths);
}

int rrw_fit(const rrw_paths *paths, const char *method, int symmetrized,
            double fix_c, const rrw_box *box, const rrw_opt_cfg *cfg,
            rrw_fit_result *out) {
  return guarded([&] {
    if (!out) throw rrw::Error(rrw::ErrorCode::InvalidArgument, "out is null");
    const rrw::EstimatorSpec spec = parse_method(method, symmetrized);
    const rrw::ParamBox b = parse_box(box);
    const rrw::OptimConfig c = parse_cfg(cfg);
    rrw::EstimateResult res;
    if (fix_c > 0.0)
      res = rrw::profile_alpha(deref(paths), fix_c, spec.method, b, c);
    else
      res = rrw::fit_with(deref(paths), spec, b, c);
    fill_fit(res, out);
  });
}

int rrw_fisher_info(double alpha, double c, int64_t length, double info[4],
                    double inverse[4]) {
  return guarded([&] {
    const rrw::CellMatrix2 m =
        rrw::fisher_info(rrw::ModelParams(alpha, c), length);
    if (info) {
      info[0] = m.aa;
      info[1] = info[2] = m.ac;
      info[3] = m.cc;
    }
    if (inverse) {
      const rrw::CellMatrix2 inv = rrw::invert2x2(m).inv;
      inverse[0] = inv.aa;
      inverse[1] = inverse[2] = inv.ac;
      inverse[3] = inv.cc;
    }
  });
}

int rrw_wlse_covariance(double alpha, double c, int64_t length,
                        int weight_mode, double cov[4]) {
  return guarded([&] {
    if (!cov) throw rrw::Error(rrw::ErrorCode::InvalidArgument, "cov is null");
    rrw::WeightMode mode;
    switch (weight_mode) {
      case RRW_WEIGHT_OCCUPANCY: mode = rrw::WeightMode::Occupancy; break;
      case RRW_WEIGHT_EFFICIENT: mode = rrw::WeightMode::Efficient; break;
      case RRW_WEIGHT_UNIT: mode = rrw::WeightMode::Unit; break;
      default:
        throw rrw::Error(rrw::ErrorCode::InvalidArgument,
                         "unknown weight mode");
    }
    const rrw::CellMatrix2 m =
        rrw::wlse_covariance(rrw::ModelParams(alpha, c), length, mode);
    cov[0] = m.aa;
    cov[1] = cov[2] = m.ac;
    cov[3] = m.cc;
  });
}

int rrw_polya_fisher(double c, int64_t length, double *out) {
  return guarded([&] {
    if (!out) throw rrw::Error(rrw::ErrorCode::InvalidArgument, "out is null");
    *out = rrw::polya_single_path_fisher(c, length);
  });
}

int rrw_bootstrap_ci(const rrw_paths *paths, const char *method,
                     int symmetrized, int64_t n_resamples, double level,
                     uint64_t seed, const rrw_box *box, const rrw_opt_cfg *cfg,
                     rrw_fit_result *fit_out, rrw_interval *ci_out,
                     const char *replicates_csv_or_null) {
  return guarded([&] {
    if (!ci_out)
      throw rrw::Error(rrw::ErrorCode::InvalidArgument, "ci_out is null");
    const rrw::EstimatorSpec spec = parse_method(method, symmetrized);
    const rrw::ParamBox b = parse_box(box);
    const rrw::OptimConfig c = parse_cfg(cfg);
    if (fit_out) fill_fit(rrw::fit_with(deref(paths), spec, b, c), fit_out);
    rrw::Replicates reps;
    const rrw::IntervalPair ci =
        rrw::pivotal_ci(deref(paths), spec, n_resamples, level, seed, b, c,
                        replicates_csv_or_null ? &reps : nullptr);
    fill_interval(ci, ci_out);
    if (replicates_csv_or_null)
      rrw::write_replicates_csv(reps, replicates_csv_or_null);
  });
}

int rrw_monte_carlo_ci(double alpha, double c, int64_t n_paths, int64_t length,
                       int64_t reps, const char *method, int symmetrized,
                       double level, uint64_t seed, const rrw_box *box,
                       const rrw_opt_cfg *cfg, rrw_interval *out) {
  return guarded([&] {
    if (!out) throw rrw::Error(rrw::ErrorCode::InvalidArgument, "out is null");
    const rrw::EstimatorSpec spec = parse_method(method, symmetrized);
    const rrw::IntervalPair ci = rrw::monte_carlo_ci(
        rrw::ModelParams(alpha, c), n_paths, length, reps, spec, level, seed,
        parse_box(box), parse_cfg(cfg));
    fill_interval(ci, out);
  });
}

int rrw_study_run(const char *kind, const char *config_file,
                  const char *out_dir) {
  return guarded([&] {
    if (!kind || !config_file || !out_dir)
      throw rrw::Error(rrw::ErrorCode::InvalidArgument,
                       "kind, config_file and out_dir must be non-null");
    const std::string k(kind);
    const rrw::StudyConfig cfg = rrw::read_study_config(config_file);
    if (k == "std") {
      rrw::write_study_report(rrw::std_table(cfg), out_dir);
    } else if (k == "mse") {
      rrw::write_study_report(rrw::mse_study(cfg), out_dir);
    } else if (k == "phase") {
      std::vector<rrw::PhaseSummary> rows;
      std::uint64_t idx = 0;
      for (const rrw::ModelParams &theta : cfg.thetas) {
        rows.push_back(rrw::phase_check(
            theta, cfg.reps, cfg.length,
            rrw::derive_seed(cfg.seed, 0x7068ULL, idx++)));
      }
      rrw::write_phase_report(rows, out_dir);
    } else {
      throw rrw::Error(rrw::ErrorCode::InvalidArgument,
                       "study kind must be std, mse or phase");
    }
  });
}

}  // extern "C"
