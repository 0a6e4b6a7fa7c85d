#include "estimate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace rrw {

namespace {

constexpr double kBoundaryTol = 1e-6;  // in log coordinates

// Evaluation context: per-theta tables so each cell costs one exp.
class CellEvaluator {
 public:
  CellEvaluator(const std::vector<FitCell> &cells, ContrastKind kind)
      : cells_(cells), kind_(kind) {
    std::int32_t m = 0;
    for (const FitCell &c : cells) m = std::max({m, c.i, c.j});
    log_table_.resize(static_cast<std::size_t>(m) + 1);
    inv_table_.resize(static_cast<std::size_t>(m) + 1);
  }

  // objective and gradient w.r.t. (alpha, c)
  double eval(double alpha, double c, Grad2 *grad) const {
    for (std::size_t m = 0; m < log_table_.size(); ++m) {
      const double cm = c + static_cast<double>(m);
      log_table_[m] = std::log(cm);
      inv_table_[m] = 1.0 / cm;
    }
    double obj = 0.0, ga = 0.0, gc = 0.0;
    for (const FitCell &cell : cells_) {
      const double lr = log_table_[static_cast<std::size_t>(cell.i)] -
                        log_table_[static_cast<std::size_t>(cell.j)];
      const double m = alpha * static_cast<double>(cell.j - cell.i) *
                       inv_table_[static_cast<std::size_t>(cell.i)] *
                       inv_table_[static_cast<std::size_t>(cell.j)];
      const double delta = -alpha * lr;  // f = 1 / (1 + exp(delta))
      double f, logf, logfbar;
      if (delta > 36.0) {
        const double e = std::exp(-delta);
        f = e;
        logf = -delta;
        logfbar = -e;
      } else if (delta < -36.0) {
        const double e = std::exp(delta);
        f = 1.0 - e;
        logf = -e;
        logfbar = delta;
      } else {
        const double e = std::exp(delta);
        f = 1.0 / (1.0 + e);
        logf = -std::log1p(e);
        logfbar = logf + delta;
      }
      const double p = cell.target;
      if (kind_ == ContrastKind::Kullback) {
        obj += cell.weight * (-p * logf - (1.0 - p) * logfbar);
        const double s = cell.weight * (f - p);
        ga += s * lr;
        gc += s * m;
      } else {
        const double r = f - p;
        obj += cell.weight * r * r;
        const double s = 2.0 * cell.weight * r * f * (1.0 - f);
        ga += s * lr;
        gc += s * m;
      }
    }
    if (grad) *grad = {ga, gc};
    return obj;
  }

 private:
  const std::vector<FitCell> &cells_;
  ContrastKind kind_;
  mutable std::vector<double> log_table_;
  mutable std::vector<double> inv_table_;
};

struct LocalResult {
  std::array<double, 2> x;  // (log alpha, log c)
  double objective;
  bool converged;
};

// Projected BFGS in log coordinates over [lo, hi]^2; frozen[d] pins a
// coordinate (profile estimation).
LocalResult local_minimize(const CellEvaluator &eval,
                           const std::array<double, 2> &x0,
                           const std::array<double, 2> &lo,
                           const std::array<double, 2> &hi,
                           const std::array<bool, 2> &frozen,
                           const OptimConfig &cfg) {
  auto clamp = [&](std::array<double, 2> x) {
    for (int d = 0; d < 2; ++d) x[d] = std::min(hi[d], std::max(lo[d], x[d]));
    return x;
  };
  auto objective_grad = [&](const std::array<double, 2> &x,
                            std::array<double, 2> *g) {
    Grad2 gt{};
    const double a = std::exp(x[0]);
    const double c = std::exp(x[1]);
    const double v = eval.eval(a, c, g ? &gt : nullptr);
    if (g) {
      (*g)[0] = frozen[0] ? 0.0 : gt.d_alpha * a;
      (*g)[1] = frozen[1] ? 0.0 : gt.d_c * c;
    }
    return v;
  };
  auto projected_grad = [&](const std::array<double, 2> &x,
                            const std::array<double, 2> &g) {
    std::array<double, 2> pg = g;
    for (int d = 0; d < 2; ++d) {
      if (frozen[d]) pg[d] = 0.0;
      if (x[d] <= lo[d] + kBoundaryTol && pg[d] > 0.0) pg[d] = 0.0;
      if (x[d] >= hi[d] - kBoundaryTol && pg[d] < 0.0) pg[d] = 0.0;
    }
    return pg;
  };

  std::array<double, 2> x = clamp(x0);
  std::array<double, 2> g{};
  double fx = objective_grad(x, &g);
  // inverse Hessian approximation
  double h00 = 1.0, h01 = 0.0, h11 = 1.0;
  bool converged = false;

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    if (!std::isfinite(fx)) break;
    const std::array<double, 2> pg = projected_grad(x, g);
    const double pgnorm = std::sqrt(pg[0] * pg[0] + pg[1] * pg[1]);
    if (pgnorm <= cfg.grad_tol * (1.0 + std::fabs(fx))) {
      converged = true;
      break;
    }
    std::array<double, 2> dir = {-(h00 * g[0] + h01 * g[1]),
                                 -(h01 * g[0] + h11 * g[1])};
    for (int d = 0; d < 2; ++d)
      if (frozen[d]) dir[d] = 0.0;
    double descent = dir[0] * g[0] + dir[1] * g[1];
    if (!(descent < 0.0)) {
      dir = {-pg[0], -pg[1]};
      descent = -(pg[0] * pg[0] + pg[1] * pg[1]);
      h00 = h11 = 1.0;
      h01 = 0.0;
    }
    // Armijo backtracking on the projected path
    double t = 1.0;
    std::array<double, 2> xn{};
    double fn = std::numeric_limits<double>::infinity();
    bool moved = false;
    for (int ls = 0; ls < 50; ++ls) {
      xn = clamp({x[0] + t * dir[0], x[1] + t * dir[1]});
      if (xn == x) break;
      fn = objective_grad(xn, nullptr);
      if (std::isfinite(fn) && fn <= fx + 1e-4 * t * descent) {
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      // no admissible step along the BFGS direction; re-check optimality
      const std::array<double, 2> pg2 = projected_grad(x, g);
      converged = std::sqrt(pg2[0] * pg2[0] + pg2[1] * pg2[1]) <=
                  cfg.grad_tol * (1.0 + std::fabs(fx)) * 1e2;
      break;
    }
    std::array<double, 2> gn{};
    const double fcheck = objective_grad(xn, &gn);
    (void)fcheck;
    const std::array<double, 2> s = {xn[0] - x[0], xn[1] - x[1]};
    const std::array<double, 2> y = {gn[0] - g[0], gn[1] - g[1]};
    const double sy = s[0] * y[0] + s[1] * y[1];
    const bool hit_bound =
        xn[0] <= lo[0] + kBoundaryTol || xn[0] >= hi[0] - kBoundaryTol ||
        xn[1] <= lo[1] + kBoundaryTol || xn[1] >= hi[1] - kBoundaryTol;
    if (hit_bound || sy <= 1e-12 * std::sqrt((s[0] * s[0] + s[1] * s[1]) *
                                             (y[0] * y[0] + y[1] * y[1]))) {
      h00 = h11 = 1.0;
      h01 = 0.0;
    } else {
      // BFGS inverse update
      const double rho = 1.0 / sy;
      const double hy0 = h00 * y[0] + h01 * y[1];
      const double hy1 = h01 * y[0] + h11 * y[1];
      const double yhy = y[0] * hy0 + y[1] * hy1;
      const double k = (1.0 + rho * yhy) * rho;
      h00 += k * s[0] * s[0] - rho * (hy0 * s[0] + s[0] * hy0);
      h01 += k * s[0] * s[1] - rho * (hy0 * s[1] + s[0] * hy1);
      h11 += k * s[1] * s[1] - rho * (hy1 * s[1] + s[1] * hy1);
    }
    x = xn;
    fx = fn;
    g = gn;
  }
  return {x, fx, converged};
}

bool lex_less(double a1, double c1, double a2, double c2) {
  if (a1 != a2) return a1 < a2;
  return c1 < c2;
}

}  // namespace

void ParamBox::validate() const {
  if (!(0.0 < alpha_lo && alpha_lo < alpha_hi) ||
      !(0.0 < c_lo && c_lo < c_hi) || !std::isfinite(alpha_hi) ||
      !std::isfinite(c_hi)) {
    throw Error(ErrorCode::InvalidArgument,
                "parameter box requires 0 < lo < hi in each coordinate");
  }
}

std::vector<FitCell> build_cells(const CellStats &stats, WeightMode weights,
                                 bool symmetrized, int *skipped) {
  const std::int64_t n = stats.length();
  const double npaths = static_cast<double>(stats.paths());
  std::vector<FitCell> cells;
  int dropped = 0;

  auto mode_weight = [&](std::int64_t k, std::int64_t i,
                         bool *usable) -> double {
    *usable = true;
    const std::int64_t v = stats.visit_count(k, i);
    if (v == 0) {
      *usable = false;
      return 0.0;
    }
    switch (weights) {
      case WeightMode::Occupancy:
        return static_cast<double>(v) / npaths;
      case WeightMode::Unit:
        return 1.0;
      case WeightMode::Efficient: {
        const double p = stats.p(k, i);
        if (p <= 0.0 || p >= 1.0) {
          *usable = false;
          return 0.0;
        }
        return static_cast<double>(v) / npaths / (p * (1.0 - p));
      }
    }
    return 0.0;
  };

  if (!symmetrized) {
    for (std::int64_t k = 0; k < n; ++k) {
      for (std::int64_t i = 0; i <= k; ++i) {
        bool usable = false;
        const double w = mode_weight(k, i, &usable);
        if (!usable) {
          if (stats.visit_count(k, i) > 0) ++dropped;
          continue;
        }
        cells.push_back({static_cast<std::int32_t>(i),
                         static_cast<std::int32_t>(k - i), w, stats.p(k, i)});
      }
    }
  } else {
    // folded form: i <= floor(k/2), weight w(i,k-i) + w(k-i,i), target ptilde
    for (std::int64_t k = 0; k < n; ++k) {
      for (std::int64_t i = 0; i <= k / 2; ++i) {
        bool u1 = false, u2 = false;
        double w = mode_weight(k, i, &u1);
        if (i != k - i) {
          const double w2 = mode_weight(k, k - i, &u2);
          if (u2) w += w2;
        } else {
          u2 = false;
        }
        const bool any_visit =
            stats.visit_count(k, i) + stats.visit_count(k, k - i) > 0;
        if (!u1 && !u2) {
          if (any_visit) ++dropped;
          continue;
        }
        cells.push_back({static_cast<std::int32_t>(i),
                         static_cast<std::int32_t>(k - i), w,
                         stats.ptilde(k, i)});
      }
    }
  }
  if (skipped) *skipped = dropped;
  return cells;
}

double contrast_value(const std::vector<FitCell> &cells, ContrastKind kind,
                      const ModelParams &p) {
  CellEvaluator eval(cells, kind);
  return eval.eval(p.alpha, p.c, nullptr);
}

Grad2 contrast_gradient(const std::vector<FitCell> &cells, ContrastKind kind,
                        const ModelParams &p) {
  CellEvaluator eval(cells, kind);
  Grad2 g{};
  eval.eval(p.alpha, p.c, &g);
  return g;
}

EstimateResult minimize_cells(const std::vector<FitCell> &cells,
                              ContrastKind contrast, const ParamBox &box,
                              const OptimConfig &cfg,
                              std::optional<double> fix_c) {
  box.validate();
  if (cells.empty())
    throw Error(ErrorCode::EmptyData, "no usable cells for estimation");
  bool informative = false;
  for (const FitCell &c : cells)
    if (c.i != c.j) {
      informative = true;
      break;
    }
  if (!informative)
    throw Error(ErrorCode::EmptyData,
                "all cells are symmetric (i = j); theta is unidentifiable");

  CellEvaluator eval(cells, contrast);
  const std::array<double, 2> lo = {
      std::log(box.alpha_lo), std::log(fix_c ? *fix_c : box.c_lo)};
  const std::array<double, 2> hi = {
      std::log(box.alpha_hi), std::log(fix_c ? *fix_c : box.c_hi)};
  const std::array<bool, 2> frozen = {false, fix_c.has_value()};

  // fixed log-spaced grid of starting points
  std::vector<std::array<double, 2>> starts;
  const int na = std::max(1, cfg.starts_alpha);
  const int nc = fix_c ? 1 : std::max(1, cfg.starts_c);
  for (int s = 0; s < na; ++s) {
    const double xa = lo[0] + (s + 0.5) * (hi[0] - lo[0]) / na;
    for (int t = 0; t < nc; ++t) {
      const double xc = fix_c ? lo[1] : lo[1] + (t + 0.5) * (hi[1] - lo[1]) / nc;
      starts.push_back({xa, xc});
    }
  }
  if (cfg.warm_start) {
    starts.push_back({std::log(cfg.warm_start->alpha),
                      fix_c ? lo[1] : std::log(cfg.warm_start->c)});
  }

  bool have_best = false;
  LocalResult best{};
  bool all_converged = true;
  int finite_runs = 0;
  for (const auto &x0 : starts) {
    LocalResult r = local_minimize(eval, x0, lo, hi, frozen, cfg);
    if (!std::isfinite(r.objective)) {
      all_converged = false;
      continue;
    }
    ++finite_runs;
    all_converged = all_converged && r.converged;
    const double a = std::exp(r.x[0]);
    const double c = std::exp(r.x[1]);
    if (!have_best) {
      best = r;
      have_best = true;
      continue;
    }
    const double tie = 1e-10 * (1.0 + std::fabs(best.objective));
    const double ba = std::exp(best.x[0]);
    const double bc = std::exp(best.x[1]);
    if (r.objective < best.objective - tie ||
        (r.objective <= best.objective + tie && lex_less(a, c, ba, bc))) {
      best = r;
    }
  }
  if (!have_best)
    throw Error(ErrorCode::NonFinite,
                "contrast is non-finite over the whole parameter box");
  (void)finite_runs;

  EstimateResult out;
  out.alpha = std::exp(best.x[0]);
  out.c = std::exp(best.x[1]);
  out.objective = best.objective;
  out.converged = all_converged;
  out.n_restarts_used = static_cast<int>(starts.size());
  out.at_boundary =
      best.x[0] <= lo[0] + kBoundaryTol || best.x[0] >= hi[0] - kBoundaryTol ||
      (!fix_c && (best.x[1] <= lo[1] + kBoundaryTol ||
                  best.x[1] >= hi[1] - kBoundaryTol));
  return out;
}

EstimateResult minimize_contrast(const CellStats &stats, ContrastKind contrast,
                                 WeightMode weights, const ParamBox &box,
                                 const OptimConfig &cfg) {
  int skipped = 0;
  std::vector<FitCell> cells = build_cells(stats, weights, false, &skipped);
  if (cells.empty() && weights == WeightMode::Efficient)
    throw Error(ErrorCode::DegenerateWeights,
                "efficient weights are infinite on every occupied cell");
  EstimateResult res = minimize_cells(cells, contrast, box, cfg);
  res.method = contrast == ContrastKind::Kullback ? Method::Mle : Method::Wlse;
  res.weights = weights;
  res.skipped_cells = skipped;
  return res;
}

EstimateResult fit_mle(const PathSet &paths, const ParamBox &box,
                       const OptimConfig &cfg) {
  return minimize_contrast(cell_stats(paths), ContrastKind::Kullback,
                           WeightMode::Occupancy, box, cfg);
}

EstimateResult fit_wlse(const PathSet &paths, WeightMode weights,
                        bool symmetrized, const ParamBox &box,
                        const OptimConfig &cfg) {
  const CellStats stats = cell_stats(paths);
  int skipped = 0;
  std::vector<FitCell> cells = build_cells(stats, weights, symmetrized,
                                           &skipped);
  if (cells.empty() && weights == WeightMode::Efficient)
    throw Error(ErrorCode::DegenerateWeights,
                "efficient weights are infinite on every occupied cell");
  EstimateResult res = minimize_cells(cells, ContrastKind::Squared, box, cfg);
  res.method = Method::Wlse;
  res.weights = weights;
  res.symmetrized = symmetrized;
  res.skipped_cells = skipped;
  return res;
}

EstimateResult profile_alpha(const PathSet &paths, double c_fixed,
                             Method method, const ParamBox &box,
                             const OptimConfig &cfg) {
  if (!(c_fixed > 0.0) || !std::isfinite(c_fixed))
    throw Error(ErrorCode::InvalidArgument, "profile_alpha requires c > 0");
  const CellStats stats = cell_stats(paths);
  const ContrastKind kind = method == Method::Mle ? ContrastKind::Kullback
                                                  : ContrastKind::Squared;
  int skipped = 0;
  std::vector<FitCell> cells =
      build_cells(stats, WeightMode::Occupancy, false, &skipped);
  EstimateResult res = minimize_cells(cells, kind, box, cfg, c_fixed);
  res.method = method;
  res.weights = WeightMode::Occupancy;
  res.skipped_cells = skipped;
  return res;
}

}  // namespace rrw
