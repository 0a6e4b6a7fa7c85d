#include "model.hpp"

#include <algorithm>
#include <limits>

namespace rrw {

double choice_prob(const ModelParams &p, double i, double j) {
  // f = 1 / (1 + exp(a * (log(c+j) - log(c+i)))), clamped to the nearest
  // representable values inside (0, 1) when the exact value rounds to 0 or 1
  const double delta = p.alpha * (std::log(p.c + j) - std::log(p.c + i));
  double f;
  if (delta > 700.0)
    f = std::exp(-delta);  // avoid exp overflow
  else
    f = 1.0 / (1.0 + std::exp(delta));
  if (f <= 0.0) return std::numeric_limits<double>::denorm_min();
  if (f >= 1.0) return 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
  return f;
}

double log_choice_prob(const ModelParams &p, double i, double j) {
  const double delta = p.alpha * (std::log(p.c + j) - std::log(p.c + i));
  if (delta > 700.0) return -delta;
  return -std::log1p(std::exp(delta));
}

double log_choice_prob_bar(const ModelParams &p, double i, double j) {
  return log_choice_prob(p, j, i);
}

Grad2 choice_prob_grad(const ModelParams &p, double i, double j) {
  const double f = choice_prob(p, i, j);
  const double ffbar = f * (1.0 - f);
  const double lr = std::log(p.c + i) - std::log(p.c + j);
  const double m = p.alpha * (j - i) / ((p.c + i) * (p.c + j));
  return {ffbar * lr, ffbar * m};
}

CellMatrix2 fisher_cell(const ModelParams &p, double i, double j) {
  const double lr = std::log(p.c + i) - std::log(p.c + j);
  const double m = p.alpha * (j - i) / ((p.c + i) * (p.c + j));
  return {lr * lr, lr * m, m * m};
}

OccupancyDistribution occupancy(const ModelParams &p, std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "occupancy requires n >= 1");
  OccupancyDistribution dist;
  dist.rows = Triangular<double>(static_cast<std::size_t>(n), 0.0);
  dist.rows(0, 0) = 1.0;
  for (std::int64_t k = 0; k + 1 < n; ++k) {
    for (std::int64_t i = k; i >= 0; --i) {
      const double mass = dist.rows(k, i);
      if (mass == 0.0) continue;
      const double f = choice_prob(p, static_cast<double>(i),
                                   static_cast<double>(k - i));
      dist.rows(k + 1, i + 1) += mass * f;
      dist.rows(k + 1, i) += mass * (1.0 - f);
    }
  }
  return dist;
}

double loglik(const PathSet &paths, const ModelParams &p) {
  if (paths.n_paths < 1 || paths.length < 1)
    throw Error(ErrorCode::EmptyData, "loglik requires a non-empty path set");
  double total = 0.0;
  for (std::int64_t j = 0; j < paths.n_paths; ++j) {
    std::int64_t z = 0;
    for (std::int64_t k = 0; k < paths.length; ++k) {
      const double i = static_cast<double>(z);
      const double rest = static_cast<double>(k - z);
      total += paths.at(j, k) ? log_choice_prob(p, i, rest)
                              : log_choice_prob_bar(p, i, rest);
      z += paths.at(j, k);
    }
  }
  return total;
}

double expected_loglik(const ModelParams &truth, const ModelParams &p,
                       std::int64_t n) {
  const OccupancyDistribution dist = occupancy(truth, n);
  double total = 0.0;
  for (std::int64_t k = 0; k < n; ++k) {
    for (std::int64_t i = 0; i <= k; ++i) {
      const double mass = dist.prob(k, i);
      if (mass == 0.0) continue;
      const double ii = static_cast<double>(i);
      const double jj = static_cast<double>(k - i);
      const double f0 = choice_prob(truth, ii, jj);
      total += mass * (f0 * log_choice_prob(p, ii, jj) +
                       (1.0 - f0) * log_choice_prob_bar(p, ii, jj));
    }
  }
  return total;
}

}  // namespace rrw
