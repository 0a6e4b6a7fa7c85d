#include "asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rrw {

Inverse2x2 invert2x2(const CellMatrix2 &m) {
  const double det = m.det();
  // eigenvalues of a symmetric 2x2
  const double half_tr = 0.5 * m.trace();
  const double disc = std::sqrt(std::max(0.0, half_tr * half_tr - det));
  const double lam_max = half_tr + disc;
  const double lam_min = half_tr - disc;
  const double cond = (lam_min > 0.0 && std::fabs(det) > 1e-300)
                          ? lam_max / lam_min
                          : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12))
    throw Error(ErrorCode::Singular,
                "2x2 matrix is numerically singular (condition > 1e12)");
  return {{m.cc / det, -m.ac / det, m.aa / det}, cond};
}

CellMatrix2 fisher_info(const ModelParams &params, std::int64_t n) {
  if (n < 1)
    throw Error(ErrorCode::InvalidArgument, "fisher_info requires n >= 1");
  const OccupancyDistribution dist = occupancy(params, n);
  CellMatrix2 total;
  for (std::int64_t k = 0; k < n; ++k) {
    CellMatrix2 row;
    for (std::int64_t i = 0; i <= k; ++i) {
      const double mass = dist.prob(static_cast<std::size_t>(k),
                                    static_cast<std::size_t>(i));
      if (mass == 0.0) continue;
      const double ii = static_cast<double>(i);
      const double jj = static_cast<double>(k - i);
      const double f = choice_prob(params, ii, jj);
      row += fisher_cell(params, ii, jj).scaled(mass * f * (1.0 - f));
    }
    total += row;
  }
  return total;
}

CellMatrix2 wlse_covariance(const ModelParams &params, std::int64_t n,
                            WeightMode weights) {
  if (n < 3)
    throw Error(ErrorCode::InvalidArgument,
                "wlse_covariance requires n >= 3");
  if (weights == WeightMode::Efficient) {
    // w0 = P/(f fbar) collapses the sandwich to the inverse information
    return invert2x2(fisher_info(params, n)).inv;
  }
  const OccupancyDistribution dist = occupancy(params, n);
  CellMatrix2 h, wddot;
  for (std::int64_t k = 0; k < n; ++k) {
    for (std::int64_t i = 0; i <= k; ++i) {
      const double mass = dist.prob(static_cast<std::size_t>(k),
                                    static_cast<std::size_t>(i));
      if (mass == 0.0) continue;
      const double ii = static_cast<double>(i);
      const double jj = static_cast<double>(k - i);
      const double f = choice_prob(params, ii, jj);
      const double v = f * (1.0 - f);
      const double w0 = weights == WeightMode::Occupancy ? mass : 1.0;
      const CellMatrix2 kern = fisher_cell(params, ii, jj);
      h += kern.scaled(4.0 * w0 * w0 * v * v * v / mass);
      wddot += kern.scaled(2.0 * w0 * v * v);
    }
  }
  const CellMatrix2 winv = invert2x2(wddot).inv;
  // winv * h * winv, all symmetric
  const double t00 = winv.aa * h.aa + winv.ac * h.ac;
  const double t01 = winv.aa * h.ac + winv.ac * h.cc;
  const double t10 = winv.ac * h.aa + winv.cc * h.ac;
  const double t11 = winv.ac * h.ac + winv.cc * h.cc;
  return {t00 * winv.aa + t01 * winv.ac, t00 * winv.ac + t01 * winv.cc,
          t10 * winv.ac + t11 * winv.cc};
}

Gamma0Array gamma0(const ModelParams &params, std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "gamma0 requires n >= 1");
  const OccupancyDistribution dist = occupancy(params, n);
  Gamma0Array out;
  out.rows = Triangular<double>(static_cast<std::size_t>(n), 0.0);
  for (std::int64_t k = 0; k < n; ++k) {
    for (std::int64_t i = 0; i <= k; ++i) {
      const double mass = dist.prob(static_cast<std::size_t>(k),
                                    static_cast<std::size_t>(i));
      const double f = choice_prob(params, static_cast<double>(i),
                                   static_cast<double>(k - i));
      out.rows(static_cast<std::size_t>(k), static_cast<std::size_t>(i)) =
          mass > 0.0 ? f * (1.0 - f) / mass
                     : std::numeric_limits<double>::infinity();
    }
  }
  return out;
}

std::vector<double> polya_occupancy_row(double c, std::int64_t k) {
  if (!(c > 0.0) || k < 0)
    throw Error(ErrorCode::InvalidArgument,
                "polya_occupancy_row requires c > 0 and k >= 0");
  // P(Z_k = i) = C(k,i) Gamma(c+i) Gamma(c+k-i) Gamma(2c) /
  //              (Gamma(c)^2 Gamma(2c+k)), accumulated in log space.
  std::vector<double> row(static_cast<std::size_t>(k) + 1);
  const double base = std::lgamma(2.0 * c) - 2.0 * std::lgamma(c) -
                      std::lgamma(2.0 * c + static_cast<double>(k)) +
                      std::lgamma(static_cast<double>(k) + 1.0);
  for (std::int64_t i = 0; i <= k; ++i) {
    const double di = static_cast<double>(i);
    const double dj = static_cast<double>(k - i);
    row[static_cast<std::size_t>(i)] =
        std::exp(base + std::lgamma(c + di) + std::lgamma(c + dj) -
                 std::lgamma(di + 1.0) - std::lgamma(dj + 1.0));
  }
  return row;
}

double polya_single_path_fisher(double c, std::int64_t n) {
  if (!(c > 0.0) || !std::isfinite(c) || n < 1)
    throw Error(ErrorCode::InvalidArgument,
                "polya_single_path_fisher requires c > 0 and n >= 1");
  // P(Z_k = i) updated row by row via the Polya transition
  // P(Z_{k+1}=i+1 | Z_k=i) = (c+i)/(2c+k); exact, no sampling.
  std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> next(static_cast<std::size_t>(n) + 1, 0.0);
  row[0] = 1.0;
  double total = 0.0;
  for (std::int64_t k = 0; k < n; ++k) {
    const double denom = 2.0 * c + static_cast<double>(k);
    double e_inv = 0.0;  // E[1/(c+Z_k)]
    for (std::int64_t i = 0; i <= k; ++i) {
      const double mass = row[static_cast<std::size_t>(i)];
      if (mass == 0.0) continue;
      e_inv += mass / (c + static_cast<double>(i));
    }
    // by symmetry E[1/(c+k-Z_k)] = E[1/(c+Z_k)]
    total += (2.0 * e_inv - 4.0 / denom) / denom;
    if (k + 1 < n) {
      std::fill(next.begin(), next.begin() + k + 2, 0.0);
      for (std::int64_t i = 0; i <= k; ++i) {
        const double mass = row[static_cast<std::size_t>(i)];
        if (mass == 0.0) continue;
        const double up = (c + static_cast<double>(i)) / denom;
        next[static_cast<std::size_t>(i) + 1] += mass * up;
        next[static_cast<std::size_t>(i)] += mass * (1.0 - up);
      }
      std::swap(row, next);
    }
  }
  return total;
}

}  // namespace rrw
