// Asymptotic covariance machinery: Fisher information of one step-n path,
// the WLSE sandwich covariance, the limit variances of the empirical cell
// frequencies, and the single-path Fisher information of the Polya urn
// (alpha = 1) where only c remains unknown.
#pragma once

#include "estimate.hpp"
#include "model.hpp"

namespace rrw {

struct Inverse2x2 {
  CellMatrix2 inv;
  double condition;  // 2-norm condition number estimate
};

// Closed-form inverse with a condition check; throws Singular above 1e12.
Inverse2x2 invert2x2(const CellMatrix2 &m);

// I_n(theta) = sum_{k,i} P(Z_k=i) f fbar J(alpha,c,i,k-i).
CellMatrix2 fisher_info(const ModelParams &params, std::int64_t n);

// Sandwich covariance of sqrt(N)(theta_wlse - theta_0):
//   Sigma_n = Wddot^{-1} H Wddot^{-1},
//   H = 4 sum w0^2 f^3 fbar^3 / P * J,  Wddot = 2 sum w0 f^2 fbar^2 J,
// with limit weights w0 = P (Occupancy), P/(f fbar) (Efficient, in which
// case Sigma_n = I_n^{-1}), or 1 (Unit).
CellMatrix2 wlse_covariance(const ModelParams &params, std::int64_t n,
                            WeightMode weights);

// Gamma_0(i, k-i) = f fbar / P(Z_k=i), the limit variance of
// sqrt(N) (p_N - f) per cell.
struct Gamma0Array {
  Triangular<double> rows;
  double at(std::size_t k, std::size_t i) const { return rows(k, i); }
};

Gamma0Array gamma0(const ModelParams &params, std::int64_t n);

// Exact Polya occupancy row P(Z_k = i) = C(k,i) (c)_i (c)_{k-i} / (2c)_k.
std::vector<double> polya_occupancy_row(double c, std::int64_t k);

// Single-path Fisher information for c in the Polya urn:
//   I_n(c) = sum_{k<n} (2c+k)^{-1} { E[1/(c+Z_k)] + E[1/(c+k-Z_k)]
//                                    - 4/(2c+k) }.
double polya_single_path_fisher(double c, std::int64_t n);

}  // namespace rrw
