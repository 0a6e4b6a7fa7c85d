// Mathematical core of the reinforced random walk model: the choice
// function f(theta, i, j) = (c+i)^a / ((c+i)^a + (c+j)^a), its gradient in
// (alpha, c), the per-cell Fisher kernel, the exact occupancy distribution
// of Z_k, and log-likelihoods.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "triangular.hpp"

namespace rrw {

// theta = (alpha, c), both strictly positive and finite.
struct ModelParams {
  double alpha;
  double c;

  ModelParams(double alpha_, double c_) : alpha(alpha_), c(c_) {
    if (!(alpha > 0.0) || !std::isfinite(alpha) || !(c > 0.0) ||
        !std::isfinite(c)) {
      throw Error(ErrorCode::InvalidArgument,
                  "model parameters require alpha > 0 and c > 0");
    }
  }
};

struct Grad2 {
  double d_alpha;
  double d_c;
};

// Symmetric 2x2 matrix indexed (alpha, c).
struct CellMatrix2 {
  double aa = 0.0;
  double ac = 0.0;
  double cc = 0.0;

  CellMatrix2 &operator+=(const CellMatrix2 &o) {
    aa += o.aa;
    ac += o.ac;
    cc += o.cc;
    return *this;
  }
  CellMatrix2 scaled(double s) const { return {aa * s, ac * s, cc * s}; }
  double det() const { return aa * cc - ac * ac; }
  double trace() const { return aa + cc; }
};

// Triangular array of P(Z_k = i), rows k = 0..n-1.
struct OccupancyDistribution {
  Triangular<double> rows;
  std::size_t length() const { return rows.rows(); }
  double prob(std::size_t k, std::size_t i) const { return rows(k, i); }
};

// N binary paths of common length n, row-major.
struct PathSet {
  std::int64_t n_paths = 0;
  std::int64_t length = 0;
  std::vector<std::uint8_t> choices;  // n_paths * length entries in {0,1}

  std::uint8_t at(std::int64_t path, std::int64_t step) const {
    return choices[static_cast<std::size_t>(path * length + step)];
  }
};

// Probability of drawing color 1 given i previous draws of color 1 and j of
// color 0, evaluated in log space so large alpha and counts do not overflow.
double choice_prob(const ModelParams &p, double i, double j);

// (d/dalpha, d/dc) of choice_prob.
Grad2 choice_prob_grad(const ModelParams &p, double i, double j);

// Per-cell Fisher kernel; equals grad.grad' / (f(1-f))^2.
CellMatrix2 fisher_cell(const ModelParams &p, double i, double j);

// Exact distribution of Z_k for k = 0..n-1 by forward dynamic programming.
OccupancyDistribution occupancy(const ModelParams &p, std::int64_t n);

// Log-likelihood of a PathSet under theta.
double loglik(const PathSet &paths, const ModelParams &p);

// L(theta) = N^{-1} E[L_N(theta)] when data come from `truth`.
double expected_loglik(const ModelParams &truth, const ModelParams &p,
                       std::int64_t n);

// log f and log(1-f), stable for extreme cells.
double log_choice_prob(const ModelParams &p, double i, double j);
double log_choice_prob_bar(const ModelParams &p, double i, double j);

}  // namespace rrw
