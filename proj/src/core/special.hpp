// Regularized incomplete beta function I_x(a, b), used as the Beta(c, c)
// CDF in the phase checks.
#pragma once

namespace rrw {

// Accurate to about 1e-12 via the Lentz continued fraction.
double reg_incomplete_beta(double a, double b, double x);

inline double beta_cdf(double x, double a, double b) {
  return reg_incomplete_beta(a, b, x);
}

}  // namespace rrw
