#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/empirical.hpp"
#include "core/model.hpp"

using namespace rrw;

namespace {

// enumerate all 2^k paths and accumulate P(Z_k = i) from the product of
// choice probabilities
std::vector<double> brute_force_row(const ModelParams &p, int k) {
  std::vector<double> row(static_cast<std::size_t>(k) + 1, 0.0);
  for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
    double prob = 1.0;
    int z = 0;
    for (int step = 0; step < k; ++step) {
      const double f = choice_prob(p, z, step - z);
      if (mask & (1UL << step)) {
        prob *= f;
        ++z;
      } else {
        prob *= 1.0 - f;
      }
    }
    row[static_cast<std::size_t>(z)] += prob;
  }
  return row;
}

}  // namespace

TEST_CASE("choice_prob hand values") {
  CHECK(choice_prob({1, 1}, 0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(choice_prob({2, 20}, 10, 0) ==
        doctest::Approx(900.0 / 1300.0).epsilon(1e-14));
  for (double a : {0.5, 1.0, 3.0})
    for (double i : {0.0, 3.0, 1e6})
      CHECK(choice_prob({a, 0.7}, i, i) == 0.5);
}

TEST_CASE("choice_prob symmetry and range") {
  for (double a : {0.1, 1.0, 10.0, 100.0}) {
    for (double i : {0.0, 1.0, 17.0, 1e6}) {
      for (double j : {0.0, 2.0, 999.0, 1e6}) {
        const double f = choice_prob({a, 0.5}, i, j);
        CHECK(std::isfinite(f));
        CHECK(f > 0.0);
        CHECK(f < 1.0);
        CHECK(f + choice_prob({a, 0.5}, j, i) == doctest::Approx(1.0).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("invalid parameters rejected") {
  CHECK_THROWS_AS(ModelParams(0.0, 1.0), Error);
  CHECK_THROWS_AS(ModelParams(1.0, -2.0), Error);
  CHECK_THROWS_AS(ModelParams(std::nan(""), 1.0), Error);
}

TEST_CASE("gradient hand values and finite differences") {
  const Grad2 zero = choice_prob_grad({1.3, 0.8}, 4, 4);
  CHECK(zero.d_alpha == 0.0);
  CHECK(zero.d_c == 0.0);

  const Grad2 g = choice_prob_grad({1, 1}, 0, 1);
  CHECK(g.d_alpha == doctest::Approx((2.0 / 9.0) * std::log(0.5)).epsilon(1e-12));
  CHECK(g.d_c == doctest::Approx(1.0 / 9.0).epsilon(1e-12));

  const double h = 1e-6;
  for (double a : {0.3, 1.0, 2.7}) {
    for (double c : {0.4, 1.0, 5.0}) {
      for (int i : {0, 2, 9}) {
        for (int j : {1, 5, 20}) {
          const Grad2 an = choice_prob_grad({a, c}, i, j);
          const double fa = (choice_prob({a + h, c}, i, j) -
                             choice_prob({a - h, c}, i, j)) /
                            (2 * h);
          const double fc = (choice_prob({a, c + h}, i, j) -
                             choice_prob({a, c - h}, i, j)) /
                            (2 * h);
          CHECK(an.d_alpha == doctest::Approx(fa).epsilon(1e-5));
          CHECK(an.d_c == doctest::Approx(fc).epsilon(1e-5));
        }
      }
    }
  }
}

TEST_CASE("fisher_cell values and identities") {
  const CellMatrix2 zero = fisher_cell({2, 3}, 7, 7);
  CHECK(zero.aa == 0.0);
  CHECK(zero.ac == 0.0);
  CHECK(zero.cc == 0.0);

  const double l2 = std::log(2.0);
  const CellMatrix2 j = fisher_cell({1, 1}, 0, 1);
  CHECK(j.aa == doctest::Approx(l2 * l2).epsilon(1e-14));
  CHECK(j.ac == doctest::Approx(-l2 / 2.0).epsilon(1e-14));
  CHECK(j.cc == doctest::Approx(0.25).epsilon(1e-14));

  for (double a : {0.7, 1.9}) {
    for (int i : {0, 3}) {
      for (int jj : {1, 8}) {
        const ModelParams p{a, 1.4};
        const CellMatrix2 m = fisher_cell(p, i, jj);
        const CellMatrix2 mt = fisher_cell(p, jj, i);
        CHECK(m.aa == doctest::Approx(mt.aa).epsilon(1e-14));
        CHECK(m.ac == doctest::Approx(mt.ac).epsilon(1e-14));
        // J = grad grad' / (f fbar)^2
        const double f = choice_prob(p, i, jj);
        const double v = f * (1.0 - f);
        const Grad2 g = choice_prob_grad(p, i, jj);
        CHECK(m.aa == doctest::Approx(g.d_alpha * g.d_alpha / (v * v)).epsilon(1e-12));
        CHECK(m.ac == doctest::Approx(g.d_alpha * g.d_c / (v * v)).epsilon(1e-12));
        CHECK(m.cc == doctest::Approx(g.d_c * g.d_c / (v * v)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("occupancy basics") {
  const OccupancyDistribution d = occupancy({1, 1}, 3);
  CHECK(d.prob(0, 0) == 1.0);
  for (std::size_t i = 0; i <= 2; ++i)
    CHECK(d.prob(2, i) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("occupancy rows sum to one and are symmetric") {
  const OccupancyDistribution d = occupancy({1.7, 0.6}, 400);
  for (std::size_t k = 0; k < 400; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
      sum += d.prob(k, i);
      CHECK(d.prob(k, i) == doctest::Approx(d.prob(k, k - i)).epsilon(1e-12));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("occupancy equals brute-force path enumeration") {
  for (double a : {0.5, 1.0, 2.0}) {
    for (double c : {0.5, 1.0, 2.0}) {
      const ModelParams p{a, c};
      const OccupancyDistribution d = occupancy(p, 9);
      for (int k = 0; k <= 8; ++k) {
        const std::vector<double> row = brute_force_row(p, k);
        for (int i = 0; i <= k; ++i)
          CHECK(d.prob(static_cast<std::size_t>(k),
                       static_cast<std::size_t>(i)) ==
                doctest::Approx(row[static_cast<std::size_t>(i)])
                    .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("loglik hand values") {
  PathSet one{1, 1, {1}};
  CHECK(loglik(one, {2, 3}) == doctest::Approx(std::log(0.5)).epsilon(1e-14));
  PathSet two{2, 1, {1, 0}};
  CHECK(loglik(two, {2, 3}) ==
        doctest::Approx(2 * std::log(0.5)).epsilon(1e-14));
}

TEST_CASE("loglik equals cell-stat regrouping") {
  PathSet paths{4, 6, {1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1, 1,
                       1, 1, 1, 0, 0, 0, 0, 1, 0, 1, 0, 1}};
  const CellStats stats = cell_stats(paths);
  for (const ModelParams p : {ModelParams{0.8, 1.3}, ModelParams{2.1, 0.4}}) {
    double regrouped = 0.0;
    for (std::int64_t k = 0; k < paths.length; ++k) {
      for (std::int64_t i = 0; i <= k; ++i) {
        const double a = stats.a(k, i);
        if (a == 0.0) continue;
        regrouped += a * (stats.p(k, i) * log_choice_prob(p, i, k - i) +
                          stats.q(k, i) * log_choice_prob_bar(p, i, k - i));
      }
    }
    CHECK(loglik(paths, p) ==
          doctest::Approx(static_cast<double>(paths.n_paths) * regrouped)
              .epsilon(1e-10));
  }
}

TEST_CASE("expected_loglik is maximized at the truth") {
  CHECK(expected_loglik({0.7, 2.0}, {3.0, 0.1}, 1) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-14));

  const ModelParams truth{1.2, 0.9};
  const double at_truth = expected_loglik(truth, truth, 10);
  // zero gradient at the truth
  const double h = 1e-5;
  const double da = (expected_loglik(truth, {1.2 + h, 0.9}, 10) -
                     expected_loglik(truth, {1.2 - h, 0.9}, 10)) /
                    (2 * h);
  const double dc = (expected_loglik(truth, {1.2, 0.9 + h}, 10) -
                     expected_loglik(truth, {1.2, 0.9 - h}, 10)) /
                    (2 * h);
  CHECK(std::fabs(da) < 1e-6);
  CHECK(std::fabs(dc) < 1e-6);
  for (double a : {0.5, 0.9, 1.5, 2.5}) {
    for (double c : {0.3, 0.7, 1.5, 4.0}) {
      if (a == 1.2 && c == 0.9) continue;
      CHECK(expected_loglik(truth, {a, c}, 10) < at_truth);
    }
  }
}
