#include <doctest.h>

#include <cmath>

#include "core/empirical.hpp"
#include "core/simulate.hpp"

using namespace rrw;

TEST_CASE("cell stats on a hand-enumerated path set") {
  // paths (1,1) and (0,1)
  PathSet paths{2, 2, {1, 1, 0, 1}};
  const CellStats s = cell_stats(paths);
  CHECK(s.a(0, 0) == 1.0);
  CHECK(s.p(0, 0) == 0.5);
  CHECK(s.a(1, 1) == 0.5);
  CHECK(s.p(1, 1) == 1.0);
  CHECK(s.a(1, 0) == 0.5);
  CHECK(s.p(1, 0) == 1.0);
}

TEST_CASE("row sums, ptilde on the diagonal, 0/0 convention") {
  const PathSet paths = simulate_paths({1.4, 0.8}, 25, 30, 7);
  const CellStats s = cell_stats(paths);
  std::int64_t total_ones = 0;
  for (std::int64_t j = 0; j < paths.n_paths; ++j)
    for (std::int64_t k = 0; k < paths.length; ++k)
      total_ones += paths.at(j, k);

  double b_sum = 0.0;
  for (std::int64_t k = 0; k < paths.length; ++k) {
    double row = 0.0;
    for (std::int64_t i = 0; i <= k; ++i) {
      row += s.a(k, i);
      b_sum += s.b(k, i);
      if (s.visit_count(k, i) == 0) {
        CHECK(s.p(k, i) == 0.0);
      }
      if (2 * i == k && s.visit_count(k, i) > 0) {
        CHECK(s.ptilde(k, i) == 0.5);
      }
    }
    CHECK(row == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(static_cast<double>(paths.n_paths) * b_sum ==
        doctest::Approx(static_cast<double>(total_ones)).epsilon(1e-10));
}

TEST_CASE("p_N and ptilde_N are consistent for f0") {
  const ModelParams truth{1.0, 1.0};
  const std::int64_t big = 100000;
  const PathSet paths = simulate_paths(truth, big, 10, 23);
  const CellStats s = cell_stats(paths);
  for (std::int64_t k = 0; k < 10; ++k) {
    for (std::int64_t i = 0; i <= k; ++i) {
      const double a = s.a(k, i);
      if (a < 0.01) continue;
      const double f0 = choice_prob(truth, static_cast<double>(i),
                                    static_cast<double>(k - i));
      const double tol =
          4.0 * std::sqrt(f0 * (1.0 - f0) / (static_cast<double>(big) * a)) +
          1e-6;
      CHECK(std::fabs(s.p(k, i) - f0) < tol);
      CHECK(std::fabs(s.ptilde(k, i) - f0) < tol);
    }
  }
}

TEST_CASE("discarded_count") {
  PathSet paths{3, 10,
                {1, 1, 1, 1, 1, 1, 1, 1, 1, 1,
                 1, 0, 1, 0, 1, 0, 1, 0, 1, 0,
                 1, 1, 1, 0, 0, 0, 0, 0, 0, 0}};
  CHECK(discarded_count(paths, 0) == 0);
  CHECK(discarded_count(paths, 1) == 5);
  CHECK(discarded_count(paths, 2) == 3);
  CHECK_THROWS_AS(discarded_count(paths, 3), Error);
}

TEST_CASE("empty input rejected") {
  PathSet empty;
  CHECK_THROWS_AS(cell_stats(empty), Error);
}
