#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "core/estimate.hpp"
#include "core/simulate.hpp"

using namespace rrw;

namespace {

// cells whose targets are exactly f(theta*, i, j)
std::vector<FitCell> perfect_cells(const ModelParams &star, int n) {
  std::vector<FitCell> cells;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i <= k; ++i)
      cells.push_back({i, k - i, 1.0,
                       choice_prob(star, i, k - i)});
  return cells;
}

}  // namespace

TEST_CASE("perfect synthetic targets are recovered exactly") {
  const ModelParams star{1.3, 2.2};
  const EstimateResult res =
      minimize_cells(perfect_cells(star, 12), ContrastKind::Squared, {}, {});
  CHECK(res.objective < 1e-16);
  CHECK(res.alpha == doctest::Approx(star.alpha).epsilon(1e-5));
  CHECK(res.c == doctest::Approx(star.c).epsilon(1e-4));
  CHECK(res.converged);
  CHECK_FALSE(res.at_boundary);
}

TEST_CASE("kullback contrast with occupancy weights reproduces fit_mle") {
  const PathSet paths = simulate_paths({1.0, 1.0}, 40, 40, 17);
  const EstimateResult direct = fit_mle(paths);
  const EstimateResult generic = minimize_contrast(
      cell_stats(paths), ContrastKind::Kullback, WeightMode::Occupancy, {},
      {});
  CHECK(generic.alpha == doctest::Approx(direct.alpha).epsilon(1e-8));
  CHECK(generic.c == doctest::Approx(direct.c).epsilon(1e-8));
}

TEST_CASE("mle contrast identity with the log-likelihood") {
  const PathSet paths = simulate_paths({0.9, 1.4}, 30, 25, 9);
  const CellStats stats = cell_stats(paths);
  int skipped = 0;
  const std::vector<FitCell> cells =
      build_cells(stats, WeightMode::Occupancy, false, &skipped);
  const ModelParams t1{0.7, 0.9}, t2{1.8, 2.5};
  const double n = static_cast<double>(paths.n_paths);
  const double lhs = -loglik(paths, t1) / n + loglik(paths, t2) / n;
  const double rhs = contrast_value(cells, ContrastKind::Kullback, t1) -
                     contrast_value(cells, ContrastKind::Kullback, t2);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("contrast gradient matches finite differences") {
  const PathSet paths = simulate_paths({1.2, 0.8}, 20, 20, 31);
  int skipped = 0;
  const std::vector<FitCell> cells =
      build_cells(cell_stats(paths), WeightMode::Occupancy, false, &skipped);
  const double h = 1e-6;
  for (const ContrastKind kind :
       {ContrastKind::Kullback, ContrastKind::Squared}) {
    for (const ModelParams p : {ModelParams{0.8, 1.1}, ModelParams{2.0, 0.6}}) {
      const Grad2 g = contrast_gradient(cells, kind, p);
      const double fa =
          (contrast_value(cells, kind, {p.alpha + h, p.c}) -
           contrast_value(cells, kind, {p.alpha - h, p.c})) /
          (2 * h);
      const double fc =
          (contrast_value(cells, kind, {p.alpha, p.c + h}) -
           contrast_value(cells, kind, {p.alpha, p.c - h})) /
          (2 * h);
      CHECK(g.d_alpha == doctest::Approx(fa).epsilon(1e-5));
      CHECK(g.d_c == doctest::Approx(fc).epsilon(1e-5));
    }
  }
}

TEST_CASE("n = 1 data is unidentifiable") {
  const PathSet paths = simulate_paths({1.0, 1.0}, 20, 1, 3);
  CHECK_THROWS_AS(fit_mle(paths), Error);
  try {
    fit_mle(paths);
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::EmptyData);
  }
}

TEST_CASE("all-ones data pushes alpha to the boundary") {
  PathSet paths;
  paths.n_paths = 5;
  paths.length = 30;
  paths.choices.assign(150, 1);
  const EstimateResult res = fit_mle(paths);
  CHECK(res.at_boundary);
}

TEST_CASE("path order does not affect the fit") {
  const PathSet paths = simulate_paths({1.5, 1.0}, 30, 40, 77);
  PathSet shuffled = paths;
  std::vector<std::int64_t> order(static_cast<std::size_t>(paths.n_paths));
  for (std::size_t j = 0; j < order.size(); ++j)
    order[j] = static_cast<std::int64_t>(j);
  std::shuffle(order.begin(), order.end(), std::mt19937{99});
  for (std::int64_t j = 0; j < paths.n_paths; ++j)
    std::copy_n(paths.choices.data() + order[static_cast<std::size_t>(j)] *
                                           paths.length,
                paths.length, shuffled.choices.data() + j * paths.length);
  const EstimateResult a = fit_mle(paths);
  const EstimateResult b = fit_mle(shuffled);
  CHECK(a.alpha == b.alpha);
  CHECK(a.c == b.c);
}

TEST_CASE("symmetrized and unfolded wlse agree") {
  for (Seed seed : {4ULL, 12ULL, 51ULL}) {
    const PathSet paths = simulate_paths({1.1, 1.3}, 50, 50, seed);
    const EstimateResult plain = fit_wlse(paths, WeightMode::Occupancy, false);
    const EstimateResult folded = fit_wlse(paths, WeightMode::Occupancy, true);
    CHECK(folded.symmetrized);
    CHECK(plain.alpha == doctest::Approx(folded.alpha).epsilon(1e-6));
    CHECK(plain.c == doctest::Approx(folded.c).epsilon(1e-6));
  }
}

TEST_CASE("efficient weights skip degenerate cells") {
  const PathSet paths = simulate_paths({1.0, 1.0}, 10, 30, 8);
  const EstimateResult res = fit_wlse(paths, WeightMode::Efficient, false);
  CHECK(res.skipped_cells > 0);  // small N always has pure cells
  CHECK(std::isfinite(res.objective));
}

TEST_CASE("profile through the joint optimum reproduces it") {
  const PathSet paths = simulate_paths({1.5, 2.0}, 50, 60, 13);
  const EstimateResult joint = fit_mle(paths);
  const EstimateResult prof = profile_alpha(paths, joint.c, Method::Mle);
  CHECK(prof.alpha == doctest::Approx(joint.alpha).epsilon(1e-6));
  CHECK(prof.c == joint.c);
}

TEST_CASE("statistical recovery within 3 sigma bands") {
  const PathSet paths = simulate_paths({1.0, 1.0}, 50, 100, 2024);
  const EstimateResult mle = fit_mle(paths);
  CHECK(std::fabs(mle.alpha - 1.0) <= 3.0 * 0.0434);
  CHECK(std::fabs(mle.c - 1.0) <= 3.0 * 0.252);
  const EstimateResult wlse = fit_wlse(paths, WeightMode::Occupancy, false);
  CHECK(std::fabs(wlse.alpha - 1.0) <= 3.0 * 0.0591);
}

TEST_CASE("objective never exceeds the grid start values") {
  const PathSet paths = simulate_paths({0.8, 0.5}, 25, 30, 6);
  int skipped = 0;
  const std::vector<FitCell> cells =
      build_cells(cell_stats(paths), WeightMode::Occupancy, false, &skipped);
  const EstimateResult res = minimize_cells(cells, ContrastKind::Kullback, {},
                                            {});
  for (double a : {0.1, 1.0, 10.0})
    for (double c : {0.1, 1.0, 100.0})
      CHECK(res.objective <=
            contrast_value(cells, ContrastKind::Kullback, {a, c}) + 1e-12);
}

TEST_CASE("invalid box rejected") {
  ParamBox bad;
  bad.alpha_lo = 2.0;
  bad.alpha_hi = 1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}
