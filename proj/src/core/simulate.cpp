#include "simulate.hpp"

#include <cmath>
#include <vector>

#include "parallel.hpp"
#include "rng.hpp"

namespace rrw {

PathSet simulate_paths(const ModelParams &params, std::int64_t n_paths,
                       std::int64_t length, Seed seed) {
  if (n_paths < 1 || length < 1)
    throw Error(ErrorCode::InvalidArgument,
                "simulate_paths requires n_paths >= 1 and length >= 1");

  // log(c+m) for m = 0..length; one exp per draw afterwards.
  std::vector<double> logc(static_cast<std::size_t>(length) + 1);
  for (std::int64_t m = 0; m <= length; ++m)
    logc[static_cast<std::size_t>(m)] = std::log(params.c + static_cast<double>(m));

  PathSet paths;
  paths.n_paths = n_paths;
  paths.length = length;
  paths.choices.assign(static_cast<std::size_t>(n_paths * length), 0);

  const double alpha = params.alpha;
  parallel_for(n_paths, [&](std::int64_t j) {
    CounterRng rng(seed, static_cast<std::uint64_t>(j));
    std::int64_t z = 0;
    std::uint8_t *row = paths.choices.data() + j * length;
    for (std::int64_t k = 0; k < length; ++k) {
      const double delta =
          alpha * (logc[static_cast<std::size_t>(k - z)] -
                   logc[static_cast<std::size_t>(z)]);
      const double f = delta > 700.0 ? std::exp(-delta)
                                     : 1.0 / (1.0 + std::exp(delta));
      const std::uint8_t x = rng.next_bernoulli(f) ? 1 : 0;
      row[k] = x;
      z += x;
    }
  });
  return paths;
}

OccupancyDistribution empirical_occupancy(const PathSet &paths) {
  if (paths.n_paths < 1 || paths.length < 1)
    throw Error(ErrorCode::EmptyData, "empirical_occupancy needs paths");
  const std::size_t n = static_cast<std::size_t>(paths.length);
  Triangular<std::int64_t> counts(n, 0);
  for (std::int64_t j = 0; j < paths.n_paths; ++j) {
    std::int64_t z = 0;
    for (std::int64_t k = 0; k < paths.length; ++k) {
      counts(static_cast<std::size_t>(k), static_cast<std::size_t>(z))++;
      z += paths.at(j, k);
    }
  }
  OccupancyDistribution dist;
  dist.rows = Triangular<double>(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i <= k; ++i)
      dist.rows(k, i) = static_cast<double>(counts(k, i)) /
                        static_cast<double>(paths.n_paths);
  return dist;
}

}  // namespace rrw
