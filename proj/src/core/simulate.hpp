// Generation of i.i.d. reinforced random walk paths with reproducible,
// order-independent seeding (one counter-based stream per path).
#pragma once

#include <cstdint>

#include "model.hpp"

namespace rrw {

using Seed = std::uint64_t;

PathSet simulate_paths(const ModelParams &params, std::int64_t n_paths,
                       std::int64_t length, Seed seed);

// Fraction of paths with Z_k = i, per cell. Rows sum to one exactly.
OccupancyDistribution empirical_occupancy(const PathSet &paths);

}  // namespace rrw
