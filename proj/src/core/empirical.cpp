#include "empirical.hpp"

namespace rrw {

CellStats cell_stats(const PathSet &paths) {
  if (paths.n_paths < 1 || paths.length < 1)
    throw Error(ErrorCode::EmptyData, "cell_stats needs a non-empty path set");
  CellStats stats(paths.length, paths.n_paths);
  for (std::int64_t j = 0; j < paths.n_paths; ++j) {
    std::int64_t z = 0;
    for (std::int64_t k = 0; k < paths.length; ++k) {
      const bool one = paths.at(j, k) != 0;
      stats.record(k, z, one);
      z += one ? 1 : 0;
    }
  }
  return stats;
}

std::int64_t discarded_count(const PathSet &paths, std::int64_t path_index) {
  if (path_index < 0 || path_index >= paths.n_paths)
    throw Error(ErrorCode::InvalidArgument, "path index out of range");
  std::int64_t z = 0;
  for (std::int64_t k = 0; k < paths.length; ++k) z += paths.at(path_index, k);
  return std::min(z, paths.length - z);
}

}  // namespace rrw
