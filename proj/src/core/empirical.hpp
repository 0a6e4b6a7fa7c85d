// Per-cell empirical statistics of a PathSet: occupancy frequencies a_N,
// joint frequencies b_N, conditional frequencies p_N = b_N / a_N and the
// symmetrized p~_N which pools each cell with its mirror (k-i, i).
#pragma once

#include <cstdint>

#include "model.hpp"
#include "triangular.hpp"

namespace rrw {

class CellStats {
 public:
  CellStats(std::int64_t n, std::int64_t n_paths)
      : n_(n), n_paths_(n_paths),
        visits_(static_cast<std::size_t>(n), 0),
        ones_(static_cast<std::size_t>(n), 0) {}

  std::int64_t length() const { return n_; }
  std::int64_t paths() const { return n_paths_; }

  // integer counts; frequencies are counts / N
  std::int64_t visit_count(std::int64_t k, std::int64_t i) const {
    return visits_(static_cast<std::size_t>(k), static_cast<std::size_t>(i));
  }
  std::int64_t one_count(std::int64_t k, std::int64_t i) const {
    return ones_(static_cast<std::size_t>(k), static_cast<std::size_t>(i));
  }

  double a(std::int64_t k, std::int64_t i) const {
    return static_cast<double>(visit_count(k, i)) /
           static_cast<double>(n_paths_);
  }
  double b(std::int64_t k, std::int64_t i) const {
    return static_cast<double>(one_count(k, i)) /
           static_cast<double>(n_paths_);
  }
  // 0/0 -> 0 convention
  double p(std::int64_t k, std::int64_t i) const {
    const std::int64_t v = visit_count(k, i);
    return v == 0 ? 0.0 : static_cast<double>(one_count(k, i)) /
                              static_cast<double>(v);
  }
  double q(std::int64_t k, std::int64_t i) const { return 1.0 - p(k, i); }

  // (b(i,k-i) + a(k-i,i) - b(k-i,i)) / (a(i,k-i) + a(k-i,i)), 0/0 -> 0
  double ptilde(std::int64_t k, std::int64_t i) const {
    const std::int64_t denom = visit_count(k, i) + visit_count(k, k - i);
    if (denom == 0) return 0.0;
    const std::int64_t num = one_count(k, i) + visit_count(k, k - i) -
                             one_count(k, k - i);
    return static_cast<double>(num) / static_cast<double>(denom);
  }

  void record(std::int64_t k, std::int64_t z, bool drew_one) {
    visits_(static_cast<std::size_t>(k), static_cast<std::size_t>(z))++;
    if (drew_one)
      ones_(static_cast<std::size_t>(k), static_cast<std::size_t>(z))++;
  }

 private:
  std::int64_t n_;
  std::int64_t n_paths_;
  Triangular<std::int64_t> visits_;  // N * a_N
  Triangular<std::int64_t> ones_;    // N * b_N
};

CellStats cell_stats(const PathSet &paths);

// Q_n = min(Z_n, n - Z_n) for one path of the set.
std::int64_t discarded_count(const PathSet &paths, std::int64_t path_index);

}  // namespace rrw
