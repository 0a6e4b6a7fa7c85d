// Triangular array over cells (k, i) with 0 <= i <= k <= n-1, stored as a
// contiguous row-major buffer with offset k(k+1)/2 + i.
#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace rrw {

template <typename T>
class Triangular {
 public:
  Triangular() = default;
  explicit Triangular(std::size_t n, T init = T{})
      : n_(n), data_(n * (n + 1) / 2, init) {}

  std::size_t rows() const { return n_; }
  std::size_t size() const { return data_.size(); }

  T &operator()(std::size_t k, std::size_t i) {
    assert(k < n_ && i <= k);
    return data_[k * (k + 1) / 2 + i];
  }
  const T &operator()(std::size_t k, std::size_t i) const {
    assert(k < n_ && i <= k);
    return data_[k * (k + 1) / 2 + i];
  }

  const std::vector<T> &data() const { return data_; }
  std::vector<T> &data() { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

}  // namespace rrw
