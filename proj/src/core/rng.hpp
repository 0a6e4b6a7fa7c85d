// Counter-based random numbers. Each logical stream is keyed by
// (seed, stream id), so independent streams can be generated in any order,
// in parallel, with bit-identical results.
#pragma once

#include <cstdint>

namespace rrw {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed ^ mix64(stream ^ 0x6a09e667f3bcc909ULL))) {}

  std::uint64_t next_u64() {
    return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
  }

  // uniform in [0, 1) with 53 random bits
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool next_bernoulli(double p) { return next_uniform() < p; }

  // uniform integer in [0, bound), bound > 0
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(next_uniform() *
                                      static_cast<double>(bound)) %
           bound;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Derive an independent sub-seed, e.g. one per replicate.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag,
                                 std::uint64_t index) {
  return mix64(seed ^ mix64(tag) ^ mix64(index * 0xd1b54a32d192ed03ULL));
}

}  // namespace rrw
