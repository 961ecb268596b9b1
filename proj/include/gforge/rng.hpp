#pragma once

#include <cstdint>

namespace gforge {

// Counter-based generator: every draw is a pure function of (seed, stream,
// index), so shards can be evaluated in any order or in parallel and still
// produce identical streams.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t z = seed;
    z ^= 0x9e3779b97f4a7c15ull + stream * 0xbf58476d1ce4e5b9ull;
    z = splitmix(z);
    z ^= splitmix(index + 0x94d049bb133111ebull);
    return splitmix(z);
  }

  std::uint64_t next_u64() { return mix(seed_, stream_, index_++); }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  std::uint64_t index() const { return index_; }
  void seek(std::uint64_t index) { index_ = index; }

 private:
  static std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t index_ = 0;
};

}  // namespace gforge
