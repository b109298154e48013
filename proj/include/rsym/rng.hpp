#pragma once

#include <cstdint>

namespace rsym {

// splitmix64. One instance per trial, seeded by derive(root, trial_index),
// keeps batch runs reproducible regardless of how trials are scheduled.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1), 53-bit mantissa
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive bounds
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    return lo + next() % (hi - lo + 1);
  }

  static std::uint64_t derive(std::uint64_t root, std::uint64_t index) {
    SplitMix64 g(root ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return g.next();
  }

 private:
  std::uint64_t state_;
};

}  // namespace rsym
