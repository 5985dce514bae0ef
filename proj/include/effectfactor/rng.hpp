#pragma once

#include <cstdint>

namespace efx {

// Deterministic across platforms; std::uniform_int_distribution is not,
// so sampled law checks roll their own bounded draw.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    // splitmix64
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, n), n > 0. Lemire multiply-shift.
  int64_t next_below(int64_t n) {
    return static_cast<int64_t>(
        (static_cast<unsigned __int128>(next()) * static_cast<uint64_t>(n)) >> 64);
  }

  /// Independent stream for case index i under a run seed.
  static Rng for_case(uint64_t seed, uint64_t i) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
    r.next();
    return r;
  }

private:
  uint64_t state_;
};

} // namespace efx
