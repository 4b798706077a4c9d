// SPDX-License-Identifier: Apache-2.0
#ifndef FHEGEN_RNG_HPP
#define FHEGEN_RNG_HPP

#include <cstdint>

namespace fhegen {

// xoshiro256** seeded through splitmix64. The generator is pinned by
// algorithm identity so that reports are byte-identical across platforms;
// std::uniform_int_distribution is implementation-defined and must not be
// used anywhere in the project.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "xoshiro256starstar";

  explicit Rng(uint64_t seed) {
    uint64_t z = seed;
    for (auto& word : state_) {
      z += 0x9e3779b97f4a7c15ULL;
      uint64_t x = z;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      word = x ^ (x >> 31);
    }
  }

  uint64_t next() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform draw from [0, bound) via the multiply-shift reduction.
  uint64_t below(uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Uniform draw from [lo, hi] inclusive.
  uint64_t range(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }

  // Derives an independent stream, used to give every scenario its own
  // generator regardless of sweep order.
  Rng fork(uint64_t tag) {
    return Rng(next() ^ (tag * 0x9e3779b97f4a7c15ULL));
  }

 private:
  static uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  uint64_t state_[4];
};

}  // namespace fhegen

#endif  // FHEGEN_RNG_HPP
