#pragma once

#include <cstdint>

#include "core/common.hpp"

namespace lapbox {

/* splitmix64: tiny, seedable, reproducible across platforms.  Used for every
   randomized fixture so runs are a pure function of the configured seed. */
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /* Uniform in [0,1). */
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /* Uniform in [-1,1). */
  double symmetric() { return 2.0 * uniform() - 1.0; }

  cplx complex_symmetric() {
    const double re = symmetric();
    return {re, symmetric()};
  }
};

/* Stable per-trial seed: mix a base seed with a stream index. */
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  SplitMix64 g(base ^ (0x632be59bd9b4e019ULL * (stream + 1)));
  return g.next();
}

}  // namespace lapbox
