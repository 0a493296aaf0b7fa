#pragma once

#include <cstdint>
#include <random>

namespace uidim {

/// Default master seed used when the caller supplies none.
inline constexpr std::uint64_t kDefaultSeed = 20161219;

/// One step of SplitMix64 (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of stream `index` under `master`: the (index+1)-th output of a
/// SplitMix64 sequence started at `master`. Streams depend only on
/// (master, index), so trials can be scheduled on any number of threads.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master + index * 0x9e3779b97f4a7c15ULL);
}

/// Generator used for every random draw. std::mt19937_64's output sequence is
/// fixed by the standard, so draws are identical across platforms.
using Rng = std::mt19937_64;

inline Rng make_stream(std::uint64_t master, std::uint64_t index) {
  return Rng(stream_seed(master, index));
}

/// Uniform double in [0, 1) from the top 53 bits of one draw. Used instead of
/// std::uniform_real_distribution, whose algorithm is implementation-defined.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// True with probability p; always true for p >= 1.
inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

}  // namespace uidim
