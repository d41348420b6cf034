#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace moran {

// SplitMix64 finalizer (Steele, Lea & Flood 2014; same constants as
// MurmurHash3's fmix64 variant used by splitmix64.c).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Derives the base of an independent substream from a parent base and an
// index. Nested application gives substream(seed, i, j, ...) semantics;
// the nonlinear mix keeps nearby seeds or indices from producing shifted
// copies of the same stream.
constexpr std::uint64_t substream(std::uint64_t base,
                                  std::uint64_t index) noexcept {
  return mix64(base + kGolden * (index + 1));
}

constexpr std::uint64_t substream(std::uint64_t base, std::uint64_t i,
                                  std::uint64_t j) noexcept {
  return substream(substream(base, i), j);
}

// Top-level purpose indices. Different kinds of draws must not share a
// stream when handed the same user seed.
namespace stream {
constexpr std::uint64_t weights = 0;      // off-diagonal weight draws
constexpr std::uint64_t permutation = 1;  // one substream per replicate
constexpr std::uint64_t threshold = 2;    // one substream per grid point
}  // namespace stream

// Counter-based SplitMix64 stream: draw k of stream b is
// mix64(b + (k+1)*kGolden), so every draw is addressable by (base, k) and
// identical bases replay identical streams on any platform.
//
// Construct from substream(...) output rather than a raw user seed; the
// derivation step is what decorrelates adjacent seeds.
class Splitmix64 {
 public:
  explicit constexpr Splitmix64(std::uint64_t base) noexcept : state_(base) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += kGolden;
    return mix64(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * next_double();
  }

  // Uniform integer in [0, bound) via 128-bit multiply-high.
  std::uint64_t below(std::uint64_t bound) noexcept {
    using u128 = unsigned __int128;
    return static_cast<std::uint64_t>(
        (static_cast<u128>(next_u64()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Fisher-Yates shuffle driven by the given stream.
template <typename T>
void shuffle(std::span<T> v, Splitmix64& g) noexcept {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[g.below(i)]);
  }
}

}  // namespace moran
