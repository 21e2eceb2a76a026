#pragma once

// Project-wide random number generation.
//
// Every path is driven by xoshiro256** whose 256-bit state is filled from a
// splitmix64 stream.  The per-path seed is derived from the experiment's
// master seed and the path index with the splitmix64 finalizer, so any path
// can be regenerated in isolation and parallel runs stay reproducible.

#include <array>
#include <cstdint>
#include <string_view>

namespace hawkins {

inline constexpr std::string_view kRngAlgorithm =
    "xoshiro256** seeded by splitmix64; path_seed = splitmix64_mix(splitmix64_mix(master) + index); v2";

// splitmix64 output finalizer (Stafford variant 13).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// master is hashed first so that nearby masters do not share paths
constexpr std::uint64_t path_seed(std::uint64_t master_seed, std::uint64_t path_index) {
  return splitmix64_mix(splitmix64_mix(master_seed) + path_index);
}

// Independent sub-stream of a master seed, e.g. for a second sampler.
constexpr std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream_id) {
  return splitmix64_mix(master_seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1));
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}
  constexpr std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64_mix(state_);
  }

 private:
  std::uint64_t state_;
};

class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256StarStar(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& s : s_) s = sm.next();
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  constexpr result_type operator()() { return next(); }

  constexpr std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  constexpr double uniform_open_zero() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace hawkins
