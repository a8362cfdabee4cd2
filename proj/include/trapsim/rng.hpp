#pragma once

#include <cstdint>
#include <cmath>

// Splittable counter-based seeding on top of xoshiro256++.
//
// Every random quantity in the library is drawn from a stream derived from
// (master seed, stream id, replica id) through splitmix64, so independent
// landscapes, dynamics replicas and limit-path replicas never share state
// and runs are bit-reproducible.

namespace trapsim {

struct SeedRecord {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;
  std::uint64_t replica = 0;
};

// Purpose tags for derived streams.
namespace streams {
inline constexpr std::uint64_t landscape = 1;
inline constexpr std::uint64_t dynamics = 2;
inline constexpr std::uint64_t limit_path = 3;
inline constexpr std::uint64_t prm = 4;
inline constexpr std::uint64_t delay = 5;
}  // namespace streams

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += UINT64_C(0x9E3779B97F4A7C15));
  z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
  z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
  return z ^ (z >> 31);
}

// Collapses a (master, stream, replica) triple into one well-mixed word.
inline std::uint64_t collapse_seed(const SeedRecord& seed) {
  std::uint64_t s = seed.master;
  splitmix64_next(s);
  s ^= seed.stream * UINT64_C(0xBF58476D1CE4E5B9);
  splitmix64_next(s);
  s ^= seed.replica * UINT64_C(0x94D049BB133111EB);
  splitmix64_next(s);
  return s;
}

// Child seed in the derivation tree: the parent triple becomes the new
// master, so nested (stream, replica) levels never collide.
inline SeedRecord child_seed(const SeedRecord& parent, std::uint64_t stream,
                             std::uint64_t replica) {
  return SeedRecord{collapse_seed(parent), stream, replica};
}

// xoshiro256++ (Blackman/Vigna, public domain reference implementation).
class Xoshiro256pp {
 public:
  Xoshiro256pp() : Xoshiro256pp(SeedRecord{}) {}

  explicit Xoshiro256pp(SeedRecord seed) {
    std::uint64_t s = collapse_seed(seed);
    for (auto& word : state_) word = splitmix64_next(s);
  }

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return UINT64_C(0xFFFFFFFFFFFFFFFF); }

  result_type operator()() { return next(); }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1), 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0,1); safe under log() and negative powers.
  double uniform_open01() {
    return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
  }

  // Standard (mean one) exponential.
  double exponential() { return -std::log1p(-uniform01()); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

using Rng = Xoshiro256pp;

inline Rng make_rng(std::uint64_t master, std::uint64_t stream,
                    std::uint64_t replica = 0) {
  return Rng(SeedRecord{master, stream, replica});
}

}  // namespace trapsim
