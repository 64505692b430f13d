#pragma once

#include <cstdint>

namespace skirent {

/// SplitMix64 generator (Steele/Lea/Burton finalizer over a Weyl sequence).
/// Pinned as the project's generator so published numbers are reproducible
/// bit for bit across platforms; std:: distributions are avoided for the
/// same reason.
class Splitmix64 {
 public:
  explicit Splitmix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Counter-based substream derivation: stream k of a run seeded with `seed`
/// starts from the SplitMix64 finalizer applied to seed + (k+1)*phi64. Each
/// trial of a simulation owns one substream, so results cannot depend on
/// scheduling or thread count.
inline Splitmix64 substream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return Splitmix64(z ^ (z >> 31));
}

}  // namespace skirent
