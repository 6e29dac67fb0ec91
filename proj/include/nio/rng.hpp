#ifndef NIO_RNG_HPP
#define NIO_RNG_HPP

#include <cstdint>

namespace nio {

/// SplitMix64 generator (Vigna). Tiny state, splittable by construction:
/// independent streams are derived by hashing (seed, stream index), so orbit
/// results do not depend on how orbits are scheduled across threads.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0,1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [-1,1).
  double uniform_symmetric() { return 2.0 * uniform() - 1.0; }

  /// Generator for stream `index` under the given master seed. The stream
  /// seed is produced by running the master generator forward, so distinct
  /// indices get well-separated states.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 base(seed);
    std::uint64_t s = base.next() ^ (index * 0x9E3779B97F4A7C15ULL);
    SplitMix64 mix(s);
    return SplitMix64(mix.next());
  }

private:
  std::uint64_t state_;
};

}  // namespace nio

#endif  // NIO_RNG_HPP
