#ifndef QI_RNG_HPP
#define QI_RNG_HPP

#include <cstdint>

namespace qi {

// Fixed RNG contract: every random draw in this library comes from the
// splitmix64 sequence below. The round-r state of a simulation is derived
// as mix64(seed, stream, r), so any round can be generated independently
// of the others; parallel execution partitions rounds without changing
// any draw. The constants are Sebastiano Vigna's splitmix64 ones and are
// frozen across versions.

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent generator state from (seed, stream, counter).
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t s = seed;
    s ^= 0xA0761D6478BD642FULL + stream * 0xE7037ED1A0B428DBULL;
    s ^= splitmix64_next(s) + counter * 0x8EBC6AF09C88C6E3ULL;
    splitmix64_next(s);
    return s;
}

/// Minimal counter-based generator; value semantics, trivially copyable.
class Rng {
  public:
    explicit Rng(std::uint64_t state) : state_(state) {}
    static Rng for_round(std::uint64_t seed, std::uint64_t stream, std::uint64_t round) {
        return Rng(mix64(seed, stream, round));
    }

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform bit.
    bool next_bit() { return (next_u64() >> 63) != 0; }

  private:
    std::uint64_t state_;
};

} // namespace qi

#endif
