#pragma once

#include <cstdint>

namespace domany {

// 64-bit finalizer used both as the splitmix64 output function and as the
// stream-derivation mixer. Bijective on uint64_t.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64: tiny, fast, and splittable.  Good enough statistically for
// Bernoulli site filling; every stream in the project is an instance of
// this generator with a derived seed.
class SplitMix64 {
  public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

// Stream derivation, documented contract:
//   replicate k of a run seeded with `master` draws from
//   SplitMix64(mix64(master + kGolden * (k + 1))).
// Streams for distinct k are independent for any fixed master seed, and the
// assignment does not depend on worker count or execution order.
inline constexpr std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t k) {
    return mix64(master + kGolden * (k + 1));
}

inline SplitMix64 replicate_stream(std::uint64_t master, std::uint64_t k) {
    return SplitMix64(derive_stream_seed(master, k));
}

// Derives a sub-master seed for a named context (model, time index, box
// size, ...) so that distinct measurement runs use independent randomness
// while a p-sweep inside one run can keep shared uniforms per replicate.
inline constexpr std::uint64_t derive_context_seed(std::uint64_t master, std::uint64_t tag) {
    return mix64(master ^ mix64(tag + kGolden));
}

} // namespace domany
