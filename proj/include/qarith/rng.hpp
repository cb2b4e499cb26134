#pragma once

#include <cstdint>

namespace qarith {

// SplitMix64: the stream-splitting hash used to derive per-run seeds.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** 1.0 (Blackman/Vigna), seeded through SplitMix64.
// One instance per simulation run; the seed is recorded in reports so every
// randomized result is reproducible across processes.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    // Deterministically derives an independent stream, e.g. one per verify run.
    static Rng child(uint64_t seed, uint64_t stream_index) {
        uint64_t sm = seed ^ (0xa0761d6478bd642fULL * (stream_index + 1));
        return Rng(splitmix64(sm));
    }

    uint64_t next_u64() {
        auto rotl = [](uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
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

    bool coin() { return (next_u64() >> 63) != 0; }

    // Uniform double in [0,1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    uint64_t state_[4];
};

}  // namespace qarith
