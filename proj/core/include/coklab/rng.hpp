#pragma once

#include <cstdint>

namespace coklab {

/// SplitMix64: counter-based stream with a fixed increment; cheap to seed and
/// statistically solid for simulation use.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Unbiased uniform draw in [0, n) by rejection (Lemire's method).
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t x = next();
            __uint128_t m = static_cast<__uint128_t>(x) * n;
            if (static_cast<uint64_t>(m) >= threshold) return static_cast<uint64_t>(m >> 64);
        }
    }

private:
    uint64_t state_;
};

/// Stream for worker chunk c: hash (master seed, c) into a seed, so results
/// are independent of how chunks are distributed over workers.
inline SplitMix64 chunk_stream(uint64_t master_seed, uint64_t chunk) {
    SplitMix64 mixer(master_seed ^ (chunk * 0xD1B54A32D192ED03ull + 0x8BB84B93962EACC9ull));
    uint64_t s = mixer.next();
    return SplitMix64(s ^ mixer.next());
}

/// FNV-1a over a byte string; used for config hashes.
inline uint64_t fnv1a(const void* data, std::size_t len) {
    const unsigned char* bytes = static_cast<const unsigned char*>(data);
    uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace coklab
