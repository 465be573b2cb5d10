#pragma once
#include <cstdint>

namespace conelip {

// splitmix64 (Steele/Lea/Flood mixing constants). Every randomized suite in
// this repo derives its instances from this generator, so an independent
// implementation can reproduce them from (seed, suite, case) alone.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1) with 53 random bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // inclusive on both ends
    int randint(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool coin() { return (next() & 1u) != 0; }

    // dyadic value k/64 in [lo, hi]; exact in doubles and rationals alike
    double dyadic(double lo, double hi) {
        const int steps = static_cast<int>((hi - lo) * 64.0);
        return lo + static_cast<double>(randint(0, steps)) / 64.0;
    }
};

// FNV-1a, used for input digests in reports.
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 0xCBF29CE484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Per-case stream: seed -> suite tag -> case index, each step one splitmix hop.
inline SplitMix64 case_rng(std::uint64_t seed, std::uint64_t suite_tag, std::uint64_t case_index) {
    SplitMix64 a(seed ^ suite_tag);
    SplitMix64 b(a.next() + case_index);
    return SplitMix64(b.next());
}

}  // namespace conelip
