#pragma once

#include <cstdint>
#include <random>

namespace plc {

// splitmix64 step; used to derive independent per-sample seeds from a master
// seed and a counter so that sample streams are stable under prefix extension.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
    return splitmix64(splitmix64(master) ^ splitmix64(counter + 0x632be59bd9b4e019ULL));
}

// Thin deterministic wrapper around mt19937_64. The bounded-draw and
// unit-double helpers avoid std::uniform_*_distribution so results are
// identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace plc
