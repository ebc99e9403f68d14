#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sectortag {

/// Deterministic 64-bit generator (splitmix64). All randomness in the toolkit
/// flows through explicitly seeded instances so runs reproduce exactly across
/// platforms and thread counts; the standard <random> distributions are
/// implementation-defined and are not used.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n); n > 0. Modulo bias is negligible for the
    /// small ranges used here.
    uint64_t next_below(uint64_t n) { return next_u64() % n; }

    /// Uniform real in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi] inclusive.
    int64_t next_range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(next_below(static_cast<uint64_t>(hi - lo + 1)));
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t state_;
};

/// Mixes a path of integers into a base seed. Used to derive independent
/// per-sector / per-fold / per-tree streams from one master seed.
inline uint64_t derive_seed(uint64_t base, std::initializer_list<uint64_t> path) {
    uint64_t h = base ^ 0x2545f4914f6cdd1dull;
    for (uint64_t p : path) {
        h ^= p + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        Rng mix(h);
        h = mix.next_u64();
    }
    return h;
}

} // namespace sectortag
