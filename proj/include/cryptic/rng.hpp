#pragma once

// Deterministic random primitives.
//
// std::mt19937_64 produces a standard-specified stream, but
// std::uniform_int_distribution and std::shuffle are implementation
// defined, so every bounded draw and shuffle is pinned down here to keep
// seeded runs byte-identical across compilers.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace cryptic {

/// Mixing function used to derive independent per-item seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for item `index` of a run seeded with `global_seed`. Items can be
/// generated independently (and in parallel) without sharing a stream.
inline std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t index) {
    return splitmix64(global_seed ^ splitmix64(index));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform draw in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
        // Largest multiple of n that fits in 64 bits.
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    bool coin() { return (eng_() & 1u) != 0; }

    /// In-place Fisher-Yates shuffle with a pinned visit order. Works on
    /// any random-access sequence (vector, string).
    template <typename Seq>
    void shuffle(Seq& v) {
        if (v.size() < 2) return;
        for (std::size_t i = v.size() - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i + 1));
            using std::swap;
            swap(v[i], v[j]);
        }
    }

    /// k items drawn without replacement; order is the draw order.
    template <typename T>
    std::vector<T> sample(const std::vector<T>& pool, std::size_t k) {
        if (k > pool.size())
            throw std::invalid_argument("Rng::sample: k exceeds pool size");
        std::vector<T> work = pool;
        std::vector<T> out;
        out.reserve(k);
        // Partial Fisher-Yates from the front.
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(below(work.size() - i));
            using std::swap;
            swap(work[i], work[j]);
            out.push_back(work[i]);
        }
        return out;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace cryptic
