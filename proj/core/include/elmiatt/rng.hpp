#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace elmiatt {

// Deterministic random helpers on top of std::mt19937_64.
//
// The engine's output sequence is fixed by the C++ standard, and every
// mapping below is spelled out explicitly (no std::*_distribution, whose
// algorithms vary between standard libraries). Identical seeds therefore
// produce identical streams on every platform, which is what makes golden
// scenario files and seeded tests portable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Uniform integer in [0, n). Multiply-shift reduction; slight bias is
    // irrelevant here, determinism is not.
    std::size_t below(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    // Fisher-Yates permutation of {0, ..., n-1}.
    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::size_t j = i + below(n - i);
            std::swap(idx[i], idx[j]);
        }
        return idx;
    }

    // k distinct indices from {0, ..., n-1} (partial Fisher-Yates, draw order).
    std::vector<std::size_t> sample(std::size_t n, std::size_t k) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        if (k > n) k = n;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + below(n - i);
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        return idx;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace elmiatt
