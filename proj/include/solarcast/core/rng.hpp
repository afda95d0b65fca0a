#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string_view>

namespace solarcast {

// Deterministic RNG wrapper. All stochastic pieces of the pipeline
// (initialisation, dropout masks, batch shuffling, synthetic data) draw from
// an Rng seeded explicitly, so a fixed seed fixes every downstream value on
// a given platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }

    // Standard normal.
    double normal() {
        return std::normal_distribution<double>(0.0, 1.0)(gen_);
    }

    // Uniform integer in [0, n).
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_);
    }

    template <class It>
    void shuffle(It first, It last) {
        std::shuffle(first, last, gen_);
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

// FNV-1a 64-bit hash, used for sub-seed derivation and artifact hashing.
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
    return fnv1a64(s.data(), s.size(), h);
}

// Derives an independent sub-seed from a master seed, a purpose tag and an
// index. Keeps parallel model trainings and generator streams decoupled.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t index = 0) {
    std::uint64_t h = fnv1a64(tag);
    h = fnv1a64(&master, sizeof(master), h);
    h = fnv1a64(&index, sizeof(index), h);
    // splitmix64 finaliser to spread the bits
    h += 0x9e3779b97f4a7c15ULL;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    return h ^ (h >> 31);
}

} // namespace solarcast
