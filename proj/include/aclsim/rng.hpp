#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <string_view>

namespace aclsim {

// Algorithm identifier written into run metadata. Streams are derived from a
// master seed with splitmix64 mixing; draws come from mt19937_64 seeded with
// the derived value. Reproducibility is guaranteed within one build.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64/splitmix64-streams-v1";

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Splits a master seed into an independent stream identified by a path of
// integers, e.g. {kStreamNetgen, conditionIndex}.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t p : path) h = splitmix64(h ^ splitmix64(p));
    return h;
}

// Stream tags used by the harness; values are part of the reproducibility
// contract and must not be renumbered.
enum StreamTag : std::uint64_t {
    kStreamNetgen = 1,
    kStreamTrial = 2,
    kStreamSeedSelection = 3,
    kStreamCascade = 4,
};

class Rng {
public:
    Rng() : engine_(0) {}
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits; bit-stable across platforms.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n), n >= 1. Rejection-free modulo bias is not a
    // concern at simulation scale, but we debias anyway.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Uniform in [0, 1) keyed by (key, a, b); used for per-attempt cascade draws.
inline double keyed_uniform(std::uint64_t key, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t h = splitmix64(splitmix64(key ^ splitmix64(a)) ^ splitmix64(~b));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace aclsim
