#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

namespace hbee {

// splitmix64 finalizer; the building block for all stream derivation.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Deterministic PRNG with domain-separated substreams.
//
// One root seed per run; every consumer derives its own stream from
// (seed, tag) and optionally (a, b) indices such as (agent_id, tick).
// The generator itself is splitmix64, which is portable and
// byte-for-byte reproducible across platforms. Standard-library
// distributions are deliberately not used: their output is
// implementation-defined and would break the determinism contract.
class Rng {
public:
    explicit Rng(std::uint64_t state) : state_(state) {}

    static Rng from_seed(std::uint64_t seed, std::string_view tag) {
        return Rng(mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^ fnv1a64(tag)));
    }

    // Derived stream; does not advance this stream.
    Rng substream(std::string_view tag) const {
        return Rng(mix64(state_ ^ fnv1a64(tag)));
    }
    Rng substream(std::uint64_t a, std::uint64_t b = 0) const {
        return Rng(mix64(mix64(state_ ^ (a + 0x9e3779b97f4a7c15ULL)) ^ b));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        if (p <= 0.0) { next_unit(); return false; } // keep stream position stable
        if (p >= 1.0) { next_unit(); return true; }
        return next_unit() < p;
    }

    // Unbiased integer in [0, n) via rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do { v = next_u64(); } while (v >= limit);
        return v % n;
    }

    // Geometric length with the given mean, truncated to [lo, hi].
    int geometric_trunc(double mean, int lo, int hi) {
        if (mean <= 1.0) return lo;
        const double p = 1.0 / mean;
        const double u = next_unit();
        const int k = 1 + static_cast<int>(std::floor(std::log1p(-u) / std::log1p(-p)));
        return k < lo ? lo : (k > hi ? hi : k);
    }

    // Index draw proportional to non-negative weights.
    std::size_t categorical(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        if (!(total > 0.0)) throw std::invalid_argument("Rng::categorical: zero total weight");
        double x = next_unit() * total;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            x -= weights[i];
            if (x < 0.0) return i;
        }
        return weights.size() - 1;
    }

    // Standard normal via Box-Muller (one value per call, no caching).
    double normal() {
        double u1 = next_unit();
        double u2 = next_unit();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::uint64_t state_;
};

} // namespace hbee
