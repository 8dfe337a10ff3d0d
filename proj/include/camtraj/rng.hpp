#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace camtraj {

// Deterministic counter-based generator (splitmix64). Every draw is a pure
// function of (seed, counter), so corpora are reproducible across platforms
// and independent of call-site reordering within a stream.
class Rng {
public:
    explicit Rng(uint64_t seed) : seed_(seed) {}

    // Independent substream, e.g. one per dataset group.
    Rng fork(uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream + 0x9e3779b97f4a7c15ull))); }

    uint64_t next_u64() { return mix(seed_ + (++counter_) * 0x9e3779b97f4a7c15ull); }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [0, n).
    uint64_t next_below(uint64_t n) { return next_u64() % n; }

    // Index drawn from unnormalized weights.
    size_t pick_weighted(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double x = next_double() * total;
        for (size_t i = 0; i + 1 < weights.size(); ++i) {
            x -= weights[i];
            if (x < 0.0) return i;
        }
        return weights.empty() ? 0 : weights.size() - 1;
    }

    // Standard normal via Box-Muller on two counter draws.
    double next_gaussian() {
        double u1 = 1.0 - next_double();  // (0, 1]
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    uint64_t seed_ = 0;
    uint64_t counter_ = 0;
};

}  // namespace camtraj
