#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace mdg {

/// Seeded random source used by every stochastic operation in the library.
///
/// The engine is std::mt19937_64 (its output sequence is pinned by the
/// standard), and all distributions are implemented on top of raw 64-bit
/// draws, so identical (seed, parameters) give identical results on every
/// platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 bits of precision.
    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [lo, hi], both inclusive. Unbiased (rejection).
    int uniform_int(int lo, int hi) {
        if (lo > hi)
            throw std::invalid_argument("Rng::uniform_int: empty range");
        const std::uint64_t range = static_cast<std::uint64_t>(hi) - lo + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return lo + static_cast<int>(x % range);
    }

    bool bernoulli(double p) { return next_unit() < p; }

    /// Index drawn proportionally to the (non-negative) weights.
    std::size_t categorical(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        if (!(total > 0.0))
            throw std::invalid_argument("Rng::categorical: zero total weight");
        double u = next_unit() * total;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            u -= weights[i];
            if (u < 0.0) return i;
        }
        return weights.size() - 1;
    }

  private:
    std::mt19937_64 engine_;
};

/// Splitmix64 finalizer; mixes a master seed with a stream index so batch
/// draws (replicates, parallel samples) get independent deterministic seeds.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace mdg
