#pragma once

#include <cstdint>
#include <random>

namespace morl {

/// SplitMix64 finaliser; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for stream `index` under `root`. Streams for different indices are
/// independent, so episode i always sees the same numbers regardless of the
/// order episodes run in.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return mix64(mix64(root) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

    /// Draws an index from a discrete distribution. The last positive-mass
    /// entry absorbs rounding slack.
    template <typename Probs>
    std::size_t categorical(const Probs& probs) {
        const double x = uniform();
        double cum = 0.0;
        std::size_t last = 0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (probs[i] <= 0.0) continue;
            cum += probs[i];
            last = i;
            if (x < cum) return i;
        }
        return last;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace morl
