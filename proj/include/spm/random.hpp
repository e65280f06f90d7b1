#pragma once

#include <cstdint>
#include <random>

namespace spm {

// splitmix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) noexcept {
    return mix_seed(mix_seed(mix_seed(base) ^ a) ^ (b + 0x632be59bd9b4e019ULL));
}

/// Seeded generator with portable draws. std::uniform_*_distribution are
/// implementation-defined, so the draws are built directly from the engine
/// output to keep results identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in (0, 1].
    double uniform_positive() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, bound), bound > 0. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace spm
