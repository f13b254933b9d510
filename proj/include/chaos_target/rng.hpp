#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace chaos_target {

/// SplitMix64 finalizer (Steele, Lea & Flood). Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Folds words left to right: h0 = splitmix64(w0), h(k) = splitmix64(h(k-1) ^ wk).
constexpr std::uint64_t mix_words(std::initializer_list<std::uint64_t> words) noexcept {
    std::uint64_t h = 0;
    bool first = true;
    for (std::uint64_t w : words) {
        h = first ? splitmix64(w) : splitmix64(h ^ w);
        first = false;
    }
    return h;
}

std::uint64_t double_bits(double v) noexcept;

/// Seed of run `run_index` inside a batch.
std::uint64_t run_seed(std::uint64_t batch_seed, std::uint64_t run_index) noexcept;

/// Batch seed of one (N, mu, epsilon) sweep cell. Depends only on the cell
/// key, so adding cells to a sweep never changes another cell's results.
std::uint64_t cell_seed(std::uint64_t sweep_seed, std::uint64_t n_steps, double mu,
                        double epsilon) noexcept;

/// Draws on top of mt19937_64 with fixed, portable conversions (the standard
/// distributions are implementation-defined).
class Random {
public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// 1 or 2 with probability 1/2 each.
    int one_or_two() { return 1 + static_cast<int>(engine_() >> 63); }

    /// Uniform on {0, ..., n-1}, unbiased by rejection. n must be >= 1.
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

}  // namespace chaos_target
