#include "chaos_target/rng.hpp"

#include <bit>

namespace chaos_target {

namespace {
constexpr std::uint64_t kRunDomain = 0x72756e2d73656564ULL;   // "run-seed"
constexpr std::uint64_t kCellDomain = 0x63656c6c2d736565ULL;  // "cell-see"
}  // namespace

std::uint64_t double_bits(double v) noexcept {
    // +0 and -0 name the same cell.
    if (v == 0.0) v = 0.0;
    return std::bit_cast<std::uint64_t>(v);
}

std::uint64_t run_seed(std::uint64_t batch_seed, std::uint64_t run_index) noexcept {
    return mix_words({kRunDomain, batch_seed, run_index});
}

std::uint64_t cell_seed(std::uint64_t sweep_seed, std::uint64_t n_steps, double mu,
                        double epsilon) noexcept {
    return mix_words({kCellDomain, sweep_seed, n_steps, double_bits(mu), double_bits(epsilon)});
}

std::uint64_t Random::below(std::uint64_t n) {
    // Largest multiple of n representable, minus one.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t r;
    do {
        r = engine_();
    } while (r > limit);
    return r % n;
}

}  // namespace chaos_target
