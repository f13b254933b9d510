#pragma once

#include <cstdint>

#include "chaos_target/problem.hpp"
#include "chaos_target/tlbo.hpp"

namespace chaos_target {

/// Pure random sampling of the feasible box with `evaluations` uniform draws.
/// Reference point for the optimizer at an equal evaluation budget. The
/// returned record has an empty per-generation curve.
RunRecord random_search(const TargetingProblem& p, std::uint64_t evaluations, std::uint64_t seed);

/// Evaluation budget of one optimize() call: NP + 2*NP*generations.
constexpr std::uint64_t tlbo_evaluation_budget(const TlboConfig& cfg) noexcept {
    return cfg.population_size + 2 * cfg.population_size * cfg.max_generations;
}

}  // namespace chaos_target
