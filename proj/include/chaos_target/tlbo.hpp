#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chaos_target/problem.hpp"
#include "chaos_target/rng.hpp"

namespace chaos_target {

/// Candidate perturbation sequence with its cached objective value.
struct Learner {
    ControlSequence position;
    double fitness = 0.0;

    friend bool operator==(const Learner&, const Learner&) = default;
};

struct Population {
    std::vector<Learner> learners;
    std::size_t best_index = 0;

    const Learner& best() const { return learners.at(best_index); }
    std::size_t size() const noexcept { return learners.size(); }
    /// Recomputes best_index; ties go to the lowest index.
    void refresh_best();

    friend bool operator==(const Population&, const Population&) = default;
};

/// Per-learner random draws of the teaching phase: R in [0,1]^d and the
/// teaching factor T in {1,2}^d.
struct TeachingWeights {
    std::vector<double> r;
    std::vector<int> t_factor;
};

struct TlboConfig {
    std::size_t population_size = 50;
    std::size_t max_generations = 1000;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless NP >= 2 and generations >= 1.
    void validate() const;
};

struct RunRecord {
    ControlSequence best_position;
    double best_fitness = 0.0;
    /// Population best after each full generation.
    std::vector<double> best_fitness_per_generation;
    std::uint64_t evaluations_used = 0;
    /// 1-based index of the first generation whose best is below epsilon.
    std::optional<std::size_t> success_generation;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Learners drawn uniformly on [-mu, mu]^N and evaluated.
Population initialize_population(const TargetingProblem& p, const TlboConfig& cfg, Random& rng);

/// Element-wise mean of all positions.
std::vector<double> mean_learner(const Population& pop);

/// V = R .* (teacher - T .* mean) + x, before clamping.
std::vector<double> teaching_candidate(std::span<const double> x, std::span<const double> teacher,
                                       std::span<const double> mean, const TeachingWeights& w);

/// Moves `self` toward a better partner or away from a worse one:
/// self + rand .* (self - partner) when self is strictly better, else
/// self + rand .* (partner - self). Not clamped.
std::vector<double> learning_candidate(std::span<const double> self, double self_fitness,
                                       std::span<const double> partner, double partner_fitness,
                                       std::span<const double> rand);

/// One-to-one greedy selection: the candidate replaces the incumbent only on
/// strict improvement.
inline bool replaces(double candidate_fitness, double incumbent_fitness) noexcept {
    return candidate_fitness < incumbent_fitness;
}

/// Teaching phase with one-to-one selection. The teacher and the class mean
/// are taken from the population at entry. Adds NP to `evaluations`.
Population teaching_phase(Population pop, const TargetingProblem& p, Random& rng,
                          std::uint64_t* evaluations = nullptr);

/// Learning phase with greedy selection. Partners are read from the
/// population at entry. Adds NP to `evaluations`.
Population learning_phase(Population pop, const TargetingProblem& p, Random& rng,
                          std::uint64_t* evaluations = nullptr);

/// Full run over the fixed generation budget (no early stop).
RunRecord optimize(const TargetingProblem& p, const TlboConfig& cfg);

}  // namespace chaos_target
