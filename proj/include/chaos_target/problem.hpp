#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chaos_target/maps.hpp"

namespace chaos_target {

/// Perturbations u(0..N-1), applied to the first state component.
using ControlSequence = std::vector<double>;

/// Steer x0 so that the N-th controlled iterate lands within epsilon of the
/// target, with every |u(k)| <= mu.
struct TargetingProblem {
    ChaoticMapSpec map;
    State2 x0;
    State2 target;
    std::size_t horizon = 1;
    double mu = 0.01;
    double epsilon = 0.02;

    /// Throws std::invalid_argument on horizon 0, non-positive mu/epsilon or
    /// non-finite states.
    void validate() const;
};

/// Projects each element onto [-mu, mu]. NaN elements throw
/// std::invalid_argument.
ControlSequence clamp_to_bounds(ControlSequence u, double mu);

/// In-place variant used by the optimizer.
void clamp_in_place(std::span<double> u, double mu);

/// x(0..N) under x1(k+1) = f1(x(k)) + u(k), x2(k+1) = f2(x(k)).
/// Throws OverflowError when a state becomes non-finite.
std::vector<State2> controlled_trajectory(const TargetingProblem& p, std::span<const double> u);

/// ||x(N) - target||. Throws OverflowError; u must have length N.
double evaluate(const TargetingProblem& p, std::span<const double> u);

/// evaluate(), with an overflowed trajectory mapped to +infinity.
double evaluate_or_inf(const TargetingProblem& p, std::span<const double> u) noexcept;

inline bool is_success(double value, double epsilon) noexcept {
    return value < epsilon;
}

}  // namespace chaos_target
