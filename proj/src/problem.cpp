#include "chaos_target/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace chaos_target {

namespace {

bool finite(const State2& s) {
    return std::isfinite(s.x1) && std::isfinite(s.x2);
}

void check_length(const TargetingProblem& p, std::span<const double> u) {
    if (u.size() != p.horizon) {
        throw std::invalid_argument("control sequence length " + std::to_string(u.size()) +
                                    " does not match horizon " + std::to_string(p.horizon));
    }
}

}  // namespace

void TargetingProblem::validate() const {
    map.validate();
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be finite and > 0");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("epsilon must be finite and > 0");
    }
    if (!finite(x0) || !finite(target)) throw std::invalid_argument("x0 and target must be finite");
}

void clamp_in_place(std::span<double> u, double mu) {
    for (double& v : u) {
        if (std::isnan(v)) throw std::invalid_argument("NaN in control sequence");
        v = std::clamp(v, -mu, mu);
    }
}

ControlSequence clamp_to_bounds(ControlSequence u, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
    clamp_in_place(u, mu);
    return u;
}

std::vector<State2> controlled_trajectory(const TargetingProblem& p, std::span<const double> u) {
    check_length(p, u);
    std::vector<State2> path;
    path.reserve(u.size() + 1);
    path.push_back(p.x0);
    State2 x = p.x0;
    for (double uk : u) {
        x = step(p.map, x);
        x.x1 = x.x1 + uk;
        if (!std::isfinite(x.x1)) throw OverflowError("perturbed state is non-finite");
        path.push_back(x);
    }
    return path;
}

double evaluate(const TargetingProblem& p, std::span<const double> u) {
    check_length(p, u);
    const double value = evaluate_or_inf(p, u);
    if (std::isinf(value)) throw OverflowError("controlled trajectory left the finite reals");
    return value;
}

double evaluate_or_inf(const TargetingProblem& p, std::span<const double> u) noexcept {
    if (u.size() != p.horizon) return std::numeric_limits<double>::infinity();
    State2 x = p.x0;
    for (double uk : u) {
        x = raw_step(p.map, x);
        x.x1 = x.x1 + uk;
    }
    const double d = distance(x, p.target);
    // NaN or Inf anywhere along the path reaches the end state.
    if (!std::isfinite(d)) return std::numeric_limits<double>::infinity();
    return d;
}

}  // namespace chaos_target
